"""Cohomology of the character module of a norm-one torus.

For a finite group G and a subgroup H the character module is
``That = Z^{G/H} / Z`` (diagonal).  Since That is torsion free,
``H^2(G, That) = H^1(G, M)`` with ``M = That (x) Q/Z``; the N-torsion
``M[N]`` is realised as ``(Z/N)^{G/H}`` modulo the diagonal, with canonical
representatives whose coordinate at the coset H is zero.

G acts on functions on G/H by ``(g.f)(x) = f(g^-1 x)``.  A 1-cocycle
satisfies ``b(gh) = b(g) + g.b(h)``.

Classes of H^1(G, M) are represented by cocycles with values in M[e],
e = |G|; two such cocycles define the same class exactly when they differ by
a coboundary ``g.d - d`` with d in M[e^2].  Restriction to a cyclic
subgroup C is tested the same way (d in M[e |C|] suffices).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .permgroup import CosetSpace, NotASubgroup, Perm, PermGroup, Subgroup, cyclic_subgroup_reps
from .zmodalg import FinAbGroup, kernel_mod, solve_mod, subgroup_of_product, subquotient_data


@dataclass(frozen=True)
class MVector:
    """An element of M[N] in canonical form (coordinate 0 equal to 0)."""
    level: int
    coords: tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(x) % self.level for x in self.coords)
        if c and c[0]:
            c = tuple((x - c[0]) % self.level for x in c)
        object.__setattr__(self, "coords", c)

    def embed(self, level: int) -> "MVector":
        """Image under M[N] -> M[level] (N must divide level)."""
        if level % self.level:
            raise ValueError(f"{self.level} does not divide {level}")
        f = level // self.level
        return MVector(level, tuple(x * f for x in self.coords))


@dataclass
class Cochain1:
    """A map G -> M[N], stored as an (|G|, n) integer array of canonical vectors."""
    level: int
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.int64) % self.level
        v = (v - v[:, :1]) % self.level
        self.values = v
        if v.shape[0] and np.any(v[0]):
            raise ValueError("cochain must vanish at the identity")

    def __call__(self, g: int) -> MVector:
        return MVector(self.level, tuple(int(x) for x in self.values[g]))

    def embed(self, level: int) -> "Cochain1":
        if level % self.level:
            raise ValueError(f"{self.level} does not divide {level}")
        return Cochain1(level, self.values * (level // self.level))

    def __add__(self, other: "Cochain1") -> "Cochain1":
        if other.level != self.level:
            raise ValueError("levels differ")
        return Cochain1(self.level, self.values + other.values)

    def scale(self, k: int) -> "Cochain1":
        return Cochain1(self.level, self.values * k)

    def is_zero(self) -> bool:
        return not np.any(self.values)


class TorusModule:
    """The G-module That = Z^{G/H}/Z attached to a pair H <= G."""

    def __init__(self, G: PermGroup, H: Subgroup, reps=None):
        if H.parent is not G:
            raise NotASubgroup("H is not a subgroup of G")
        self.group = G
        self.stabilizer = H
        self.cosets = CosetSpace(G, H, reps=reps)
        self.n = len(self.cosets)
        self.e = G.order

    def __repr__(self):
        return f"TorusModule({self.group.spec}, |H|={self.stabilizer.order}, n={self.n})"

    @property
    def rank(self) -> int:
        return self.n - 1

    @cached_property
    def action(self) -> np.ndarray:
        return self.cosets.action

    @cached_property
    def inverse_action(self) -> np.ndarray:
        """inverse_action[g, y] = x with g x = y."""
        act = self.action
        out = np.empty_like(act)
        rows = np.arange(act.shape[0])[:, None]
        out[rows, act] = np.arange(act.shape[1])[None, :]
        return out

    def act(self, g: int, vec: np.ndarray, level: int) -> np.ndarray:
        """g.vec for a canonical vector, renormalised to canonical form."""
        w = np.asarray(vec)[..., self.inverse_action[g]]
        return (w - w[..., :1]) % level

    def canonical_action_matrix(self, g: int) -> list[list[int]]:
        """Integer matrix of (delta -> g.delta - delta) on canonical coordinates 1..n-1."""
        n = self.n
        ginv = self.inverse_action[g]
        mat = [[0] * (n - 1) for _ in range(n - 1)]
        for y in range(1, n):
            src = int(ginv[y])
            base = int(ginv[0])
            if src:
                mat[y - 1][src - 1] += 1
            if base:
                mat[y - 1][base - 1] -= 1
            mat[y - 1][y - 1] -= 1
        return mat

    def fixed_cosets(self, g: int) -> list[int]:
        return [x for x in range(self.n) if int(self.action[g, x]) == x]

    def generator_coords(self, cochain: Cochain1) -> list[int]:
        """Values on the generators of G, flattened (cocycles are determined by these)."""
        out = []
        for s in self.group.generator_indices:
            out.extend(int(x) for x in cochain.values[s, 1:])
        return out

    # cached heavy results
    @cached_property
    def _h2(self) -> "H2Data":
        return _compute_h2(self)


def build_torus_module(G: PermGroup, H: Subgroup) -> TorusModule:
    return TorusModule(G, H)


def m_torsion_order(T: TorusModule, N: int) -> int:
    return N ** (T.n - 1)


# -- cocycles ----------------------------------------------------------------

def _cocycle_parametrisation(T: TorusModule, N: int):
    """Express every b(g) linearly in the unknown values b(s) on generators s.

    Walking the pairs (s, h) with s a generator and h in G, the identity
    b(sh) = b(s) + s.b(h) either defines b(sh) or yields a linear equation.
    Returns ``(B, equations)`` with B of shape (|G|, n, K).
    """
    G = T.group
    n = T.n
    gens = G.generator_indices
    K = len(gens) * (n - 1)
    B: dict[int, np.ndarray] = {0: np.zeros((n, K), dtype=np.int64)}
    eqs: set[tuple[int, ...]] = set()

    def unit_block(i: int) -> np.ndarray:
        E = np.zeros((n, K), dtype=np.int64)
        for y in range(1, n):
            E[y, i * (n - 1) + y - 1] = 1
        return E

    def add_eq(diff: np.ndarray):
        diff = diff % N
        for row in diff[1:]:
            if row.any():
                eqs.add(tuple(int(x) for x in row))

    units = [unit_block(i) for i in range(len(gens))]
    order = [0]
    for i, s in enumerate(gens):
        if s in B:
            add_eq(units[i] - B[s])
        else:
            B[s] = units[i]
            order.append(s)
    mul = G.mul
    pos = 0
    while pos < len(order):
        h = order[pos]
        pos += 1
        for i, s in enumerate(gens):
            target = int(mul[s, h])
            expr = (units[i] + T.act(s, B[h].T, N).T) % N
            if target in B:
                add_eq(expr - B[target])
            else:
                B[target] = expr
                order.append(target)
    if len(B) != G.order:
        raise RuntimeError("generators do not reach every element")
    stacked = np.stack([B[g] for g in range(G.order)])
    return stacked, sorted(eqs)


def verify_cocycle(T: TorusModule, cochain: Cochain1) -> bool:
    """Check b(gh) = b(g) + g.b(h) for every pair (g, h)."""
    v = cochain.values
    N = cochain.level
    mul = T.group.mul
    inv_act = T.inverse_action                   # (|G|, n)
    acted = v[:, inv_act]                        # acted[h, g, y] = v[h, g^-1 y]
    acted = np.transpose(acted, (1, 0, 2))       # [g, h, y]
    acted = (acted - acted[:, :, :1]) % N
    lhs = v[mul]                                 # [g, h, y] = b(gh)
    rhs = (v[:, None, :] + acted) % N
    return bool(np.array_equal(lhs % N, rhs))


def cocycles1(T: TorusModule, N: int) -> list[Cochain1]:
    """Generators of Z^1(G, M[N])."""
    if T.n == 1 or N == 1:
        return []
    B, eqs = _cocycle_parametrisation(T, N)
    K = B.shape[2]
    if K == 0:
        return []
    sols = kernel_mod(eqs, N, cols=K) if eqs else [[1 if i == j else 0 for i in range(K)] for j in range(K)]
    out = []
    for u in sols:
        vals = np.einsum("gyk,k->gy", B, np.array(u, dtype=np.int64)) % N
        c = Cochain1(N, vals)
        if not verify_cocycle(T, c):
            raise RuntimeError("cocycle system produced a non-cocycle")
        out.append(c)
    return out


def coboundary(T: TorusModule, delta, N: int) -> Cochain1:
    """The cochain g -> g.delta - delta."""
    d = np.asarray(delta, dtype=np.int64) % N
    d = (d - d[0]) % N
    acted = d[T.inverse_action]                  # [g, y]
    acted = (acted - acted[:, :1]) % N
    return Cochain1(N, (acted - d[None, :]) % N)


def coboundaries1(T: TorusModule, N: int) -> list[Cochain1]:
    """The coboundaries of the standard basis of M[N]."""
    out = []
    for x in range(1, T.n):
        delta = np.zeros(T.n, dtype=np.int64)
        delta[x] = 1
        out.append(coboundary(T, delta, N))
    return out


# -- H^2(G, That) ---------------------------------------------------------------

@dataclass
class CohClass:
    """A class of H^1(G, M) = H^2(G, That), represented by a cocycle into M[e]."""
    torus: TorusModule
    representative: Cochain1
    coords: tuple[int, ...] | None = None

    @property
    def stabilized_level(self) -> int:
        return self.torus.e ** 2

    def __add__(self, other: "CohClass") -> "CohClass":
        return CohClass(self.torus, self.representative + other.representative)

    def scale(self, k: int) -> "CohClass":
        return CohClass(self.torus, self.representative.scale(k))

    def to_json(self) -> dict:
        rep = self.representative
        return {"level": rep.level,
                "values": [[g] + [int(x) for x in rep.values[g]] for g in range(rep.values.shape[0])]}


@dataclass
class H2Data:
    group: FinAbGroup
    classes: list[CohClass]
    cocycles: list[Cochain1] = field(default_factory=list)


def _combine(T: TorusModule, cochains, weights, level: int) -> Cochain1:
    vals = np.zeros((T.group.order, T.n), dtype=np.int64)
    for w, c in zip(weights, cochains):
        vals = (vals + int(w) % level * c.values) % level
    return Cochain1(level, vals)


def _compute_h2(T: TorusModule) -> H2Data:
    e = T.e
    if T.n == 1:
        return H2Data(FinAbGroup(()), [], [])
    E2 = e * e
    Z = cocycles1(T, e)
    S = [[x * e for x in T.generator_coords(z)] for z in Z]
    D = [T.generator_coords(b) for b in coboundaries1(T, E2)]
    K = len(T.group.generator_indices) * (T.n - 1)
    pres = subquotient_data(E2, S, D, dim=K)
    classes = []
    for t, w in enumerate(pres.generator_weights()):
        rep = _combine(T, Z, w, e)
        coords = tuple(1 if i == t else 0 for i in range(pres.group.rank))
        classes.append(CohClass(T, rep, coords))
    return H2Data(FinAbGroup(pres.group.invariant_factors), classes, Z)


def h2_of_that(T: TorusModule):
    """``(H^2(G, That), generator classes)``, one class per invariant factor."""
    d = T._h2
    return d.group, list(d.classes)


def _embedded(c: CohClass) -> Cochain1:
    return c.representative.embed(c.torus.e ** 2)


def is_zero_class(c: CohClass) -> bool:
    """True iff the class vanishes in H^1(G, M)."""
    T = c.torus
    if T.n == 1:
        return True
    E2 = T.e ** 2
    rep = _embedded(c)
    rows, rhs = [], []
    for s in T.group.generator_indices:
        rows.extend(T.canonical_action_matrix(s))
        rhs.extend(int(x) for x in rep.values[s, 1:])
    if not rows:
        return True
    return solve_mod(rows, rhs, E2, cols=T.n - 1) is not None


def class_coordinates(c: CohClass) -> tuple[int, ...]:
    """Coordinates of a class with respect to the generators from h2_of_that."""
    T = c.torus
    group, gens = h2_of_that(T)
    if group.is_trivial():
        return ()
    E2 = T.e ** 2
    gen_cols = [T.generator_coords(_embedded(g)) for g in gens]
    bnd_cols = [T.generator_coords(b) for b in coboundaries1(T, E2)]
    cols = gen_cols + bnd_cols
    A = [[col[i] for col in cols] for i in range(len(cols[0]))]
    target = T.generator_coords(_embedded(c))
    sol = solve_mod(A, target, E2, cols=len(cols))
    if sol is None:
        raise ValueError("not a cocycle class of this torus")
    return tuple(x % d for x, d in zip(sol, group.invariant_factors))


def restriction_trivial(c: CohClass, g) -> bool:
    """Does the class restrict to zero on the cyclic subgroup generated by g?"""
    T = c.torus
    if isinstance(g, Perm):
        g = T.group.index[g]
    if T.n == 1 or g == 0:
        return True
    E2 = T.e ** 2
    rep = _embedded(c)
    A = T.canonical_action_matrix(g)
    b = [int(x) for x in rep.values[g, 1:]]
    return solve_mod(A, b, E2, cols=T.n - 1) is not None


def cyclic_reps_indices(T: TorusModule) -> list[int]:
    G = T.group
    return [G.index[p] for p in cyclic_subgroup_reps(G)]


def in_sha_cyclic(c: CohClass) -> bool:
    return all(restriction_trivial(c, g) for g in cyclic_reps_indices(c.torus))


def sha_membership_pointwise(c: CohClass, T: TorusModule | None = None) -> bool:
    """Is b(g) constant on the cosets fixed by g, for every g?

    The canonical representative is used as its own lift to (Q/Z)^{G/H}.
    """
    T = T or c.torus
    vals = c.representative.values
    for g in range(T.group.order):
        fx = T.fixed_cosets(g)
        if len(fx) > 1:
            row = vals[g, fx]
            if np.any(row != row[0]):
                return False
    return True


def _subgroup_classes(T: TorusModule, xs: list[list[int]]):
    """The subgroup of H^2 spanned by coordinate vectors xs, with generator classes."""
    group, gens = h2_of_that(T)
    factors = group.invariant_factors
    xs = [[int(x) % d for x, d in zip(v, factors)] for v in xs]
    xs = [v for v in xs if any(v)]
    pres = subgroup_of_product(factors, xs)
    classes = []
    for w in pres.generator_weights():
        coord = [sum(wj * xs[j][i] for j, wj in enumerate(w)) % factors[i] for i in range(len(factors))]
        rep = _combine(T, [g.representative for g in gens], coord, T.e)
        classes.append(CohClass(T, rep, tuple(coord)))
    return FinAbGroup(pres.group.invariant_factors), classes


def sha2_cyc(T: TorusModule):
    """Classes restricting to zero on every cyclic subgroup (cyclic-restriction route)."""
    group, gens = h2_of_that(T)
    if group.is_trivial():
        return FinAbGroup(()), []
    E2 = T.e ** 2
    k = len(gens)
    m = T.n - 1
    reps = [g for g in cyclic_reps_indices(T) if g != 0]
    embedded = [_embedded(c) for c in gens]
    ncols = k + m * len(reps)
    rows = []
    for r_i, g in enumerate(reps):
        A = T.canonical_action_matrix(g)
        for y in range(m):
            row = [0] * ncols
            for t in range(k):
                row[t] = int(embedded[t].values[g, y + 1])
            for x in range(m):
                row[k + r_i * m + x] = -A[y][x]
            rows.append(row)
    if rows:
        kern = kernel_mod(rows, E2, cols=ncols)
    else:
        kern = [[1 if i == j else 0 for i in range(ncols)] for j in range(k)]
    xs = [v[:k] for v in kern]
    return _subgroup_classes(T, xs)


def sha2_cyc_pointwise(T: TorusModule):
    """The same subgroup computed from the fixed-coset condition instead."""
    group, gens = h2_of_that(T)
    if group.is_trivial():
        return FinAbGroup(()), []
    e = T.e
    k = len(gens)
    rows = set()
    for g in range(T.group.order):
        fx = T.fixed_cosets(g)
        for x in fx[1:]:
            row = tuple(int(c.representative.values[g, x] - c.representative.values[g, fx[0]]) % e
                        for c in gens)
            if any(row):
                rows.add(row)
    if rows:
        kern = kernel_mod(sorted(rows), e, cols=k)
    else:
        kern = [[1 if i == j else 0 for i in range(k)] for j in range(k)]
    return _subgroup_classes(T, kern)


def all_classes(T: TorusModule) -> list[CohClass]:
    """Every element of H^2(G, That) (small groups only)."""
    group, gens = h2_of_that(T)
    out = []
    for coord in group.elements():
        rep = _combine(T, [g.representative for g in gens], coord, T.e)
        out.append(CohClass(T, rep, tuple(coord)))
    if not out:
        out.append(CohClass(T, Cochain1(T.e, np.zeros((T.group.order, T.n), dtype=np.int64)), ()))
    return out


def classes_to_json(classes) -> str:
    return json.dumps([c.to_json() for c in classes])
