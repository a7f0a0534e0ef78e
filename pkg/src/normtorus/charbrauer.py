"""Characters of subgroups: constancy, unramifiedness, the Shapiro map to H^2,
and the character groups attached to a tower Gamma >= Lambda >= N.

A character of H <= G is a homomorphism H -> Q/Z.  It is stored at level N
(its exact order) as integers mod N, one per element of H.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .permgroup import (
    PermGroup,
    Subgroup,
    abelianization,
    commutator,
    generated_subgroup,
    quotient_by_normal,
    small_generating_set,
    subgroup_abelianization,
    subgroup_from_perms,
    transfer,
    whole_group,
)
from .toruscoh import CohClass, Cochain1, TorusModule, verify_cocycle
from .zmodalg import FinAbGroup, qz, solve_mod, subgroup_of_product


class MismatchedData(ValueError):
    pass


class NotAHomomorphism(ValueError):
    pass


class InvalidTower(ValueError):
    pass


class EmbeddingMismatch(ValueError):
    pass


@dataclass(frozen=True)
class SubgroupCharacter:
    """chi: H -> Q/Z; ``values[i]`` is N * chi(H.elements[i])."""
    group: PermGroup
    subgroup: Subgroup
    order: int
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.subgroup.order:
            raise MismatchedData("one value per subgroup element is required")
        N = self.order
        vals = tuple(int(v) % N for v in self.values)
        g = math.gcd(N, *vals)
        object.__setattr__(self, "order", N // g)
        object.__setattr__(self, "values", tuple(v // g for v in vals))
        self._check()

    def _check(self):
        mul = self.group.mul
        pos = self.positions
        N = self.order
        gens = small_generating_set(self.group, self.subgroup.elements)
        for a in gens:
            for b in self.subgroup.elements:
                if (self.values[pos[a]] + self.values[pos[b]] - self.values[pos[int(mul[a, b])]]) % N:
                    raise NotAHomomorphism("values do not define a homomorphism")

    @cached_property
    def positions(self) -> dict[int, int]:
        return {h: i for i, h in enumerate(self.subgroup.elements)}

    def __call__(self, h: int) -> Fraction:
        return Fraction(self.values[self.positions[h]], self.order)

    def value_at_level(self, h: int, level: int) -> int:
        if level % self.order:
            raise ValueError(f"level {level} is not a multiple of {self.order}")
        return self.values[self.positions[h]] * (level // self.order)

    def __add__(self, other: "SubgroupCharacter") -> "SubgroupCharacter":
        if other.subgroup != self.subgroup:
            raise MismatchedData("characters live on different subgroups")
        L = math.lcm(self.order, other.order)
        vals = [self.value_at_level(h, L) + other.value_at_level(h, L) for h in self.subgroup.elements]
        return SubgroupCharacter(self.group, self.subgroup, L, tuple(vals))

    def scale(self, k: int) -> "SubgroupCharacter":
        return SubgroupCharacter(self.group, self.subgroup, self.order, tuple(k * v for v in self.values))

    def is_trivial(self) -> bool:
        return self.order == 1

    def restrict(self, K: Subgroup) -> "SubgroupCharacter":
        if not K.element_set <= self.subgroup.element_set:
            raise MismatchedData("not a subgroup of the domain")
        return SubgroupCharacter(self.group, K, self.order, tuple(self.values[self.positions[k]] for k in K.elements))

    def key(self) -> tuple:
        return (self.subgroup.elements, self.order, self.values)

    def on_generators(self) -> list[tuple[str, Fraction]]:
        gens = small_generating_set(self.group, self.subgroup.elements)
        return [(self.group.elements[g].cycle_string() or "()", self(g)) for g in gens]


def character_from_generators(G: PermGroup, H: Subgroup, assignment: dict) -> SubgroupCharacter:
    """Extend values given on generators of H (element index or Perm -> rational) to H."""
    vals: dict[int, Fraction] = {}
    gens = []
    for g, v in assignment.items():
        gi = g if isinstance(g, int) else G.index.get(g)
        if gi is None or gi not in H:
            raise MismatchedData(f"{g} is not an element of the subgroup")
        gens.append((gi, qz(v)))
    if generated_subgroup(G, [g for g, _ in gens]) != H:
        raise MismatchedData("the given elements do not generate the subgroup")
    vals[0] = Fraction(0)
    frontier = [0]
    mul = G.mul
    while frontier:
        x = frontier.pop()
        for g, v in gens:
            y = int(mul[g, x])
            w = qz(v + vals[x])
            if y in vals:
                if vals[y] != w:
                    raise NotAHomomorphism("relations among the generators are violated")
            else:
                vals[y] = w
                frontier.append(y)
    N = math.lcm(*(v.denominator for v in vals.values()))
    return SubgroupCharacter(G, H, N, tuple(int(vals[h] * N) for h in H.elements))


def all_characters(G: PermGroup, H: Subgroup) -> list[SubgroupCharacter]:
    """Every character of H, via the abelianization of H."""
    ab, coords = subgroup_abelianization(H)
    f = ab.invariant_factors
    L = ab.exponent
    out = []
    for a in itertools.product(*(range(d) for d in f)):
        vals = tuple(sum(ai * c * (L // d) for ai, c, d in zip(a, coords[h], f)) for h in H.elements)
        out.append(SubgroupCharacter(G, H, L, vals))
    return out


# -- criteria ------------------------------------------------------------------

def extend_to_group(chi: SubgroupCharacter) -> SubgroupCharacter | None:
    """A character of G restricting to chi, or None."""
    G = chi.group
    ab, proj = abelianization(G)
    f = ab.invariant_factors
    L = math.lcm(chi.order, *f) if f else chi.order
    gens = small_generating_set(G, chi.subgroup.elements)
    if not f:
        return SubgroupCharacter(G, whole_group(G), 1, (0,) * G.order) if chi.is_trivial() else None
    rows = [[proj[h][i] * (L // d) for i, d in enumerate(f)] for h in gens]
    rhs = [chi.value_at_level(h, L) for h in gens]
    if not rows:
        a = [0] * len(f)
    else:
        a = solve_mod(rows, rhs, L, cols=len(f))
        if a is None:
            return None
    vals = tuple(sum(ai * y * (L // d) for ai, y, d in zip(a, proj[g], f)) for g in range(G.order))
    return SubgroupCharacter(G, whole_group(G), L, vals)


def is_constant_level(chi: SubgroupCharacter) -> bool:
    """Is chi the restriction of a character of the ambient group?"""
    return extend_to_group(chi) is not None


def is_unramified(chi: SubgroupCharacter) -> bool:
    """Does chi agree on every pair of subgroup elements conjugate in the ambient group?"""
    G = chi.group
    H = chi.subgroup
    for h in H.elements:
        v = chi.values[chi.positions[h]]
        for g in range(G.order):
            c = G.conj(g, h)
            if c in H and chi.values[chi.positions[c]] != v:
                return False
    return True


def beta_map(chi: SubgroupCharacter, T: TorusModule) -> CohClass:
    """The class of b(g)(x) = chi(s(x)^-1 g s(g^-1 x)) in H^1(G, M)."""
    if chi.group is not T.group or chi.subgroup != T.stabilizer:
        raise MismatchedData("character and torus are built on different data")
    G = T.group
    e = T.e
    if T.n == 1:
        return CohClass(T, Cochain1(e, np.zeros((G.order, 1), dtype=np.int64)))
    if e % chi.order:
        raise MismatchedData("character order does not divide |G|")
    mul, inv = G.mul, G.inv
    reps = T.cosets.reps
    ginv_act = T.inverse_action
    vals = np.zeros((G.order, T.n), dtype=np.int64)
    for g in range(G.order):
        for x in range(T.n):
            h = int(mul[mul[inv[reps[x]], g], reps[int(ginv_act[g, x])]])
            vals[g, x] = chi.value_at_level(h, e)
    cochain = Cochain1(e, vals)
    if not verify_cocycle(T, cochain):
        raise RuntimeError("Shapiro cochain failed the cocycle identity")
    return CohClass(T, cochain)


# -- towers ----------------------------------------------------------------------

@dataclass(frozen=True)
class CharSubgroup:
    """A subgroup of a finite abelian group given by its full element set."""
    ambient: FinAbGroup
    elements: frozenset

    @property
    def group(self) -> FinAbGroup:
        gens = [list(x) for x in self.elements if any(x)]
        f = self.ambient.invariant_factors
        if not f:
            return FinAbGroup(())
        return FinAbGroup(subgroup_of_product(f, gens).group.invariant_factors)

    @property
    def order(self) -> int:
        return len(self.elements)


def _closure(ambient: FinAbGroup, gens) -> CharSubgroup:
    f = ambient.invariant_factors
    zero = tuple(0 for _ in f)
    seen = {zero}
    frontier = [zero]
    gens = [tuple(int(x) % d for x, d in zip(g, f)) for g in gens]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = tuple((a + b) % d for a, b, d in zip(x, g, f))
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return CharSubgroup(ambient, frozenset(seen))


class TowerSpec:
    """Gamma >= Lambda >= N with N normal in Lambda and Lambda/N abelian."""

    def __init__(self, gamma: PermGroup, lam: Subgroup, nu: Subgroup):
        if lam.parent is not gamma or nu.parent is not gamma:
            raise InvalidTower("subgroups must live in gamma")
        if not nu.element_set <= lam.element_set:
            raise InvalidTower("N is not contained in Lambda")
        mul, inv = gamma.mul, gamma.inv
        lgens = small_generating_set(gamma, lam.elements)
        for s in lgens:
            for n in nu.elements:
                if int(mul[mul[s, n], inv[s]]) not in nu:
                    raise InvalidTower("N is not normal in Lambda")
            for t in lgens:
                if commutator(gamma, s, t) not in nu:
                    raise InvalidTower("Lambda/N is not abelian")
        self.gamma = gamma
        self.lam = lam
        self.nu = nu
        self.quotient, self.coords = quotient_by_normal(gamma, nu, elements=lam.elements)

    def __repr__(self):
        return f"TowerSpec({self.gamma.spec}, |Lambda|={self.lam.order}, |N|={self.nu.order})"

    def character(self, a) -> SubgroupCharacter:
        """The character y -> sum a_i y_i / d_i of Lambda/N, pulled back to Lambda."""
        f = self.quotient.invariant_factors
        L = self.quotient.exponent
        vals = tuple(sum(int(ai) * c * (L // d) for ai, c, d in zip(a, self.coords[x], f))
                     for x in self.lam.elements)
        return SubgroupCharacter(self.gamma, self.lam, L, vals)

    def characters(self):
        f = self.quotient.invariant_factors
        return list(itertools.product(*(range(d) for d in f)))

    def pairing(self, a, y) -> Fraction:
        f = self.quotient.invariant_factors
        return qz(sum(Fraction(int(ai) * int(yi), d) for ai, yi, d in zip(a, y, f)))

    def to_json(self) -> dict:
        def gens(S):
            return [self.gamma.elements[g].cycle_string() or "()"
                    for g in small_generating_set(self.gamma, S.elements)]
        return {"gamma": self.gamma.spec, "lambda": gens(self.lam), "nu": gens(self.nu)}


def tower_from_perms(gamma: PermGroup, lam_perms, nu_perms) -> TowerSpec:
    return TowerSpec(gamma, subgroup_from_perms(gamma, lam_perms), subgroup_from_perms(gamma, nu_perms))


def tower_C(t: TowerSpec) -> CharSubgroup:
    return CharSubgroup(t.quotient, frozenset(t.characters()))


def tower_C_const(t: TowerSpec) -> CharSubgroup:
    keep = [a for a in t.characters() if is_constant_level(t.character(a))]
    return CharSubgroup(t.quotient, frozenset(keep))


def tower_C_nr(t: TowerSpec) -> CharSubgroup:
    keep = [a for a in t.characters() if is_unramified(t.character(a))]
    return CharSubgroup(t.quotient, frozenset(keep))


def tower_D(t: TowerSpec) -> CharSubgroup:
    """Subgroup of Lambda/N generated by the commutators [s, u] with s, u s u^-1 in Lambda."""
    G = t.gamma
    gens = set()
    for s in t.lam.elements:
        for u in range(G.order):
            if G.conj(u, s) in t.lam:
                c = commutator(G, s, u)
                if c not in t.lam:
                    raise RuntimeError("commutator escaped Lambda")
                gens.add(t.coords[c])
    return _closure(t.quotient, gens)


def orthogonal_complement(t: TowerSpec, S: CharSubgroup) -> CharSubgroup:
    keep = [a for a in t.characters() if all(t.pairing(a, y) == 0 for y in S.elements)]
    return CharSubgroup(t.quotient, frozenset(keep))


def duality_holds(t: TowerSpec) -> bool:
    return tower_C_nr(t).elements == orthogonal_complement(t, tower_D(t)).elements


# -- corestriction and the image comparison ----------------------------------------

def corestrict_character(chi: SubgroupCharacter) -> SubgroupCharacter:
    """chi o Ver: a character of the ambient group from one of the subgroup."""
    G = chi.group
    E = chi.subgroup
    ver = transfer(G, E)
    _, gproj = abelianization(G)
    _, hcoords = subgroup_abelianization(E)
    by_coords = {}
    for h in E.elements:
        by_coords.setdefault(tuple(hcoords[h]), h)
    L = chi.order
    vals = tuple(chi.value_at_level(by_coords[ver(gproj[g])], L) for g in range(G.order))
    return SubgroupCharacter(G, whole_group(G), L, vals)


def _embed(t: TowerSpec, ambient: PermGroup) -> dict[int, int]:
    if t.gamma.degree != ambient.degree:
        raise EmbeddingMismatch("degrees differ")
    out = {}
    for i, p in enumerate(t.gamma.elements):
        j = ambient.index.get(p)
        if j is None:
            raise EmbeddingMismatch(f"{p} is not in the common group")
        out[i] = j
    return out


def _span(chars: list[SubgroupCharacter], G: PermGroup) -> frozenset:
    """Subgroup of Hom(G, Q/Z) generated by the given characters, as value keys."""
    zero = SubgroupCharacter(G, whole_group(G), 1, (0,) * G.order)
    seen = {zero.key(): zero}
    frontier = [zero]
    while frontier:
        x = frontier.pop()
        for c in chars:
            y = x + c
            if y.key() not in seen:
                seen[y.key()] = y
                frontier.append(y)
    return frozenset(seen)


def corestriction_images(towers: list[TowerSpec], ambient: PermGroup):
    """Images of the characters killing Lambda_m (resp. N_m) under the sum of corestrictions."""
    from_L, from_K = [], []
    for t in towers:
        emb = _embed(t, ambient)
        E = Subgroup(ambient, emb.values(), check=False)
        lam = {emb[x] for x in t.lam.elements}
        nu = {emb[x] for x in t.nu.elements}
        for chi in all_characters(ambient, E):
            cores = None
            if all(chi(x) == 0 for x in nu):
                cores = corestrict_character(chi)
                from_K.append(cores)
            if all(chi(x) == 0 for x in lam):
                from_L.append(cores or corestrict_character(chi))
    return _span(from_L, ambient), _span(from_K, ambient)


def corestriction_images_agree(towers: list[TowerSpec], ambient: PermGroup) -> bool:
    image_L, image_K = corestriction_images(towers, ambient)
    return image_L == image_K
