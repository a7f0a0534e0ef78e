"""Central extensions 1 -> Z/e -> Gt -> G -> 1 with a splitting datum over H.

Elements of Gt are pairs (u, g) with product (u, g)(v, h) = (u + v + alpha(g, h), gh)
for a normalized 2-cocycle alpha with trivial action.  The datum r is a
homomorphism from the preimage of H to Z/(e M) sending the kernel element u to
u M, so that r restricted to the kernel is u -> u/e in Q/Z.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .permgroup import (
    BadParameter,
    Perm,
    PermGroup,
    Subgroup,
    dihedral_group,
    subgroup_from_perms,
)
from .toruscoh import CohClass, TorusModule


class NonDiagonalCoboundary(RuntimeError):
    pass


class OddN(BadParameter):
    pass


class InvalidTriple(ValueError):
    pass


@dataclass
class ExtensionTriple:
    base: PermGroup
    stabilizer: Subgroup
    kernel_order: int
    alpha: np.ndarray                      # (|G|, |G|) values mod e
    level: int                             # the declared M; r takes values mod e*M
    r_values: dict = field(default_factory=dict)   # (u, h) -> int mod e*M

    def __post_init__(self):
        self.alpha = np.asarray(self.alpha, dtype=np.int64) % self.kernel_order
        self.validate()

    @property
    def order(self) -> int:
        return self.kernel_order * self.base.order

    def mul(self, a, b):
        (u, g), (v, h) = a, b
        return ((u + v + int(self.alpha[g, h])) % self.kernel_order, int(self.base.mul[g, h]))

    def inv(self, a):
        u, g = a
        gi = int(self.base.inv[g])
        return ((-u - int(self.alpha[g, gi])) % self.kernel_order, gi)

    def conj(self, x, a):
        return self.mul(self.mul(x, a), self.inv(x))

    def elements(self):
        return [(u, g) for g in range(self.base.order) for u in range(self.kernel_order)]

    def preimage_of_stabilizer(self):
        return [(u, h) for h in self.stabilizer.elements for u in range(self.kernel_order)]

    def r(self, a) -> int:
        return self.r_values[a]

    def validate(self):
        e = self.kernel_order
        G = self.base
        a = self.alpha
        if np.any(a[0, :]) or np.any(a[:, 0]):
            raise InvalidTriple("alpha is not normalized")
        mul = G.mul
        # a(h,k) - a(gh,k) + a(g,hk) - a(g,h) = 0, one g at a time
        for g in range(G.order):
            d = (a - a[mul[g]] + a[g][mul] - a[g][:, None]) % e
            if np.any(d):
                raise InvalidTriple("alpha fails the 2-cocycle identity")
        EM = e * self.level
        pre = self.preimage_of_stabilizer()
        if set(self.r_values) != set(pre):
            raise InvalidTriple("r must be defined exactly on the preimage of H")
        for u in range(e):
            if (self.r_values[(u, 0)] - u * self.level) % EM:
                raise InvalidTriple("r does not restrict to the standard embedding on the kernel")
        for x in pre:
            for y in pre:
                if (self.r_values[x] + self.r_values[y] - self.r_values[self.mul(x, y)]) % EM:
                    raise InvalidTriple("r is not a homomorphism")

    def to_json(self) -> dict:
        nz = [[g, h, int(self.alpha[g, h])] for g in range(self.base.order)
              for h in range(self.base.order) if self.alpha[g, h]]
        return {"e": self.kernel_order, "level": self.level, "alpha": nz,
                "r": [[u, h, v] for (u, h), v in sorted(self.r_values.items())]}


def is_unramified_triple(t: ExtensionTriple) -> bool:
    return unramified_witness(t) is None


def unramified_witness(t: ExtensionTriple):
    """A pair of conjugate elements over H with different r values, or None."""
    H = t.stabilizer
    EM = t.kernel_order * t.level
    for x in t.elements():
        for a in t.preimage_of_stabilizer():
            b = t.conj(x, a)
            if b[1] in H and (t.r(a) - t.r(b)) % EM:
                return a, b, x
    return None


def triple_from_class(c: CohClass, T: TorusModule | None = None) -> ExtensionTriple:
    """Extension and splitting read off a cocycle representative of c."""
    T = T or c.torus
    G = T.group
    rep = c.representative
    e = rep.level
    beta = rep.values                              # canonical lift, coordinate 0 is zero
    ginv = T.inverse_action
    mul = G.mul
    n = G.order
    acted = beta[:, ginv]                          # acted[h, g, y] = beta(h)(g^-1 y)
    alpha = np.zeros((n, n), dtype=np.int64)
    for g in range(n):
        d = (acted[:, g, :] - beta[mul[g]] + beta[g][None, :]) % e   # rows indexed by h
        if np.any(d != d[:, :1]):
            raise NonDiagonalCoboundary("coboundary of the lift is not diagonal")
        alpha[g] = d[:, 0]
    M = T.stabilizer.order
    r = {}
    for h in T.stabilizer.elements:
        for u in range(e):
            r[(u, h)] = ((u + int(beta[h, 0])) * M) % (e * M)
    return ExtensionTriple(G, T.stabilizer, e, alpha, M, r)


# -- the dihedral example ------------------------------------------------------------

@dataclass
class DihedralTilde:
    """The group ((1/2)Z/Z x D_{2n}) / <(1/2, tau^n)>, modelled on D_{2n} itself.

    Every class has a unique representative with first coordinate 0, so the
    group is D_{2n} (order 4n) with kernel {1, tau^n} and projection to D_n
    given by reducing points mod n.
    """
    n: int
    big: PermGroup          # D_{2n} on 2n points
    small: PermGroup        # D_n on n points

    @property
    def order(self) -> int:
        return self.big.order

    @property
    def tau(self) -> int:
        return self.big.index[Perm(tuple((i + 1) % (2 * self.n) for i in range(2 * self.n)))]

    @property
    def sigma(self) -> int:
        return self.big.index[Perm(tuple((-i) % (2 * self.n) for i in range(2 * self.n)))]

    def project(self, x: int) -> int:
        p = self.big.elements[x]
        return self.small.index[Perm(tuple(p(i) % self.n for i in range(self.n)))]

    def kernel(self) -> list[int]:
        return [x for x in range(self.order) if self.project(x) == 0]

    def lift(self, g: int) -> int:
        """Section on D_n: i -> e i + k lifts to the same formula mod 2n with 0 <= k < n."""
        p = self.small.elements[g]
        k = p(0)
        eps = (p(1) - k) % self.n
        eps = 1 if eps == 1 else -1
        N2 = 2 * self.n
        return self.big.index[Perm(tuple((eps * i + k) % N2 for i in range(N2)))]

    def has_section(self) -> bool:
        """Search all lifts of the generators tau, sigma of D_n for a homomorphic section."""
        big = self.big
        t_small = self.small.index[Perm(tuple((i + 1) % self.n for i in range(self.n)))]
        s_small = self.small.index[Perm(tuple((-i) % self.n for i in range(self.n)))]
        fibres = {}
        for x in range(self.order):
            fibres.setdefault(self.project(x), []).append(x)
        for a, b in itertools.product(fibres[t_small], fibres[s_small]):
            if (big.power(a, self.n) == 0 and big.power(b, 2) == 0
                    and big.mul[big.mul[b, a], b] == big.inv[a]):
                return True
        return False

    def extension(self) -> tuple[np.ndarray, Subgroup]:
        """alpha for the section ``lift`` with values in Z/2, and H = <sigma> in D_n."""
        G = self.small
        big = self.big
        tn = big.power(self.tau, self.n)
        alpha = np.zeros((G.order, G.order), dtype=np.int64)
        for g in range(G.order):
            for h in range(G.order):
                prod = int(big.mul[self.lift(g), self.lift(h)])
                corr = int(big.mul[prod, big.inv[self.lift(int(G.mul[g, h]))]])
                if corr == 0:
                    alpha[g, h] = 0
                elif corr == tn:
                    alpha[g, h] = 1
                else:
                    raise RuntimeError("section defect outside the kernel")
        s_small = self.small.index[Perm(tuple((-i) % self.n for i in range(self.n)))]
        H = subgroup_from_perms(G, [G.elements[s_small]])
        return alpha, H

    def to_pair(self, x: int) -> tuple[int, int]:
        """(u, g) coordinates of an element of the model relative to the section."""
        g = self.project(x)
        corr = int(self.big.mul[x, self.big.inv[self.lift(g)]])
        return (0 if corr == 0 else 1, g)


def dihedral_tilde(n: int) -> DihedralTilde:
    if n % 2 or n < 4:
        raise OddN(f"the construction needs an even n >= 4, got {n}")
    return DihedralTilde(n, dihedral_group(2 * n), dihedral_group(n))


def enumerate_splittings(dt: DihedralTilde) -> list[ExtensionTriple]:
    """All triples over H = <sigma>: homomorphisms on the preimage with kernel -> 1/2."""
    alpha, H = dt.extension()
    e, M = 2, H.order
    out = []
    s = H.elements[1]
    for rs in range(e * M):
        r = {}
        for u in range(e):
            r[(u, 0)] = u * M
            r[(u, s)] = (u * M + rs) % (e * M)
        try:
            out.append(ExtensionTriple(dt.small, H, e, alpha, M, r))
        except InvalidTriple:
            continue
    return out


def conjugating_witness(dt: DihedralTilde):
    """(sigma, sigma tau^n, tau^{-n/2}) in the model, with the conjugation verified."""
    big = dt.big
    s = dt.sigma
    stn = int(big.mul[s, big.power(dt.tau, dt.n)])
    x = big.power(dt.tau, -(dt.n // 2))
    if big.conj(x, s) != stn:
        raise RuntimeError("expected tau^{-n/2} sigma tau^{n/2} = sigma tau^n")
    return s, stn, x


def splitting_fails_on_pair(dt: DihedralTilde, t: ExtensionTriple) -> bool:
    """Do r(sigma) and r(sigma tau^n) differ for this splitting?"""
    s, stn, _ = conjugating_witness(dt)
    EM = t.kernel_order * t.level
    return (t.r(dt.to_pair(s)) - t.r(dt.to_pair(stn))) % EM != 0
