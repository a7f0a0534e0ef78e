"""Finite permutation groups small enough to enumerate.

Elements are stored in lexicographic order of their image arrays, so the
identity always has index 0.  Products follow function composition:
``(g * h)(x) = g(h(x))``.  Left cosets ``gH`` of a point stabilizer then
correspond to the points ``g(0)``.
"""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product as iproduct
from typing import Callable, Iterable, Sequence

import numpy as np

from .zmodalg import FinAbGroup, abelian_group_from_action

DEFAULT_CAP = 10_000


class PermError(ValueError):
    pass


class MalformedCycle(PermError):
    pass


class PointOutOfRange(PermError):
    pass


class RepeatedPoint(PermError):
    pass


class DegreeMismatch(PermError):
    pass


class OrderCapExceeded(PermError):
    pass


class UnsupportedFamily(PermError):
    pass


class BadParameter(PermError):
    pass


class NotASubgroup(PermError):
    pass


class NotPrime(PermError):
    pass


@dataclass(frozen=True, order=True)
class Perm:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise BadParameter(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls(tuple(range(degree)))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Perm") -> "Perm":
        if other.degree != self.degree:
            raise DegreeMismatch(f"{self.degree} != {other.degree}")
        im = self.images
        return Perm(tuple(im[j] for j in other.images))

    def inverse(self) -> "Perm":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        return "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles())

    def __repr__(self):
        return f"Perm({self.cycle_string() or '()'}, n={self.degree})"


def compose(p: Perm, q: Perm) -> Perm:
    return p * q


def inverse(p: Perm) -> Perm:
    return p.inverse()


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_perm(text: str, degree: int) -> Perm:
    """Parse cycle notation such as ``"(0 1 2)(3 4)"`` over points ``0..degree-1``.

    Entries inside a cycle may be separated by spaces or commas.  The empty
    string and ``"()"`` give the identity.
    """
    text = text.strip()
    images = list(range(degree))
    if text in ("", "()"):
        return Perm(tuple(images))
    pos = 0
    used: set[int] = set()
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _CYCLE_RE.match(text, pos)
        if m is None:
            raise MalformedCycle(f"cannot parse {text!r} at offset {pos}")
        pos = m.end()
        body = m.group(1).replace(",", " ").split()
        try:
            pts = [int(tok) for tok in body]
        except ValueError as exc:
            raise MalformedCycle(f"non-integer point in {m.group(0)!r}") from exc
        for p in pts:
            if not 0 <= p < degree:
                raise PointOutOfRange(f"point {p} not in 0..{degree - 1}")
            if p in used:
                raise RepeatedPoint(f"point {p} appears twice")
            used.add(p)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[a] = b
    return Perm(tuple(images))


class PermGroup:
    """A permutation group together with its full element list.

    ``elements[0]`` is the identity; ``mul[i, j]`` is the index of
    ``elements[i] * elements[j]``.
    """

    def __init__(self, degree: int, generators: Sequence[Perm], elements: Sequence[Perm],
                 spec: str | None = None):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = tuple(elements)
        self.index = {p: i for i, p in enumerate(self.elements)}
        self._spec = spec

    def __repr__(self):
        return f"PermGroup({self.spec}, order={self.order})"

    def __len__(self):
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def spec(self) -> str:
        if self._spec is not None:
            return self._spec
        gens = ",".join(g.cycle_string() or "()" for g in self.generators)
        return f"gens:n={self.degree};{gens}"

    @cached_property
    def mul(self) -> np.ndarray:
        n = self.order
        table = np.empty((n, n), dtype=np.int64)
        idx = self.index
        els = self.elements
        for i, p in enumerate(els):
            im = p.images
            for j, q in enumerate(els):
                table[i, j] = idx[Perm(tuple(im[k] for k in q.images))]
        return table

    @cached_property
    def inv(self) -> np.ndarray:
        return np.array([self.index[p.inverse()] for p in self.elements], dtype=np.int64)

    @cached_property
    def generator_indices(self) -> tuple[int, ...]:
        return tuple(self.index[g] for g in self.generators)

    @cached_property
    def element_orders(self) -> np.ndarray:
        mul = self.mul
        out = np.ones(self.order, dtype=np.int64)
        for i in range(1, self.order):
            k, x = 1, i
            while x != 0:
                x = mul[x, i]
                k += 1
            out[i] = k
        return out

    @property
    def exponent(self) -> int:
        return math.lcm(*(int(o) for o in self.element_orders))

    def conj(self, g: int, x: int) -> int:
        """Index of g x g^-1."""
        return int(self.mul[self.mul[g, x], self.inv[g]])

    def is_abelian(self) -> bool:
        mul = self.mul
        return bool(np.array_equal(mul, mul.T))

    def is_transitive(self) -> bool:
        if self.degree == 0:
            return True
        orbit = {0}
        frontier = [0]
        while frontier:
            p = frontier.pop()
            for g in self.generators:
                q = g(p)
                if q not in orbit:
                    orbit.add(q)
                    frontier.append(q)
        return len(orbit) == self.degree

    def power(self, g: int, k: int) -> int:
        x = 0
        for _ in range(k % int(self.element_orders[g])):
            x = int(self.mul[x, g])
        return x

    def relabel(self, perm: Perm) -> "PermGroup":
        """The conjugate group perm * G * perm^-1 (points renamed by perm)."""
        pinv = perm.inverse()
        gens = [perm * g * pinv for g in self.generators]
        return close_group(gens, degree=self.degree)


def close_group(generators: Iterable[Perm], cap: int = DEFAULT_CAP, degree: int | None = None,
                spec: str | None = None) -> PermGroup:
    """Breadth-first closure of a generating set."""
    gens = list(generators)
    if degree is None:
        if not gens:
            raise BadParameter("degree required for an empty generating set")
        degree = gens[0].degree
    for g in gens:
        if g.degree != degree:
            raise DegreeMismatch(f"generator {g} has degree {g.degree}, expected {degree}")
    if cap < 1:
        raise BadParameter("cap must be at least 1")
    ident = Perm.identity(degree)
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = g * x
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise OrderCapExceeded(f"group order exceeds cap {cap}")
                queue.append(y)
    return PermGroup(degree, gens, sorted(seen), spec=spec)


# -- named families ----------------------------------------------------------

def _cycle(points: Sequence[int], degree: int) -> Perm:
    images = list(range(degree))
    for a, b in zip(points, list(points[1:]) + list(points[:1])):
        images[a] = b
    return Perm(tuple(images))


def symmetric_group(n: int) -> PermGroup:
    if n < 1:
        raise BadParameter("S_n needs n >= 1")
    gens = [_cycle(range(n), n), _cycle([0, 1], n)] if n >= 2 else []
    return close_group(gens, degree=n, spec=f"S{n}")


def alternating_group(n: int) -> PermGroup:
    # (0 1 2) with (0 1 ... n-1) for odd n, (1 2 ... n-1) for even n
    if n < 1:
        raise BadParameter("A_n needs n >= 1")
    if n < 3:
        gens = []
    elif n % 2:
        gens = [_cycle([0, 1, 2], n), _cycle(range(n), n)]
    else:
        gens = [_cycle([0, 1, 2], n), _cycle(range(1, n), n)]
    return close_group(gens, degree=n, spec=f"A{n}")


def cyclic_group(n: int) -> PermGroup:
    if n < 1:
        raise BadParameter("C_n needs n >= 1")
    gens = [_cycle(range(n), n)] if n >= 2 else []
    return close_group(gens, degree=n, spec=f"C{n}")


def dihedral_group(n: int) -> PermGroup:
    """D_n of order 2n on n points: tau = (0 1 ... n-1), sigma = reflection fixing 0."""
    if n < 3:
        raise BadParameter("D_n needs n >= 3")
    tau = _cycle(range(n), n)
    sigma = Perm(tuple((-i) % n for i in range(n)))
    return close_group([tau, sigma], degree=n, spec=f"D{n}")


def regular_abelian(factors: Sequence[int]) -> PermGroup:
    """Regular representation of Z/f1 x ... x Z/fk; points are tuples in lex order."""
    factors = [int(f) for f in factors]
    if any(f < 1 for f in factors):
        raise BadParameter(f"bad factors {factors}")
    points = list(iproduct(*[range(f) for f in factors]))
    where = {p: i for i, p in enumerate(points)}
    degree = len(points)
    gens = []
    for k, f in enumerate(factors):
        if f == 1:
            continue
        images = []
        for p in points:
            q = list(p)
            q[k] = (q[k] + 1) % f
            images.append(where[tuple(q)])
        gens.append(Perm(tuple(images)))
    spec = "regular:[" + ",".join(map(str, factors)) + "]"
    return close_group(gens, degree=degree, spec=spec)


def direct_product(a: PermGroup, b: PermGroup) -> PermGroup:
    n, m = a.degree, b.degree
    gens = []
    for g in a.generators:
        gens.append(Perm(g.images + tuple(range(n, n + m))))
    for g in b.generators:
        gens.append(Perm(tuple(range(n)) + tuple(n + i for i in g.images)))
    return close_group(gens, degree=n + m)


def named_group(family: str, *params) -> PermGroup:
    family = family.strip()
    try:
        if family == "S":
            return symmetric_group(int(params[0]))
        if family == "A":
            return alternating_group(int(params[0]))
        if family == "C":
            return cyclic_group(int(params[0]))
        if family == "D":
            return dihedral_group(int(params[0]))
        if family == "regular":
            return regular_abelian(params[0])
        if family == "product":
            return direct_product(params[0], params[1])
    except (IndexError, TypeError) as exc:
        raise BadParameter(f"bad parameters for {family}: {params}") from exc
    raise UnsupportedFamily(family)


_NAMED_RE = re.compile(r"^([SACD])(\d+)$")


def parse_group_spec(text: str, cap: int = DEFAULT_CAP) -> PermGroup:
    """Parse ``S<n> | A<n> | C<n> | D<n> | regular:[f,...] | gens:n=<deg>;<cycles>,...``."""
    text = text.strip()
    m = _NAMED_RE.match(text)
    if m:
        fam, n = m.group(1), int(m.group(2))
        expected = {"S": math.factorial(n), "A": max(1, math.factorial(n) // 2), "C": n, "D": 2 * n}[fam]
        if expected > cap:
            raise OrderCapExceeded(f"{text} has order {expected} > cap {cap}")
        return named_group(fam, n)
    if text.startswith("regular:"):
        body = text[len("regular:"):].strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise BadParameter(f"malformed regular spec {text!r}")
        inner = body[1:-1].strip()
        try:
            factors = [int(tok) for tok in inner.split(",")] if inner else []
        except ValueError as exc:
            raise BadParameter(f"malformed regular spec {text!r}") from exc
        return regular_abelian(factors)
    if text.startswith("gens:"):
        body = text[len("gens:"):]
        head, _, rest = body.partition(";")
        head = head.strip()
        if not head.startswith("n="):
            raise BadParameter(f"missing degree in {text!r}")
        try:
            degree = int(head[2:])
        except ValueError as exc:
            raise BadParameter(f"bad degree in {text!r}") from exc
        gens = [parse_perm(tok, degree) for tok in _split_generators(rest)]
        return close_group(gens, cap=cap, degree=degree)
    raise UnsupportedFamily(f"unrecognised group spec {text!r}")


def _split_generators(text: str) -> list[str]:
    """Split ``"(0 1),(2 3)(4 5)"`` on commas outside parentheses."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if "".join(cur).strip():
        out.append("".join(cur))
    return [tok.strip() for tok in out if tok.strip()]


# -- subgroups and cosets ----------------------------------------------------

class Subgroup:
    """A subgroup of an enumerated PermGroup, stored as sorted element indices."""

    def __init__(self, parent: PermGroup, elements: Iterable[int], check: bool = True):
        self.parent = parent
        self.elements = tuple(sorted(set(int(i) for i in elements)))
        self.element_set = frozenset(self.elements)
        if check:
            self._check()

    def _check(self):
        if not self.elements or self.elements[0] != 0:
            raise NotASubgroup("subgroup must contain the identity")
        mul, inv = self.parent.mul, self.parent.inv
        s = self.element_set
        for a in self.elements:
            if int(inv[a]) not in s:
                raise NotASubgroup("not closed under inverses")
            for b in self.elements:
                if int(mul[a, b]) not in s:
                    raise NotASubgroup("not closed under products")

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    def __contains__(self, g: int) -> bool:
        return g in self.element_set

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and other.parent is self.parent
                and other.element_set == self.element_set)

    def __hash__(self):
        return hash(self.element_set)

    def __repr__(self):
        return f"Subgroup(order={self.order}, index={self.index})"

    def perms(self) -> list[Perm]:
        return [self.parent.elements[i] for i in self.elements]

    def as_group(self) -> PermGroup:
        """The subgroup as a standalone PermGroup (all elements used as generators)."""
        gens = small_generating_set(self.parent, self.elements)
        return close_group([self.parent.elements[i] for i in gens], degree=self.parent.degree)

    def is_normal(self) -> bool:
        G = self.parent
        return all(G.conj(g, h) in self.element_set
                   for g in G.generator_indices for h in self.elements)

    def conjugate(self, g: int) -> "Subgroup":
        G = self.parent
        return Subgroup(G, (G.conj(g, h) for h in self.elements), check=False)


def generated_subgroup(G: PermGroup, gens: Iterable[int]) -> Subgroup:
    gens = [int(g) for g in gens]
    seen = {0}
    queue = deque([0])
    mul = G.mul
    while queue:
        x = queue.popleft()
        for g in gens:
            y = int(mul[g, x])
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return Subgroup(G, seen, check=False)


def small_generating_set(G: PermGroup, elements: Sequence[int]) -> list[int]:
    """Greedy generating set for the subgroup with the given elements."""
    target = set(elements)
    gens: list[int] = []
    current = {0}
    for x in sorted(target):
        if x not in current:
            gens.append(x)
            current = set(generated_subgroup(G, gens).elements)
            if current == target:
                break
    return gens


def point_stabilizer(G: PermGroup, point: int = 0) -> Subgroup:
    if not 0 <= point < G.degree:
        raise PointOutOfRange(f"point {point} out of range")
    return Subgroup(G, (i for i, p in enumerate(G.elements) if p(point) == point), check=False)


def trivial_subgroup(G: PermGroup) -> Subgroup:
    return Subgroup(G, [0], check=False)


def whole_group(G: PermGroup) -> Subgroup:
    return Subgroup(G, range(G.order), check=False)


def subgroup_from_perms(G: PermGroup, perms: Iterable[Perm]) -> Subgroup:
    idx = []
    for p in perms:
        if p not in G.index:
            raise NotASubgroup(f"{p} is not an element of {G.spec}")
        idx.append(G.index[p])
    return generated_subgroup(G, idx)


def parse_subgroup_spec(G: PermGroup, text: str) -> Subgroup:
    """``<point>`` (stabilizer), ``trivial``, ``whole``, or comma-separated cycle generators."""
    text = text.strip()
    if text == "trivial":
        return trivial_subgroup(G)
    if text == "whole":
        return whole_group(G)
    if re.fullmatch(r"\d+", text):
        return point_stabilizer(G, int(text))
    if text.startswith("gens:"):
        text = text[len("gens:"):]
    return subgroup_from_perms(G, [parse_perm(tok, G.degree) for tok in _split_generators(text)])


class CosetSpace:
    """Left cosets gH with representatives; coset 0 is H with representative the identity.

    Representatives are the least element index in each coset (lexicographically
    least permutation); cosets are numbered in order of their representatives.
    """

    def __init__(self, parent: PermGroup, subgroup: Subgroup, reps: Sequence[int] | None = None):
        if subgroup.parent is not parent:
            raise NotASubgroup("subgroup belongs to a different group")
        self.parent = parent
        self.subgroup = subgroup
        mul = parent.mul
        H = subgroup.elements
        index_of = np.full(parent.order, -1, dtype=np.int64)
        cosets: list[tuple[int, ...]] = []
        for g in range(parent.order):
            if index_of[g] >= 0:
                continue
            members = tuple(sorted(int(mul[g, h]) for h in H))
            index_of[list(members)] = len(cosets)
            cosets.append(members)
        self.index_of = index_of
        self.cosets = cosets
        if reps is None:
            reps = [c[0] for c in cosets]
        else:
            reps = list(reps)
            if len(reps) != len(cosets) or sorted(int(index_of[r]) for r in reps) != list(range(len(cosets))):
                raise BadParameter("representatives must pick one element per coset")
            reps = sorted(reps, key=lambda r: int(index_of[r]))
            if reps[0] != 0:
                raise BadParameter("the representative of H must be the identity")
        self.reps = tuple(int(r) for r in reps)

    def __len__(self):
        return len(self.reps)

    @cached_property
    def action(self) -> np.ndarray:
        """action[g, c] = index of the coset g * (coset c)."""
        mul = self.parent.mul
        reps = np.array(self.reps, dtype=np.int64)
        return self.index_of[mul[:, reps]]

    def rep_of(self, g: int) -> int:
        return self.reps[int(self.index_of[g])]


# -- conjugacy ---------------------------------------------------------------

def conjugacy_classes(G: PermGroup) -> list[tuple[int, ...]]:
    """Classes as sorted index tuples, ordered by their least member."""
    seen = np.zeros(G.order, dtype=bool)
    classes = []
    gens = G.generator_indices
    for x in range(G.order):
        if seen[x]:
            continue
        orbit = {x}
        frontier = [x]
        while frontier:
            y = frontier.pop()
            for g in gens:
                z = G.conj(g, y)
                if z not in orbit:
                    orbit.add(z)
                    frontier.append(z)
        seen[list(orbit)] = True
        classes.append(tuple(sorted(orbit)))
    return classes


def conjugacy_class_reps(G: PermGroup) -> list[tuple[Perm, int]]:
    return [(G.elements[c[0]], len(c)) for c in conjugacy_classes(G)]


def cyclic_subgroups(G: PermGroup) -> list[frozenset[int]]:
    found = {}
    for g in range(G.order):
        s = frozenset(generated_subgroup(G, [g]).elements)
        found.setdefault(s, g)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def cyclic_subgroup_reps(G: PermGroup) -> list[Perm]:
    """One generator per conjugacy class of cyclic subgroups.

    Classes are ordered by subgroup order, then by the sorted element tuple of
    the least conjugate; each class is represented by its least generator.
    """
    gens = G.generator_indices
    assigned: set[frozenset[int]] = set()
    reps: list[tuple[int, tuple[int, ...], int]] = []
    for s in cyclic_subgroups(G):
        if s in assigned:
            continue
        orbit = {s}
        frontier = [s]
        while frontier:
            t = frontier.pop()
            for g in gens:
                u = frozenset(G.conj(g, x) for x in t)
                if u not in orbit:
                    orbit.add(u)
                    frontier.append(u)
        assigned |= orbit
        least = min(orbit, key=lambda t: sorted(t))
        orders = G.element_orders
        gen = min(x for x in least if int(orders[x]) == len(least))
        reps.append((len(least), tuple(sorted(least)), gen))
    reps.sort()
    return [G.elements[g] for _, _, g in reps]


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, math.isqrt(p) + 1))


def has_cyclic_p_sylows(G: PermGroup, p: int) -> bool:
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    pp = 1
    m = G.order
    while m % p == 0:
        pp *= p
        m //= p
    return bool(np.any(G.element_orders == pp))


# -- abelianization and transfer --------------------------------------------

def derived_subgroup(G: PermGroup) -> Subgroup:
    mul, inv = G.mul, G.inv
    comms = set()
    for a in range(G.order):
        for b in range(G.order):
            comms.add(int(mul[mul[a, b], mul[inv[a], inv[b]]]))
    return generated_subgroup(G, comms)


def quotient_by_normal(G: PermGroup, N: Subgroup, elements: Sequence[int] | None = None,
                       generators: Sequence[int] | None = None):
    """Abelian quotient E/N for a subgroup E (given by elements/generators) normalising N.

    Returns ``(FinAbGroup, coords)`` where ``coords`` maps each element index
    of E to its invariant-factor coordinates.  E/N must be abelian.
    """
    mul = G.mul
    if elements is None:
        elements = range(G.order)
    if generators is None:
        generators = small_generating_set(G, elements)
    nset = N.elements

    def label(x: int) -> int:
        return min(int(mul[x, n]) for n in nset)

    labels = {}
    for x in elements:
        labels[x] = label(x)
    reps = {}
    for x, lab in labels.items():
        reps.setdefault(lab, x)
    gen_labels = list(generators)

    def act(lab: int, i: int) -> int:
        return labels[int(mul[gen_labels[i], reps[lab]])]

    group, coord_of_label = abelian_group_from_action(len(gen_labels), act, labels[0])
    coords = {x: coord_of_label[lab] for x, lab in labels.items()}
    return group, coords


@lru_cache(maxsize=128)
def abelianization(G: PermGroup):
    """Return ``(G^ab, projection)``; ``projection[g]`` is a coordinate tuple."""
    D = derived_subgroup(G)
    ab, coords = quotient_by_normal(G, D, generators=G.generator_indices or None)
    proj = [coords[g] for g in range(G.order)]
    return ab, proj


@lru_cache(maxsize=512)
def subgroup_abelianization(H: Subgroup):
    """Abelianization of H, keyed by parent element indices."""
    G = H.parent
    mul, inv = G.mul, G.inv
    comms = set()
    for a in H.elements:
        for b in H.elements:
            comms.add(int(mul[mul[a, b], mul[inv[a], inv[b]]]))
    D = generated_subgroup(G, comms)
    return quotient_by_normal(G, D, elements=H.elements)


@dataclass(frozen=True)
class AbHom:
    """Homomorphism between finite abelian groups in invariant-factor coordinates.

    ``matrix[i][j]`` is the i-th target coordinate of the image of the j-th
    source generator.
    """
    source: FinAbGroup
    target: FinAbGroup
    matrix: tuple[tuple[int, ...], ...]

    def __call__(self, x: Sequence[int]) -> tuple[int, ...]:
        t = self.target.invariant_factors
        return tuple(sum(row[j] * x[j] for j in range(len(x))) % t[i]
                     for i, row in enumerate(self.matrix))


def transfer(G: PermGroup, H: Subgroup, reps: Sequence[int] | None = None) -> AbHom:
    """Transfer G^ab -> H^ab: g maps to the product of s(g x H)^-1 g s(xH) over cosets."""
    if H.parent is not G:
        raise NotASubgroup("H is not a subgroup of G")
    cs = CosetSpace(G, H, reps=reps)
    mul, inv = G.mul, G.inv
    gab, gproj = abelianization(G)
    hab, hcoords = subgroup_abelianization(H)
    hf = hab.invariant_factors

    def ver(g: int) -> tuple[int, ...]:
        acc = [0] * len(hf)
        for c, x in enumerate(cs.reps):
            y = cs.reps[int(cs.action[g, c])]
            h = int(mul[mul[inv[y], g], x])
            for i, v in enumerate(hcoords[h]):
                acc[i] += v
        return tuple(a % f for a, f in zip(acc, hf))

    gf = gab.invariant_factors
    cols = []
    for j in range(len(gf)):
        target = tuple(1 if i == j else 0 for i in range(len(gf)))
        g = next(g for g in range(G.order) if tuple(gproj[g]) == target)
        cols.append(ver(g))
    matrix = tuple(tuple(cols[j][i] for j in range(len(gf))) for i in range(len(hf)))
    return AbHom(gab, hab, matrix)


def commutator(G: PermGroup, a: int, b: int) -> int:
    mul, inv = G.mul, G.inv
    return int(mul[mul[a, b], mul[inv[a], inv[b]]])


def all_subgroups_of_order(G: PermGroup, order: int, pred: Callable[[frozenset], bool] | None = None):
    """Brute-force enumeration of subgroups of a given order (small groups only)."""
    found = set()
    for s in cyclic_subgroups(G):
        if order % len(s):
            continue
        frontier = [s]
        local = {s}
        while frontier:
            t = frontier.pop()
            if len(t) == order:
                if pred is None or pred(t):
                    found.add(t)
                continue
            for g in range(G.order):
                if g in t:
                    continue
                u = frozenset(generated_subgroup(G, list(t) + [g]).elements)
                if order % len(u) == 0 and u not in local:
                    local.add(u)
                    frontier.append(u)
    return sorted(found, key=sorted)
