"""Exact linear algebra over Z and Z/N, and finite abelian groups.

Integer matrices are plain lists of lists of Python ints (numpy arrays are
accepted as input).  Everything is exact; nothing here touches floating
point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Sequence

import numpy as np
from sympy import factorint

IntMatrix = list  # list[list[int]]


class IncompatibleFamily(ValueError):
    pass


@dataclass(frozen=True)
class FinAbGroup:
    """Z/d1 + ... + Z/dk with d1 | d2 | ... | dk, every di >= 2.

    ``generator_coords`` optionally records, for each cyclic factor, a
    vector realising its generator in some ambient module.
    """
    invariant_factors: tuple[int, ...] = ()
    generator_coords: tuple[tuple[int, ...], ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        f = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", f)
        for d in f:
            if d < 2:
                raise ValueError(f"invariant factors must be >= 2, got {f}")
        for a, b in zip(f, f[1:]):
            if b % a:
                raise ValueError(f"not a divisibility chain: {f}")

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def elements(self):
        """All coordinate tuples, in lexicographic order."""
        from itertools import product
        return product(*[range(d) for d in self.invariant_factors])

    def __str__(self):
        if not self.invariant_factors:
            return "trivial"
        return " x ".join(f"Z/{d}" for d in self.invariant_factors)


def invariant_factors_from_diagonal(diag: Sequence[int]) -> tuple[int, ...]:
    """Normalise any list of cyclic orders (0 = infinite is rejected) to invariant factors."""
    primes: dict[int, list[int]] = {}
    for d in diag:
        d = abs(int(d))
        if d == 0:
            raise ValueError("infinite cyclic factor")
        for p, k in factorint(d).items():
            primes.setdefault(p, []).append(p ** k)
    length = max((len(v) for v in primes.values()), default=0)
    out = [1] * length
    for p, powers in primes.items():
        powers.sort()
        for i, q in enumerate(reversed(powers)):
            out[length - 1 - i] *= q
    return tuple(d for d in out if d > 1)


# -- Smith normal form over Z --------------------------------------------------

@dataclass
class SmithForm:
    diagonal: list[int]
    U: IntMatrix
    V: IntMatrix
    Uinv: IntMatrix | None = None
    Vinv: IntMatrix | None = None

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def _identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _as_int_rows(A) -> IntMatrix:
    return [[int(x) for x in row] for row in A]


def smith(A, cols: int | None = None, inverses: bool = False, track_u: bool = True) -> SmithForm:
    """Smith normal form U*A*V = diag(d1, d2, ...) with d1 | d2 | ... and d >= 0.

    Pivots are chosen with the smallest nonzero absolute value.  With
    ``inverses=True`` the inverses of U and V are tracked as well; with
    ``track_u=False`` only V (and its inverse) are kept, which is much
    cheaper for tall matrices.
    """
    M = _as_int_rows(A)
    r = len(M)
    c = len(M[0]) if r else (cols or 0)
    U = _identity(r) if track_u else None
    V = _identity(c)
    Ui = _identity(r) if inverses and track_u else None
    Vi = _identity(c) if inverses else None

    def swap_rows(i, j):
        if i == j:
            return
        M[i], M[j] = M[j], M[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]
        if Ui is not None:
            for row in Ui:
                row[i], row[j] = row[j], row[i]

    def add_row(i, j, q):  # row_i += q * row_j
        if not q:
            return
        Mi, Mj = M[i], M[j]
        for k in range(c):
            if Mj[k]:
                Mi[k] += q * Mj[k]
        if U is not None:
            Ui_, Uj = U[i], U[j]
            for k in range(r):
                if Uj[k]:
                    Ui_[k] += q * Uj[k]
        if Ui is not None:
            for row in Ui:
                if row[i]:
                    row[j] -= q * row[i]

    def neg_row(i):
        M[i] = [-x for x in M[i]]
        if U is not None:
            U[i] = [-x for x in U[i]]
        if Ui is not None:
            for row in Ui:
                row[i] = -row[i]

    def swap_cols(i, j):
        if i == j:
            return
        for row in M:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        if Vi is not None:
            Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_col(i, j, q):  # col_i += q * col_j
        if not q:
            return
        for row in M:
            if row[j]:
                row[i] += q * row[j]
        for row in V:
            if row[j]:
                row[i] += q * row[j]
        if Vi is not None:
            Vj_, Vi_ = Vi[j], Vi[i]
            for k in range(c):
                if Vi_[k]:
                    Vj_[k] -= q * Vi_[k]

    diag: list[int] = []
    for t in range(min(r, c)):
        best = None
        for i in range(t, r):
            row = M[i]
            for j in range(t, c):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            # clear column t
            while True:
                nz = [i for i in range(t + 1, r) if M[i][t]]
                if not nz:
                    break
                piv = M[t][t]
                for i in nz:
                    add_row(i, t, -(M[i][t] // piv))
                rest = [i for i in range(t + 1, r) if M[i][t]]
                if rest:
                    swap_rows(t, min(rest, key=lambda i: abs(M[i][t])))
            # clear row t
            while True:
                nz = [j for j in range(t + 1, c) if M[t][j]]
                if not nz:
                    break
                piv = M[t][t]
                for j in nz:
                    add_col(j, t, -(M[t][j] // piv))
                rest = [j for j in range(t + 1, c) if M[t][j]]
                if rest:
                    swap_cols(t, min(rest, key=lambda j: abs(M[t][j])))
            if any(M[i][t] for i in range(t + 1, r)):
                continue
            # divisibility: pull in a row whose entries are not multiples of the pivot
            piv = M[t][t]
            bad = next((i for i in range(t + 1, r)
                        if any(M[i][j] % piv for j in range(t + 1, c))), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if M[t][t] < 0:
            neg_row(t)
        diag.append(M[t][t])
    diag.extend([0] * (min(r, c) - len(diag)))
    return SmithForm(diag, U, V, Ui, Vi)


def smith_normal_form(A, cols: int | None = None):
    """Return ``(diagonal, U, V)`` with U*A*V diagonal and unimodular U, V."""
    s = smith(A, cols=cols)
    return s.diagonal, s.U, s.V


def matmul(A, B) -> IntMatrix:
    Bt = list(zip(*B)) if B else []
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def integer_kernel(A, cols: int | None = None) -> IntMatrix:
    """A basis (as rows) of {x in Z^c : A x = 0}."""
    s = smith(A, cols=cols, track_u=False)
    c = len(s.V)
    rank = s.rank
    return [[s.V[i][j] for i in range(c)] for j in range(rank, c)]


# -- linear algebra mod N (CRT split into prime powers) -----------------------

def _valuations(a: np.ndarray, p: int, k: int) -> np.ndarray:
    val = np.where(a == 0, k, 0)
    tmp = a.copy()
    for _ in range(k):
        mask = (tmp != 0) & (tmp % p == 0)
        if not mask.any():
            break
        val = val + mask
        tmp = np.where(mask, tmp // p, tmp)
    return val


def _dtype_for(q: int):
    return np.int64 if q < (1 << 31) else object


def _snf_prime_power(A: np.ndarray, p: int, k: int, rhs: np.ndarray | None):
    """Diagonalise A over Z/p^k.

    Returns ``(vals, V, rhs')`` where pivot t equals p**vals[t] (vals[t] = k
    for a zero pivot), ``V`` is the column transform, and ``rhs'`` is the
    right-hand side after the same row operations.
    """
    q = p ** k
    dt = _dtype_for(q)
    M = np.array(A, dtype=dt) % q
    r, c = M.shape
    V = np.eye(c, dtype=dt) if dt is np.int64 else np.array(_identity(c), dtype=object)
    B = None if rhs is None else np.array(rhs, dtype=dt).reshape(r, -1) % q
    vals = []
    for t in range(min(r, c)):
        sub = M[t:, t:]
        if not np.any(sub):
            break
        v = _valuations(sub, p, k)
        i, j = np.unravel_index(int(np.argmin(v)), v.shape)
        i += t
        j += t
        vt = int(v[i - t, j - t])
        if i != t:
            M[[t, i]] = M[[i, t]]
            if B is not None:
                B[[t, i]] = B[[i, t]]
        if j != t:
            M[:, [t, j]] = M[:, [j, t]]
            V[:, [t, j]] = V[:, [j, t]]
        unit = int(M[t, t]) // p ** vt
        uinv = pow(unit, -1, q)
        M[t] = (M[t] * uinv) % q
        if B is not None:
            B[t] = (B[t] * uinv) % q
        piv = p ** vt
        col = M[:, t].copy()
        col[t] = 0
        factors = col // piv
        if np.any(factors):
            M = (M - np.outer(factors, M[t])) % q
            if B is not None:
                B = (B - np.outer(factors, B[t])) % q
        row = M[t].copy()
        row[t] = 0
        factors = row // piv
        if np.any(factors):
            M = (M - np.outer(M[:, t], factors)) % q
            V = (V - np.outer(V[:, t], factors)) % q
        vals.append(vt)
    vals.extend([k] * (c - len(vals)))
    return vals, V, B


def _prime_powers(N: int):
    return [(p, e) for p, e in sorted(factorint(N).items())]


def _crt_idempotent(N: int, q: int) -> int:
    """The integer that is 1 mod q and 0 mod N/q."""
    m = N // q
    return (m * pow(m, -1, q)) % N if q > 1 else 0


def kernel_mod(A, N: int, cols: int | None = None) -> list[list[int]]:
    """Generators of {x : A x = 0 mod N} as a Z/N-module."""
    A = np.array(A, dtype=object)
    if A.ndim != 2:
        A = A.reshape(0, cols or 0)
    c = A.shape[1] if A.size or cols is None else cols
    if N == 1 or c == 0:
        return []
    gens: list[list[int]] = []
    for p, k in _prime_powers(N):
        q = p ** k
        idem = _crt_idempotent(N, q) if q != N else 1
        vals, V, _ = _snf_prime_power(A.reshape(-1, c) % q, p, k, None)
        for t, vt in enumerate(vals):
            if vt == 0:
                continue
            mult = p ** (k - vt) if vt < k else 1
            vec = [int(x) * mult % q for x in V[:, t]]
            if any(vec):
                gens.append([x * idem % N for x in vec])
    return gens


def solve_mod(A, b, N: int, cols: int | None = None) -> list[int] | None:
    """One x with A x = b (mod N), or None when the congruence has no solution."""
    A = np.array(A, dtype=object)
    b = [int(x) for x in b]
    r = len(b)
    if A.ndim != 2:
        A = A.reshape(r, cols or 0)
    c = A.shape[1]
    if N == 1:
        return [0] * c
    parts = []
    for p, k in _prime_powers(N):
        q = p ** k
        vals, V, B = _snf_prime_power(A % q, p, k, np.array(b, dtype=object).reshape(r, 1) % q)
        y = [0] * c
        rhs = [int(x) for x in B[:, 0]] if r else []
        for t in range(r):
            vt = vals[t] if t < c else k
            ct = rhs[t] % q
            if vt >= k:
                if ct:
                    return None
                continue
            piv = p ** vt
            if ct % piv:
                return None
            if t < c:
                y[t] = ct // piv
        x = [sum(int(V[i, j]) * y[j] for j in range(c)) % q for i in range(c)]
        parts.append((q, x))
    out = [0] * c
    for q, x in parts:
        idem = _crt_idempotent(N, q) if q != N else 1
        for i in range(c):
            out[i] = (out[i] + x[i] * idem) % N
    return out


def rank_mod_p(A, p: int = 2147483647) -> int:
    """Rank over F_p by vectorised elimination (p < 2**31)."""
    M = np.array(A, dtype=np.int64) % p
    if M.size == 0:
        return 0
    r, c = M.shape
    rank = 0
    for j in range(c):
        if rank == r:
            break
        nz = np.nonzero(M[rank:, j])[0]
        if nz.size == 0:
            continue
        i = rank + int(nz[0])
        if i != rank:
            M[[rank, i]] = M[[i, rank]]
        inv = pow(int(M[rank, j]), -1, p)
        M[rank] = (M[rank] * inv) % p
        below = np.nonzero(M[rank + 1:, j])[0] + rank + 1
        if below.size:
            f = M[below, j].reshape(-1, 1)
            M[below] = (M[below] - (f * M[rank]) % p) % p
        rank += 1
    return rank


# -- finite abelian groups from presentations ----------------------------------

@dataclass
class AbelianPresentation:
    """Z^a / relations, decomposed: element x has coordinates (x V)_t mod d_t."""
    group: FinAbGroup
    V: IntMatrix          # a x a
    Vinv: IntMatrix       # a x a
    positions: list[int]  # diagonal positions carrying the invariant factors

    def coords(self, x: Sequence[int]) -> tuple[int, ...]:
        out = []
        for t, d in zip(self.positions, self.group.invariant_factors):
            out.append(sum(int(xi) * self.V[i][t] for i, xi in enumerate(x)) % d)
        return tuple(out)

    def generator_weights(self) -> list[list[int]]:
        """Weights (in the original generators) of each invariant-factor generator."""
        return [list(self.Vinv[t]) for t in self.positions]


def present_abelian(num_gens: int, relations: Sequence[Sequence[int]]) -> AbelianPresentation:
    """Decompose Z^num_gens / span(relations); the quotient must be finite."""
    s = smith(relations, cols=num_gens, inverses=True, track_u=False) if relations else None
    if s is None:
        if num_gens:
            raise ValueError("infinite abelian group")
        return AbelianPresentation(FinAbGroup(()), [], [], [])
    diag = s.diagonal + [0] * (num_gens - len(s.diagonal))
    if any(d == 0 for d in diag):
        raise ValueError("infinite abelian group")
    positions = [t for t, d in enumerate(diag) if d > 1]
    group = FinAbGroup(tuple(diag[t] for t in positions))
    return AbelianPresentation(group, s.V, s.Vinv, positions)


def abelian_group_from_action(num_gens: int, act: Callable[[Hashable, int], Hashable],
                              identity: Hashable):
    """Decompose a finite abelian group given by generators acting on labels.

    ``act(label, i)`` multiplies the element with that label by generator i.
    Returns ``(FinAbGroup, coords)`` with ``coords[label]`` its coordinates.
    """
    vec = {identity: [0] * num_gens}
    order = [identity]
    relations = []
    pos = 0
    while pos < len(order):
        x = order[pos]
        pos += 1
        for i in range(num_gens):
            y = act(x, i)
            v = list(vec[x])
            v[i] += 1
            if y in vec:
                rel = [a - b for a, b in zip(v, vec[y])]
                if any(rel):
                    relations.append(rel)
            else:
                vec[y] = v
                order.append(y)
    pres = present_abelian(num_gens, relations)
    coords = {lab: pres.coords(v) for lab, v in vec.items()}
    return pres.group, coords


def subquotient_data(N: int, sub_generators, denominator_generators, dim: int | None = None):
    """(S + D)/D inside (Z/N)^k as a presentation on the generators of S."""
    S = [[int(x) % N for x in v] for v in sub_generators]
    D = [[int(x) % N for x in v] for v in denominator_generators]
    k = dim if dim is not None else len((S or D or [[]])[0])
    a = len(S)
    if a == 0:
        return present_abelian(0, [])
    # columns: S | D | N*I ; kernel projected onto the S block gives the relations
    cols = [list(v) for v in S] + [list(v) for v in D] + [[N if i == j else 0 for i in range(k)] for j in range(k)]
    M = [[cols[j][i] for j in range(len(cols))] for i in range(k)]
    if k == 0:
        rels = _identity(a)
    else:
        rels = [row[:a] for row in integer_kernel(M, cols=len(cols))]
    rels = [r for r in rels if any(r)]
    return present_abelian(a, rels)


def subquotient(N: int, sub_generators, denominator_generators, dim: int | None = None) -> FinAbGroup:
    """The group (span S + span D)/span D for vectors in (Z/N)^k."""
    S = [[int(x) % N for x in v] for v in sub_generators]
    pres = subquotient_data(N, S, denominator_generators, dim)
    coords = []
    for w in pres.generator_weights():
        k = len(S[0]) if S else 0
        coords.append(tuple(sum(wj * S[j][i] for j, wj in enumerate(w)) % N for i in range(k)))
    return FinAbGroup(pres.group.invariant_factors, tuple(coords))


def subgroup_of_product(factors: Sequence[int], generators) -> AbelianPresentation:
    """Structure of the subgroup of Z/f1 + ... + Z/fk spanned by ``generators``."""
    L = math.lcm(*factors) if factors else 1
    scale = [L // f for f in factors]
    emb = [[int(x) * s % L for x, s in zip(v, scale)] for v in generators]
    return subquotient_data(L, emb, [], dim=len(factors))


# -- Q/Z ----------------------------------------------------------------------

def qz(x) -> Fraction:
    """Reduce a rational into [0, 1)."""
    x = Fraction(x)
    return x - math.floor(x)


def _pair_compatible(n1: int, l1: Fraction, n2: int, l2: Fraction) -> bool:
    n = math.lcm(n1, n2)
    return qz((n // n1) * l1) == qz((n // n2) * l2)


def combine_lambda(pairs: Sequence[tuple[int, object]]) -> Fraction:
    """Find lambda in Q/Z with n_i * lambda = lambda_i for every pair.

    Compatibility is checked pairwise at n = lcm(n_i, n_j); the construction
    folds the family two at a time, solving each coprime pair with a Bezout
    combination.
    """
    fam = []
    for n, lam in pairs:
        n = int(n)
        if n == 0:
            raise ValueError("n_i must be nonzero")
        lam = qz(lam)
        if n < 0:
            n, lam = -n, qz(-lam)
        fam.append((n, lam))
    for i in range(len(fam)):
        for j in range(i + 1, len(fam)):
            if not _pair_compatible(*fam[i], *fam[j]):
                raise IncompatibleFamily(f"pairs {fam[i]} and {fam[j]} violate compatibility")
    if not fam:
        return Fraction(0)
    n_acc, mu = fam[0]
    for n2, l2 in fam[1:]:
        g = math.gcd(n_acc, n2)
        m1, m2 = n_acc // g, n2 // g
        # m1 * nu = mu, m2 * nu = l2 with gcd(m1, m2) = 1
        a1, a2 = _bezout(m1, m2)
        nu = qz(a1 * mu + a2 * l2)
        if qz(m1 * nu) != mu or qz(m2 * nu) != l2:
            raise IncompatibleFamily("family has no common solution")
        # lambda with g * lambda = nu satisfies both constraints
        n_acc, mu = g, nu
    lam = qz(mu / n_acc)
    for n, l in fam:
        if qz(n * lam) != l:
            raise IncompatibleFamily("post-check failed")
    return lam


def _bezout(a: int, b: int) -> tuple[int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return x0, y0
