"""Independent check of H^2(G, That) and its cyclic kernel via the bar resolution.

Everything here is integral: inhomogeneous cochains G^k -> Z^(n-1) in the
basis e_1, ..., e_{n-1} of That = Z^{G/H}/Z (the image of e_0 is minus the
sum of the others).  The matrices are cubic in |G|, hence the order cap.
"""

from __future__ import annotations

import numpy as np

from .permgroup import PermError, cyclic_subgroup_reps, generated_subgroup
from .toruscoh import TorusModule
from .zmodalg import FinAbGroup, integer_kernel, rank_mod_p, smith, subgroup_of_product

ORACLE_CAP = 12


class OracleCapExceeded(PermError):
    pass


def _rho(T: TorusModule) -> np.ndarray:
    """rho[g] is the (n-1) x (n-1) integer matrix of g on That."""
    m = T.n - 1
    act = T.action
    out = np.zeros((T.group.order, m, m), dtype=np.int64)
    for g in range(T.group.order):
        for x in range(1, T.n):
            y = int(act[g, x])
            if y:
                out[g, y - 1, x - 1] = 1
            else:
                out[g, :, x - 1] = -1
    return out


def _d1(rho: np.ndarray, mul: np.ndarray, elems: list[int]) -> np.ndarray:
    """(d f)(g, h) = g f(h) - f(gh) + f(g), rows indexed by (g, h, coord)."""
    k = len(elems)
    m = rho.shape[1]
    pos = {g: i for i, g in enumerate(elems)}
    D = np.zeros((k, k, m, k, m), dtype=np.int64)
    eye = np.eye(m, dtype=np.int64)
    for a, g in enumerate(elems):
        for b, h in enumerate(elems):
            D[a, b, :, b, :] += rho[g]
            D[a, b, :, pos[int(mul[g, h])], :] -= eye
            D[a, b, :, a, :] += eye
    return D.reshape(k * k * m, k * m)


def _d2(rho: np.ndarray, mul: np.ndarray, elems: list[int]) -> np.ndarray:
    """(d F)(g, h, l) = g F(h, l) - F(gh, l) + F(g, hl) - F(g, h)."""
    k = len(elems)
    m = rho.shape[1]
    pos = {g: i for i, g in enumerate(elems)}
    D = np.zeros((k, k, k, m, k, k, m), dtype=np.int64)
    eye = np.eye(m, dtype=np.int64)
    for a, g in enumerate(elems):
        for b, h in enumerate(elems):
            gh = pos[int(mul[g, h])]
            for c, l in enumerate(elems):
                D[a, b, c, :, b, c, :] += rho[g]
                D[a, b, c, :, gh, c, :] -= eye
                D[a, b, c, :, a, pos[int(mul[h, l])], :] += eye
                D[a, b, c, :, a, b, :] -= eye
    return D.reshape(k ** 3 * m, k * k * m)


def _check_cap(T: TorusModule, cap: int):
    if T.group.order > cap:
        raise OracleCapExceeded(f"|G| = {T.group.order} exceeds the oracle cap {cap}")


def _h2_data(T: TorusModule):
    """Torsion factors of coker d1 plus integral cocycles generating them."""
    G = T.group
    elems = list(range(G.order))
    rho = _rho(T)
    d1 = _d1(rho, G.mul, elems)
    s = smith(d1.tolist(), cols=d1.shape[1], track_u=False)
    # H^2 is finite iff rank d2 = dim C^2 - rank d1; rank mod p bounds rank d2 from below
    d2 = _d2(rho, G.mul, elems)
    if rank_mod_p(d2) < d1.shape[0] - s.rank:
        raise ArithmeticError("H^2 has a free part; the module is not what it claims to be")
    V = np.array(s.V, dtype=object)
    d1o = d1.astype(object)
    factors, cocycles = [], []
    for t, d in enumerate(s.diagonal):
        if d > 1:
            col = d1o.dot(V[:, t])
            factors.append(d)
            cocycles.append(np.array([x // d for x in col], dtype=object))
    return factors, cocycles, rho


def bar_oracle_h2(T: TorusModule, cap: int = ORACLE_CAP) -> FinAbGroup:
    _check_cap(T, cap)
    if T.n == 1:
        return FinAbGroup(())
    factors, _, _ = _h2_data(T)
    return FinAbGroup(tuple(factors))


def bar_oracle_sha(T: TorusModule, cap: int = ORACLE_CAP) -> FinAbGroup:
    """Classes of H^2 whose restriction to every cyclic subgroup is a coboundary."""
    _check_cap(T, cap)
    if T.n == 1:
        return FinAbGroup(())
    factors, cocycles, rho = _h2_data(T)
    if not factors:
        return FinAbGroup(())
    G = T.group
    m = T.n - 1
    k = G.order
    blocks = []
    for p in cyclic_subgroup_reps(G):
        g = G.index[p]
        if g == 0:
            continue
        C = sorted(generated_subgroup(G, [g]).elements)
        dC = _d1(rho, G.mul, C)
        rows = np.array([(a * k + b) * m + y for a in C for b in C for y in range(m)])
        restricted = [u[rows] for u in cocycles]
        blocks.append((restricted, dC))
    nx = len(factors)
    total_cols = nx + sum(b[1].shape[1] for b in blocks)
    joint = []
    off = nx
    for restricted, dC in blocks:
        for r in range(dC.shape[0]):
            row = [0] * total_cols
            for t in range(nx):
                row[t] = int(restricted[t][r])
            for j in range(dC.shape[1]):
                row[off + j] = -int(dC[r, j])
            joint.append(row)
        off += dC.shape[1]
    if joint:
        kern = integer_kernel(joint, cols=total_cols)
        xs = [v[:nx] for v in kern]
    else:
        xs = [[1 if i == j else 0 for i in range(nx)] for j in range(nx)]
    xs = [[x % d for x, d in zip(v, factors)] for v in xs]
    pres = subgroup_of_product(factors, [v for v in xs if any(v)])
    return FinAbGroup(pres.group.invariant_factors)
