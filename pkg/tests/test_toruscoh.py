import itertools
import json
import math
import random

import numpy as np
import pytest

from conftest import EXTRA_PAIRS, corpus_pairs
from normtorus.permgroup import (
    NotASubgroup,
    Perm,
    Subgroup,
    cyclic_subgroup_reps,
    generated_subgroup,
    has_cyclic_p_sylows,
    parse_group_spec,
    parse_perm,
    parse_subgroup_spec,
    point_stabilizer,
    whole_group,
)
from normtorus.toruscoh import (
    Cochain1,
    CohClass,
    MVector,
    TorusModule,
    all_classes,
    build_torus_module,
    class_coordinates,
    classes_to_json,
    coboundaries1,
    coboundary,
    cocycles1,
    h2_of_that,
    in_sha_cyclic,
    is_zero_class,
    m_torsion_order,
    restriction_trivial,
    sha2_cyc,
    sha2_cyc_pointwise,
    sha_membership_pointwise,
    verify_cocycle,
)
from normtorus.zmodalg import subquotient


def torus(group, stab):
    G = parse_group_spec(group)
    return TorusModule(G, parse_subgroup_spec(G, stab))


def _span(vectors, N):
    vectors = [tuple(int(x) % N for x in v) for v in vectors]
    if not vectors:
        return {()}
    zero = tuple(0 for _ in vectors[0])
    seen = {zero}
    frontier = [zero]
    while frontier:
        x = frontier.pop()
        for g in vectors:
            y = tuple((a + b) % N for a, b in zip(x, g))
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return seen


def _naive_is_cocycle(T, values, N):
    """b(gh) = b(g) + g.b(h), checked pair by pair with explicit permutation of coordinates."""
    G = T.group
    cs = T.cosets
    for g in range(G.order):
        for h in range(G.order):
            acted = [0] * T.n
            for x in range(T.n):
                acted[int(cs.action[g, x])] = values[h][x]
            rhs = [(values[g][x] + acted[x] - acted[0] - values[g][0]) % N for x in range(T.n)]
            gh = int(G.mul[g, h])
            lhs = [(values[gh][x] - values[gh][0]) % N for x in range(T.n)]
            if lhs != rhs:
                return False
    return True


# -- construction ---------------------------------------------------------------

def test_build_examples():
    T = torus("A4", "0")
    assert (T.n, T.e) == (4, 12)
    G = parse_group_spec("S4")
    T = build_torus_module(G, whole_group(G))
    assert T.n == 1 and T.rank == 0
    T = torus("S3", "(0 1 2)")
    assert (T.n, T.e) == (2, 6)


def test_build_rejects_foreign_subgroup():
    G = parse_group_spec("S3")
    K = parse_group_spec("S3")
    with pytest.raises(NotASubgroup):
        TorusModule(G, point_stabilizer(K, 0))


def test_mvector_canonical_form_and_embedding():
    v = MVector(6, (2, 5, 1))
    assert v.coords == (0, 3, 5)
    assert v.embed(12).coords == (0, 6, 10)
    with pytest.raises(ValueError):
        v.embed(8)


@pytest.mark.parametrize("N,n", [(2, 2), (3, 3), (4, 2), (6, 3), (4, 4)])
def test_m_torsion_structure(N, n):
    # M[N] = (Z/N)^n / diagonal has N^(n-1) elements; M[N] -> M[N^2] is injective
    vecs = {MVector(N, c).coords for c in itertools.product(range(N), repeat=n)}
    assert len(vecs) == N ** (n - 1) == m_torsion_order(type("T", (), {"n": n})(), N)
    images = {MVector(N, v).embed(N * N).coords for v in vecs}
    assert len(images) == len(vecs)


def test_cochain_must_vanish_at_identity():
    with pytest.raises(ValueError):
        Cochain1(4, np.array([[0, 1], [0, 0]]))


# -- cocycles and coboundaries ---------------------------------------------------------

def test_cocycles_trivial_group():
    T = torus("C1", "trivial")
    assert cocycles1(T, 5) == []


def test_c2_regular_level_two():
    T = torus("C2", "trivial")
    Z = cocycles1(T, 2)
    span = _span([T.generator_coords(z) for z in Z], 2)
    assert len(span) == 2
    # exhaustive: the only candidates are b(g) in {(0,0), (0,1)}
    brute = [v for v in range(2) if _naive_is_cocycle(T, [[0, 0], [0, v]], 2)]
    assert len(brute) == 2


def _brute_cocycles(T, N):
    """All cocycles, by trying every assignment of values on all of G (tiny cases)."""
    G = T.group
    m = T.n - 1
    out = set()
    for flat in itertools.product(range(N), repeat=m * (G.order - 1)):
        vals = [[0] * T.n] + [[0] + list(flat[i * m:(i + 1) * m]) for i in range(G.order - 1)]
        if _naive_is_cocycle(T, vals, N):
            out.add(tuple(x for s in G.generator_indices for x in vals[s][1:]))
    return out


@pytest.mark.parametrize("group,stab,N", [("C2", "trivial", 2), ("C2", "trivial", 4), ("C3", "trivial", 3),
                                          ("S3", "(0 1 2)", 2), ("S3", "(0 1 2)", 3)])
def test_cocycles_against_exhaustion(group, stab, N):
    T = torus(group, stab)
    Z = cocycles1(T, N)
    assert _span([T.generator_coords(z) for z in Z], N) == _brute_cocycles(T, N)


@pytest.mark.parametrize("group,stab", [("S3", "0"), ("A4", "0"), ("D4", "0"), ("S4", "0")])
def test_cocycles_satisfy_full_identity(group, stab):
    T = torus(group, stab)
    for z in cocycles1(T, T.e):
        assert verify_cocycle(T, z)
        assert _naive_is_cocycle(T, z.values.tolist(), T.e)


def test_coboundary_examples():
    T = torus("C2", "trivial")
    assert coboundary(T, [0, 0], 2).is_zero()
    d = coboundary(T, [0, 1], 2)
    assert not np.any(d.values[0])
    assert d.values[1].tolist() == [0, 0]  # g.(0,1) = (1,0) ~ (0,1), so g.delta - delta = 0


@pytest.mark.parametrize("group,stab", [("C2", "trivial"), ("C3", "trivial"), ("S3", "0"),
                                        ("S3", "(0 1 2)"), ("regular:[2,2]", "trivial")])
@pytest.mark.parametrize("N", [2, 3, 4])
def test_coboundary_count_is_orbit_stabilizer(group, stab, N):
    T = torus(group, stab)
    Bs = coboundaries1(T, N)
    span = _span([T.generator_coords(b) for b in Bs], N) if Bs else {()}
    elems = [MVector(N, (0,) + c) for c in itertools.product(range(N), repeat=T.n - 1)]
    fixed = 0
    for v in elems:
        d = coboundary(T, v.coords, N)
        fixed += d.is_zero()
    assert len(span) * fixed == len(elems)


# -- H^2 -------------------------------------------------------------------------------

@pytest.mark.parametrize("group,stab,factors", [
    ("A4", "0", (2,)), ("S3", "(0 1 2)", (3,)), ("S4", "whole", ()), ("S3", "0", ()),
    ("regular:[2,2]", "trivial", (2,)), ("A5", "0", (3,)),
])
def test_h2_examples(group, stab, factors):
    group_, gens = h2_of_that(torus(group, stab))
    assert group_.invariant_factors == factors
    assert len(gens) == len(factors)


@pytest.mark.parametrize("group,stab", corpus_pairs(max_order=60) + EXTRA_PAIRS)
def test_h2_generators_have_the_right_orders(group, stab):
    T = torus(group, stab)
    H2, gens = h2_of_that(T)
    for c, d in zip(gens, H2.invariant_factors):
        assert verify_cocycle(T, c.representative)
        assert not is_zero_class(c)
        assert is_zero_class(c.scale(d))
        for p in range(1, d):
            if d % p == 0 and p < d:
                assert not is_zero_class(c.scale(p))


@pytest.mark.parametrize("group,stab", [("A4", "0"), ("regular:[2,4]", "trivial"), ("regular:[3,3]", "trivial")])
def test_class_coordinates_roundtrip(group, stab):
    T = torus(group, stab)
    H2, _ = h2_of_that(T)
    for c in all_classes(T):
        assert class_coordinates(c) == c.coords
    classes = all_classes(T)
    a, b = classes[-1], classes[len(classes) // 2]
    s = a + b
    assert class_coordinates(s) == tuple((x + y) % d for x, y, d in zip(a.coords, b.coords, H2.invariant_factors))


@pytest.mark.parametrize("group,stab", [("A4", "0"), ("S3", "(0 1 2)"), ("regular:[2,2]", "trivial")])
def test_stabilization_level_is_enough(group, stab):
    # using M[e^3] instead of M[e^2] for the coboundaries changes nothing
    T = torus(group, stab)
    e = T.e
    Z = cocycles1(T, e)
    S = [[x * e * e for x in T.generator_coords(z)] for z in Z]
    D = [T.generator_coords(b) for b in coboundaries1(T, e ** 3)]
    K = len(T.group.generator_indices) * (T.n - 1)
    assert subquotient(e ** 3, S, D, dim=K).invariant_factors == h2_of_that(T)[0].invariant_factors


# -- restrictions and the cyclic kernel ----------------------------------------------------

def test_restriction_examples():
    T = torus("A4", "0")
    _, (c,) = h2_of_that(T)
    G = T.group
    assert restriction_trivial(c, Perm.identity(4))
    for p in [parse_perm("(0 1)(2 3)", 4), parse_perm("(0 1 2)", 4), parse_perm("(1 2 3)", 4)]:
        assert restriction_trivial(c, p)
    assert restriction_trivial(c, G.index[parse_perm("(0 2 1)", 4)])
    T = torus("S3", "(0 1 2)")
    _, (c,) = h2_of_that(T)
    assert not restriction_trivial(c, parse_perm("(0 1 2)", 3))


@pytest.mark.parametrize("group,stab,factors", [
    ("A4", "0", (2,)), ("S4", "0", ()), ("regular:[2,2]", "trivial", (2,)),
    ("regular:[3,3]", "trivial", (3,)), ("S3", "(0 1 2)", ()), ("regular:[2,4]", "trivial", (2,)),
])
def test_sha_examples(group, stab, factors):
    T = torus(group, stab)
    assert sha2_cyc(T)[0].invariant_factors == factors
    assert sha2_cyc_pointwise(T)[0].invariant_factors == factors


def test_pointwise_examples():
    T = torus("A4", "0")
    zero = all_classes(T)[0]
    assert sha_membership_pointwise(zero)
    assert sha_membership_pointwise(h2_of_that(T)[1][0])
    T = torus("S3", "(0 1 2)")
    assert not sha_membership_pointwise(h2_of_that(T)[1][0], T)


def _members_by_enumeration(T):
    return {c.coords for c in all_classes(T) if in_sha_cyclic(c)}


@pytest.mark.parametrize("group,stab", corpus_pairs(max_order=24) + EXTRA_PAIRS)
def test_pointwise_agrees_with_cyclic_restriction(group, stab):
    T = torus(group, stab)
    for c in all_classes(T):
        assert sha_membership_pointwise(c) == in_sha_cyclic(c)
    sha, gens = sha2_cyc(T)
    assert len(_members_by_enumeration(T)) == sha.order
    for g in gens:
        assert in_sha_cyclic(g)


@pytest.mark.parametrize("group,stab", corpus_pairs(max_order=120) + EXTRA_PAIRS)
def test_killing_bounds(group, stab):
    T = torus(group, stab)
    sha, _ = sha2_cyc(T)
    assert T.n % sha.exponent == 0
    for p in cyclic_subgroup_reps(T.group):
        S = generated_subgroup(T.group, [T.group.index[p]])
        assert S.index % sha.exponent == 0


def _primes(n):
    return [p for p in range(2, n + 1) if n % p == 0 and all(p % q for q in range(2, p))]


@pytest.mark.parametrize("group,stab", corpus_pairs(max_order=120) + EXTRA_PAIRS)
def test_cyclic_sylow_hypothesis_forces_vanishing(group, stab):
    T = torus(group, stab)
    if all(has_cyclic_p_sylows(T.group, p) for p in _primes(T.n)):
        assert sha2_cyc(T)[0].is_trivial()


@pytest.mark.parametrize("group,stab", corpus_pairs(max_order=60) + EXTRA_PAIRS)
def test_order_independence(group, stab):
    T = torus(group, stab)
    base = sha2_cyc(T)[0].invariant_factors
    base_h2 = h2_of_that(T)[0].invariant_factors
    G = T.group
    rng = random.Random(hash((group, stab)) & 0xFFFF)
    for _ in range(5):
        images = list(range(G.degree))
        rng.shuffle(images)
        perm = Perm(tuple(images))
        R = G.relabel(perm)
        pinv = perm.inverse()
        H = Subgroup(R, [R.index[perm * G.elements[h] * pinv] for h in T.stabilizer.elements])
        T2 = TorusModule(R, H)
        assert sha2_cyc(T2)[0].invariant_factors == base
        assert h2_of_that(T2)[0].invariant_factors == base_h2
        g = rng.randrange(G.order)
        T3 = TorusModule(G, T.stabilizer.conjugate(g))
        assert sha2_cyc(T3)[0].invariant_factors == base


def test_trivial_torus_short_circuits():
    G = parse_group_spec("A4")
    T = TorusModule(G, whole_group(G))
    assert h2_of_that(T)[0].is_trivial()
    assert sha2_cyc(T)[0].is_trivial()
    assert sha2_cyc_pointwise(T)[0].is_trivial()
    assert len(all_classes(T)) == 1


def test_json_serialization():
    T = torus("A4", "0")
    c = h2_of_that(T)[1][0]
    data = c.to_json()
    assert data["level"] == 12
    assert len(data["values"]) == T.group.order
    assert all(row[1] == 0 for row in data["values"])
    rebuilt = Cochain1(data["level"], np.array([row[1:] for row in data["values"]]))
    assert np.array_equal(rebuilt.values, c.representative.values)
    assert json.loads(classes_to_json([c]))[0] == data


def test_cohclass_level():
    T = torus("A4", "0")
    c = h2_of_that(T)[1][0]
    assert isinstance(c, CohClass)
    assert c.stabilized_level == 144
    assert math.gcd(c.representative.level, 12) == 12
