import random

from normtorus.charbrauer import TowerSpec, tower_from_perms
from normtorus.corpus import build_torus, load_corpus
from normtorus.permgroup import generated_subgroup, parse_group_spec, parse_perm, trivial_subgroup


def corpus_pairs(max_order=None, stretch=False):
    """Distinct (group spec, stabilizer spec) pairs from the bundled corpus."""
    seen = []
    for entry in load_corpus():
        if entry.stretch and not stretch:
            continue
        key = (entry.group_spec, entry.stabilizer_spec)
        if key in seen:
            continue
        if max_order is not None and build_torus(*key).group.order > max_order:
            continue
        seen.append(key)
    return seen


# a few pairs beyond the corpus that exercise non-point-stabilizer subgroups
EXTRA_PAIRS = [
    ("S3", "(0 1 2)"),
    ("S3", "trivial"),
    ("S4", "(0 1 2 3)"),
    ("D4", "(0 2)(1 3)"),
    ("regular:[2,4]", "trivial"),
    ("A4", "(0 1)(2 3)"),
]


def worked_towers():
    S3 = parse_group_spec("S3")
    A4 = parse_group_spec("A4")
    c3 = [parse_perm("(0 1 2)", 3)]
    return [
        ("S3-C3", tower_from_perms(S3, c3, [])),
        ("S3-C3-C3", tower_from_perms(S3, c3, c3)),
        ("A4-C3", tower_from_perms(A4, [parse_perm("(0 1 2)", 4)], [])),
    ]


def _normal_closure(G, lam, gens):
    gens = set(gens)
    while True:
        S = generated_subgroup(G, sorted(gens)) if gens else trivial_subgroup(G)
        new = {G.conj(l, s) for l in lam.elements for s in S.elements} - S.element_set
        if not new:
            return S
        gens |= new


def random_towers(count, seed=0):
    """Towers Gamma >= Lambda >= N with N the normal closure of [Lambda, Lambda] and maybe one more element."""
    specs = ["S3", "S4", "A4", "D4", "D5", "D6", "C6", "regular:[2,4]", "regular:[3,3]", "gens:n=6;(0 1 2),(3 4 5),(0 3)(1 4)(2 5)"]
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        G = parse_group_spec(rng.choice(specs))
        lam = generated_subgroup(G, [rng.randrange(G.order) for _ in range(rng.choice([1, 1, 2]))])
        derived = [int(G.mul[G.mul[a, b], G.mul[G.inv[a], G.inv[b]]]) for a in lam.elements for b in lam.elements]
        extra = [rng.choice(lam.elements)] if rng.random() < 0.4 else []
        nu = _normal_closure(G, lam, [d for d in derived if d] + [x for x in extra if x])
        if nu.order < lam.order:
            out.append(TowerSpec(G, lam, nu))
    return out
