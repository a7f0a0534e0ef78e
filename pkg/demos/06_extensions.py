"""Central extensions with a splitting datum, read off cohomology classes.

A class in H^2(G, That) gives an extension 1 -> Z/e -> Gt -> G -> 1 and a
homomorphism r on the preimage of H.  The triple is unramified when r agrees
on elements conjugate in Gt; this happens exactly for classes vanishing on
cyclic subgroups.  The second half builds the extension of D_n by Z/2 that
has no section and checks that no splitting over <sigma> is unramified.

Run: python3 demos/06_extensions.py
"""

from normtorus.extgroups import (
    conjugating_witness,
    dihedral_tilde,
    enumerate_splittings,
    is_unramified_triple,
    splitting_fails_on_pair,
    triple_from_class,
    unramified_witness,
)
from normtorus.permgroup import parse_group_spec, parse_subgroup_spec
from normtorus.toruscoh import TorusModule, all_classes, in_sha_cyclic

for spec, stab in [("A4", "0"), ("S3", "(0 1 2)")]:
    G = parse_group_spec(spec)
    T = TorusModule(G, parse_subgroup_spec(G, stab))
    for c in all_classes(T)[1:]:
        t = triple_from_class(c)
        print(f"{spec}/<{stab}> class {c.coords}: |Gt| = {t.order}, unramified triple {is_unramified_triple(t)}, "
              f"class vanishes on cyclic subgroups {in_sha_cyclic(c)}")
        w = unramified_witness(t)
        if w:
            a, b, x = w
            print(f"    conjugating {a} by {x} gives {b}, but r changes from {t.r(a)} to {t.r(b)}")

for n in (4, 6):
    dt = dihedral_tilde(n)
    s, stn, x = conjugating_witness(dt)
    print(f"n = {n}: order {dt.order}, section exists {dt.has_section()}, "
          f"conjugator {dt.big.elements[x].cycle_string()}")
    for t in enumerate_splittings(dt):
        print(f"  r(sigma) = {t.r(dt.to_pair(s))}/4: fails on (sigma, sigma tau^n) {splitting_fails_on_pair(dt, t)}")
