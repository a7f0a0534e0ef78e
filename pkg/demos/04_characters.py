"""Characters of a subgroup H <= G and the classes they induce in H^2(G, That).

A character chi: H -> Q/Z is constant when it extends to G and unramified
when it takes equal values on elements of H conjugate in G.  Its image under
the Shapiro map is zero exactly for constant characters, and it lies in the
unramified subgroup exactly for unramified characters.

Run: python3 demos/04_characters.py
"""

from fractions import Fraction

from normtorus.charbrauer import beta_map, character_from_generators, is_constant_level, is_unramified
from normtorus.permgroup import parse_group_spec, parse_perm, subgroup_from_perms
from normtorus.toruscoh import TorusModule, in_sha_cyclic, is_zero_class

cases = [("S3", "(0 1)", Fraction(1, 2)), ("S3", "(0 1 2)", Fraction(1, 3)), ("A4", "(0 1 2)", Fraction(1, 3)),
         ("A4", "(0 1)(2 3)", Fraction(1, 2))]
for spec, gen, value in cases:
    G = parse_group_spec(spec)
    g = parse_perm(gen, G.degree)
    H = subgroup_from_perms(G, [g])
    chi = character_from_generators(G, H, {g: value})
    c = beta_map(chi, TorusModule(G, H))
    print(f"{spec}, H = <{gen}>, chi = {value}:")
    print(f"  constant {is_constant_level(chi)!s:5s}  image is zero {is_zero_class(c)}")
    print(f"  unramified {is_unramified(chi)!s:5s}  image is unramified {in_sha_cyclic(c)}")
