"""Character groups of a tower Gamma >= Lambda >= N.

C is the dual of Lambda/N.  C_const holds the characters extending to Gamma,
C_nr the unramified ones, and D is the subgroup of Lambda/N generated by
commutators [s, u] with s and u s u^-1 in Lambda.  C_nr is always the
orthogonal complement of D.  The last part compares the images of two
character families under corestriction to a common group.

Run: python3 demos/05_towers.py
"""

from normtorus.charbrauer import (
    corestriction_images,
    orthogonal_complement,
    tower_C,
    tower_C_const,
    tower_C_nr,
    tower_D,
    tower_from_perms,
)
from normtorus.permgroup import parse_group_spec, parse_perm

for spec, lam, nu in [("S3", ["(0 1 2)"], []), ("A4", ["(0 1 2)"], []), ("A4", ["(0 1)(2 3)"], []),
                      ("S4", ["(0 1 2 3)"], ["(0 2)(1 3)"])]:
    G = parse_group_spec(spec)
    t = tower_from_perms(G, [parse_perm(x, G.degree) for x in lam], [parse_perm(x, G.degree) for x in nu])
    D = tower_D(t)
    print(f"{spec}, Lambda = <{', '.join(lam)}>, N = <{', '.join(nu)}>:  Lambda/N = {t.quotient}")
    print(f"  C = {tower_C(t).group}, C_const = {tower_C_const(t).group}, C_nr = {tower_C_nr(t).group}, "
          f"D = {D.group}, D-perp = {orthogonal_complement(t, D).group}")

C4 = parse_group_spec("C4")
t = tower_from_perms(C4, [parse_perm("(0 2)(1 3)", 4)], [])
image_L, image_K = corestriction_images([t], C4)
print(f"C4 >= C2 >= 1: characters killing Lambda corestrict to a group of order {len(image_L)}, "
      f"characters killing N to one of order {len(image_K)}")
