"""Exact linear algebra over Z and Z/N, the backend for every group computation.

Run: python3 demos/01_linear_algebra.py
"""

from fractions import Fraction

from normtorus.zmodalg import combine_lambda, kernel_mod, smith_normal_form, solve_mod, subquotient

# Smith normal form: U A V = diag(d_1, d_2, ...) with d_1 | d_2 | ...
A = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
d, U, V = smith_normal_form(A)
print("Smith diagonal of", A, "is", d)

# Linear systems modulo a composite N are solved prime power by prime power.
print("kernel of [[2, 3]] mod 6:", kernel_mod([[2, 3]], 6, cols=2))
print("solve 4x = 2 mod 6:", solve_mod([[4]], [2], 6))
print("solve 4x = 1 mod 6:", solve_mod([[4]], [1], 6), "(no solution)")

# Subquotients <S + D> / <D> of (Z/N)^k come back as invariant factors.
print("<(2,0),(0,3)> / <(4,0)> in (Z/12)^2:", subquotient(12, [[2, 0], [0, 3]], [[4, 0]]))

# A compatible family n_i * lambda = lambda_i in Q/Z has a common solution.
family = [(4, Fraction(1, 3)), (6, Fraction(1, 2))]
lam = combine_lambda(family)
print(f"lambda with 4 lambda = 1/3 and 6 lambda = 1/2: {lam}")
