"""The L-polynomial, its Newton polygon, and the Hodge lower bound.

For f = x^3 + x the Newton polygon equals the Hodge polygon when p = 1 mod 3
and sits strictly above it at n = 1 when p = 2 mod 3, with the gap shrinking
like 1/(p - 1).  The Artin-Schreier zeta numerator stretches the polygon by
p - 1.
"""

from fractions import Fraction

from expsum_newton import (
    PolyInput,
    hodge_polygon,
    l_polynomial,
    newton_polygon,
    padic_newton_polygon,
    scale,
    zeta_numerator,
)

f = PolyInput(3, (1, 0))
HP = hodge_polygon(3)
print("f =", f, "  HP:", HP)
print(f"{'p':>4} {'p mod 3':>8}  NP")
for p in (7, 11, 13, 17, 23, 29, 41, 47):
    NP = newton_polygon(l_polynomial(f, p))
    gap = NP.value_at(1) - HP.value_at(1)
    print(f"{p:>4} {p % 3:>8}  {NP}   gap at n=1: {gap}  (p-1)*gap = {(p - 1) * gap}")

p = 5
L = l_polynomial(f, p)
P = zeta_numerator(L)
print(f"\nzeta numerator of y^{p} - y = x^3 + x: degree {len(P) - 1}")
print("  coefficients:", P)
print("  its p-adic polygon:", padic_newton_polygon(P, p))
print("  (p-1) * NP(f):     ", scale(newton_polygon(L), p - 1))
assert padic_newton_polygon(P, p) == scale(newton_polygon(L), p - 1)
assert Fraction(1, 3) == HP.value_at(1)
