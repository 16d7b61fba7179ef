"""Exact arithmetic in Q(zeta_p) and the p-adic valuation on it.

Every exponential sum lives in Z[zeta_p].  Its p-adic size is read off the
norm down to Q: ord_p(a) = v_p(N(a)) / (p - 1).
"""

import sympy

from expsum_newton import CyclotomicNumber, norm_to_rational, ord_p

p = 7
zeta = CyclotomicNumber.zeta_power(p, 1)
pi = CyclotomicNumber.one(p) - zeta

print(f"working in Q(zeta_{p}), power basis 1, z, ..., z^{p - 2}")
print("zeta^p =", zeta**p)
print("pi = 1 - zeta has norm", norm_to_rational(pi), "and ord_p", ord_p(pi))
print("pi^(p-1) has ord_p", ord_p(pi ** (p - 1)), "like p itself:", ord_p(CyclotomicNumber.from_rational(p, p)))

# The quadratic Gauss sum squares to (-1)^((p-1)/2) p, so its valuation is 1/2.
g = CyclotomicNumber.zero(p)
for x in range(1, p):
    g = g + CyclotomicNumber.zeta_power(p, x) * sympy.legendre_symbol(x, p)
print("\nGauss sum g =", g)
print("g^2 =", g * g)
print("ord_p(g) =", ord_p(g))
