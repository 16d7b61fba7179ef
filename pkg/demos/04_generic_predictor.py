"""Predicting ord_p b_n without enumerating anything.

The residue matrix of p mod d fixes a minimal ceiling sum M_n; the detecting
polynomial f_n^{t_n} decides whether the coefficient vector is generic.  When
it is, and p is large, ord_p b_n = (M_n + t_n)/(p - 1).  Here the prediction is
compared with brute force.
"""

from expsum_newton import PolyInput, f_n_t, l_polynomial, predict, residue_matrix, t_n, w_membership
from expsum_newton.predictor import large_prime_bound

d, a = 3, (1, 0)
R = residue_matrix(d, 2)
print("residue matrix for d=3, r=2:", R.entries, " J =", R.J)
for n in (1, 2):
    print(f"f_{n}^{t_n(d, 2, n)} =", f_n_t(d, 2, n, t_n(d, 2, n)))

print(f"\nlarge-prime bound (d^2+1)(d-1) = {large_prime_bound(d)}")
for p in (23, 29, 41, 47):
    rep = predict(d, a, p)
    actual = l_polynomial(PolyInput(d, a), p).valuations()
    for row, v in zip(rep.rows, actual):
        print(f"  p={p} n={row.n}: predicted {row.predicted_ord}, brute force {v}, certified {row.certified}")

# Off the generic locus the predictor makes no claim.
w = w_membership(3, (3, 3))
print("\na = (3, 3): detecting values by class", {r: {n: str(v) for n, v in vals.items()} for r, vals in w.values.items()})
rep = predict(3, (3, 3), 23)
print("  certified at p=23?", rep.certified, "  actual b_1 =", l_polynomial(PolyInput(3, (3, 3)), 23).b[0])
