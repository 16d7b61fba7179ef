"""x^d is not generic: its polygon depends on p mod d and never settles.

NP(x^d) is the joint of segments, one per cycle of n -> r n mod d, with slope
equal to the mean of the cycle divided by d.  Two classes with different
polygons show the limit as p grows does not exist.
"""

from expsum_newton import PolyInput, cycle_data, diagonal_polygon, l_polynomial, newton_polygon, nonconvergence_witness
from expsum_newton.polygon import polygons_svg
from expsum_newton.predictor import coprime_residues

d = 5
for r in coprime_residues(d):
    cd = cycle_data(d, r)
    cycles = ", ".join(f"{list(c.members)} slope {c.slope}" for c in cd.cycles)
    print(f"r={r}: {cycles}\n      polygon {diagonal_polygon(d, r)}")

r1, r2 = nonconvergence_witness(d)
print(f"\nwitness classes {r1} and {r2} give different polygons")

for p in (7, 11, 13, 19):
    NP = newton_polygon(l_polynomial(PolyInput.monomial(d), p))
    print(f"p={p} (class {p % d}): brute force {NP}  matches: {NP == diagonal_polygon(d, p % d)}")

svg = polygons_svg([(f"r={r}", diagonal_polygon(d, r)) for r in coprime_residues(d)], title="x^5 by class")
print(f"\nSVG overlay: {len(svg)} bytes (write it with the diagonal subcommand's --svg flag)")
