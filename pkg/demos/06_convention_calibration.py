"""Fixing the free-index derivative convention empirically.

Formulas that sum a derivative index freely over all values leave a choice:
read d/dy_12 as the plain partial with respect to the sorted coordinate, or
as the symmetrized partial (plain divided by the index multiplicity).  The
closure property of the second-order fundamental form on a corpus of
variationally trivial, order-reducible Lagrangians singles out one reading;
this script reproduces that calibration.
"""
from lepage import builtin_calibration_corpus, calibrate_convention, expr_to_text

corpus = builtin_calibration_corpus()
print("calibration corpus:")
for i, lam in enumerate(corpus):
    print(f"  [{i}] m={lam.ctx.m}: L = {expr_to_text(lam.L, lam.ctx.m)}")

print()
report = calibrate_convention()
print(report.render())

print()
print("The shipped default convention is the symmetrized reading for both")
print("the principal-form construction and the contact coefficients;")
print("see docs/calibration.md for the frozen report.")
