"""
Sampling the auxiliary inequalities
===================================

Each lemma behind the sharp constants reduces to a one- or two-variable
inequality.  The proof-check suite evaluates them on dense grids and reports
the worst margin (nonnegative means the claim holds there).
"""

from poincare_kn import constants as C
from poincare_kn import proofcheck as pc

for report in pc.run_suite():
    status = "ok" if report.passed else "FAILED"
    print(f"{report.name:20s} {report.samples:>10d} samples  worst margin {report.worst_margin: .3e}  {status}")

# A single check, looked at in detail: the odd power series used just above p = 3.
rep = pc.check_series_3plus(4, 3 + C.delta1(4) / 2)
print()
print(rep.name, rep.details)

# The identity at y = 1 in the p >= 4 proposition holds exactly.
print("proposition margin at y=1:", pc.check_proposition_p4(3.7, 5, 1.0))
