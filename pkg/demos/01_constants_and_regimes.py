"""
Candidate constants and the regime map
======================================

Three explicit functions give lower bounds for the best constant in the
Poincare-Wirtinger inequality on the complete graph K_n.  Which of them is
sharp depends on the exponent p.
"""

import numpy as np

from poincare_kn import constants as C

# The three candidates for n = 5 on a coarse p grid.  At p = 2 they all equal 1/n.
n = 5
print(f"{'p':>5} {'two-level':>11} {'symmetric':>11} {'Dirac':>11}  regime")
for p in (1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 6.0):
    reg = C.regime(n, p)
    print(f"{p:5.2f} {C.c_two_level(n, p):11.6f} {C.c_symmetric(n, p):11.6f} {C.c_dirac(n, p):11.6f}  {reg.kind}")

# The symmetric regime extends a little past p = 3, by delta1(n).  The Dirac
# regime starts at the left end of A_n, which lies below 3 + delta2(n).
# Between them is an interval where no sharp constant is known.
print()
print(f"{'n':>6} {'3+delta1':>12} {'inf A_n':>12} {'3+delta2':>12}")
for n in (3, 4, 5, 10, 100, 1000):
    lo, hi = C.gap_interval(n)
    print(f"{n:6d} {lo:12.8f} {hi:12.8f} {3 + C.delta2(n):12.8f}")

# Both thresholds shrink with n: delta1 like 1/(2 n^2 log n), delta2 like 2/n.
print()
for n in (10, 10**3, 10**5):
    print(f"n={n:>6}: delta1 * 2n^2 log n = {C.delta1(n) * 2 * n * n * np.log(n):.6f}, "
          f"delta2 * n / 2 = {C.delta2(n) * n / 2:.6f}")
