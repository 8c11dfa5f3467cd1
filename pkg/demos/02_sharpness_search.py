"""
Finding the extremal functions numerically
==========================================

The best constant is the supremum of the Rayleigh-type quotient
sum |f - mean|^p / Var_p(f)^p.  Multistart coordinate ascent recovers it and
the shape of the maximizer, which we compare with the closed forms.
"""

import numpy as np

from poincare_kn import core, optimizer

np.set_printoptions(precision=4, suppress=True)

# One exponent from each resolved regime, n = 6.
n = 6
for p in (1.5, 2.5, 3.0, 5.0):
    rep = optimizer.verify_sharpness(n, p, tol=1e-6, seed=0)
    print(f"p={p}: sup={rep.best_value:.12f} closed form={rep.closed_form:.12f} "
          f"family={rep.family} maximizer={rep.best_f}")

# The exhaustive grid is a slow but simple oracle for small n.
grid = optimizer.grid_search(4, 2.5, 100)
ascent = optimizer.multistart_ascent(4, 2.5, starts=16, seed=0)
print(f"\ngrid oracle {grid.best_value:.10f} vs ascent {ascent.best_value:.10f}")

# At a maximizer the stationarity residual vanishes when C is the sharp constant.
print("residual at the maximizer:", optimizer.stationarity_residual(ascent.best_f, 2.5, ascent.best_value))

# Maximizers are not always unique: at n = 3, p = 4 every (1, t, 0) gives 1/9.
for t in (0.0, 0.3, 0.5, 1.0):
    print(f"n=3, p=4, f=(1, {t}, 0): quotient {core.rayleigh_quotient([1.0, t, 0.0], 4.0):.15f}")
