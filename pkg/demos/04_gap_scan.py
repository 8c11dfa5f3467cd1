"""
Inside the unresolved interval
==============================

Between 3 + delta1(n) and the start of A_n the sharp constant is unknown.
Here we scan that interval numerically for n = 3 and compare the estimated
supremum with the best explicit candidate.  An SVG plot is written next to
this script.
"""

from pathlib import Path

from poincare_kn import constants as C
from poincare_kn import optimizer
from poincare_kn.svgplot import line_plot

n = 3
rows = optimizer.scan_gap(n, steps=25, seed=0, starts=32)
lo, hi = C.gap_interval(n)
print(f"unresolved interval for n={n}: ({lo:.6f}, {hi:.6f})")
for row in rows[::4]:
    print(f"p={row.p:.4f}  numeric sup={row.best_value:.10f}  best candidate={row.candidate_max_value:.10f}  {row.family}")

# Largest excess of the numerical supremum over the explicit candidates.
excess = max(r.best_value - r.candidate_max_value for r in rows)
print(f"largest excess over the candidates: {excess:.2e}")

ps = [r.p for r in rows]
svg = line_plot(
    [
        ("numeric sup", ps, [r.best_value for r in rows]),
        ("symmetric", ps, [C.c_symmetric(n, p) for p in ps]),
        ("Dirac", ps, [C.c_dirac(n, p) for p in ps]),
    ],
    title=f"Unresolved interval, n = {n}",
    xlabel="p",
    ylabel="constant",
)
out = Path(__file__).with_name("gap_scan_n3.svg")
out.write_text(svg, encoding="utf-8")
print("wrote", out)
