"""Numerical maximization of the Rayleigh quotient on K_n.

By translation, dilation and permutation invariance the search runs over
normalized, sorted functions (1, y_1, ..., y_{n-2}, 0) with
1 >= y_1 >= ... >= y_{n-2} >= 0.  Two searches are provided: an exhaustive
grid over the sorted middle values (an oracle for small n) and a multistart
cyclic coordinate ascent with golden-section line searches.
"""
from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import constants
from .constants import TIE_RTOL
from .core import abspow, as_values, check_exponent, normalize, rayleigh_quotient, sort_descending, variation_power
from .errors import BadParameter, ConstantFunction, NonConvergence, SharpnessViolation, TooLarge
from .families import Family, FamilyLabel, dirac, three_level, two_level

INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
LINE_TOL = 1e-10
MAX_PASSES = 500
DEFAULT_STARTS = 64
DEFAULT_TOL = 1e-9
CLASSIFY_TOL = 1e-6
GRID_BUDGET = 10**8
GRID_MAX_N = 8
# a coordinate only moves when the gain beats rounding noise of the line objective
MOVE_RTOL = 4 * np.finfo(float).eps


@dataclass
class OptimizationReport:
    best_f: np.ndarray
    best_value: float
    closed_form: float | None
    abs_gap: float | None
    family: FamilyLabel
    starts: int
    evaluations: int
    seed: int
    converged: bool = True
    value_ok: bool | None = None
    family_ok: bool | None = None
    extra: dict = field(default_factory=dict)


class GapRow(NamedTuple):
    p: float
    best_value: float
    candidate_max_value: float
    family: FamilyLabel


# -- classification ---------------------------------------------------------

def _labels(f: np.ndarray, tol: float) -> list[FamilyLabel]:
    """Every family label ``f`` belongs to, most specific first."""
    n = f.size
    hi = np.abs(f - 1.0) <= tol
    lo = np.abs(f) <= tol
    mid = ~(hi | lo)
    labels = []
    if not mid.any():
        k = int(hi.sum())
        if k in (n // 2, n - n // 2):
            labels.append(FamilyLabel(Family.BALANCED_TWO_LEVEL, block_size=k))
        if k in (1, n - 1):
            labels.append(FamilyLabel(Family.DIRAC_DELTA, block_size=k))
        labels.append(FamilyLabel(Family.ANY_TWO_LEVEL, block_size=k))
    elif hi.sum() == 1 and lo.sum() == 1 and np.ptp(f[mid]) <= tol:
        middle = float(f[mid].mean())
        if abs(middle - 0.5) <= tol:
            labels.append(FamilyLabel(Family.SYMMETRIC_THREE_LEVEL_MIDPOINT, middle=middle))
        else:
            labels.append(FamilyLabel(Family.OTHER, middle=middle))
    else:
        labels.append(FamilyLabel(Family.OTHER))
    labels.append(FamilyLabel(Family.EVERYTHING))
    return labels


def classify_maximizer(f, tol: float = CLASSIFY_TOL, prefer: Family | None = None) -> FamilyLabel:
    """Name the extremizer family ``f`` belongs to.

    Some functions sit in two families (for n = 3, (1, 0, 0) is both the
    balanced two-level function and the Dirac delta).  ``prefer`` picks that
    family whenever ``f`` is a member of it; otherwise the most specific label
    wins, in the order BalancedTwoLevel, DiracDelta, AnyTwoLevel.
    """
    values = sort_descending(normalize(as_values(f)))
    labels = _labels(values, tol)
    if prefer is not None:
        for label in labels:
            if label.kind is prefer:
                return label
    return labels[0]


# -- stationarity -----------------------------------------------------------

def stationarity_residual(f, p: float, C: float) -> float:
    """C * sum_j [(f_1 - f_j)^(p-1) + (f_j - f_n)^(p-1)] - (f_1 - m)^(p-1) - (m - f_n)^(p-1).

    Vanishes at every maximizer when C is the sharp constant: it is the
    derivative of C Var_p^p - deviation along the perturbation that pushes
    the extreme values apart symmetrically.
    """
    values = sort_descending(as_values(f))
    if values.ndim != 1:
        raise ValueError("stationarity_residual takes a single function")
    if p <= 1:
        raise BadParameter(f"stationarity needs p > 1, got {p}")
    if values[0] == values[-1]:
        raise ConstantFunction("stationarity is undefined for a constant function")
    q = p - 1.0
    top, bottom = values[0], values[-1]
    m = math.fsum(values) / values.size
    spread = math.fsum(abspow(top - values, q)) + math.fsum(abspow(values - bottom, q))
    return C * spread - abs(top - m) ** q - abs(m - bottom) ** q


# -- exhaustive grid --------------------------------------------------------

def _closed_form(n: int, p: float):
    r = constants.regime(n, p)
    return r, (r.constant.value if r.constant else None)


def _finish(report_f, value, n, p, starts, evaluations, seed, converged=True, class_tol=CLASSIFY_TOL):
    r, closed = _closed_form(n, p)
    prefer = r.constant.maximizer_family if r.constant else None
    label = classify_maximizer(report_f, class_tol, prefer=prefer)
    return OptimizationReport(
        best_f=report_f,
        best_value=value,
        closed_form=closed,
        abs_gap=None if closed is None else abs(value - closed),
        family=label,
        starts=starts,
        evaluations=evaluations,
        seed=seed,
        converged=converged,
    )


def grid_search(n: int, p: float, resolution: int, budget: int = GRID_BUDGET, chunk: int = 200_000) -> OptimizationReport:
    """Best function over the grid of sorted middle values k/resolution.

    Only non-increasing middle tuples are enumerated, so the work is
    C(resolution + n - 2, n - 2) evaluations rather than (resolution+1)^(n-2).
    Ties keep the first point in enumeration order.
    """
    p = check_exponent(p)
    if n < 3 or resolution < 2:
        raise BadParameter("grid search needs n >= 3 and resolution >= 2")
    if n > GRID_MAX_N or (resolution + 1) ** (n - 2) > budget:
        raise TooLarge(f"grid of {resolution + 1}^{n - 2} points exceeds the budget {budget}")
    tuples = itertools.combinations_with_replacement(range(resolution, -1, -1), n - 2)
    best_value, best_f, count = -math.inf, None, 0
    while True:
        block = np.array(list(itertools.islice(tuples, chunk)), dtype=float)
        if block.size == 0:
            break
        block = block.reshape(len(block), n - 2) / resolution
        F = np.empty((len(block), n))
        F[:, 0], F[:, -1], F[:, 1:-1] = 1.0, 0.0, block
        values = rayleigh_quotient(F, p)
        i = int(np.argmax(values))
        if values[i] > best_value:
            best_value, best_f = float(values[i]), F[i].copy()
        count += len(block)
    best_value = rayleigh_quotient(best_f, p)
    report = _finish(best_f, best_value, n, p, starts=1, evaluations=count, seed=0)
    report.extra["resolution"] = resolution
    return report


# -- coordinate ascent ------------------------------------------------------

def _golden_iterations(tol: float) -> int:
    return max(1, math.ceil(math.log(tol) / math.log(INVPHI)))


class _LineObjective:
    """Quotient as a function of one coordinate, for every row of a batch.

    Holding the other n-1 values fixed, each evaluation costs O(n) per row.
    """

    def __init__(self, F: np.ndarray, i: int, p: float, total_var: np.ndarray):
        self.p = p
        self.n = F.shape[1]
        self.others = np.delete(F, i, axis=1)
        own = abspow(F[:, i : i + 1] - self.others, p).sum(axis=1)
        self.rest_var = total_var - own
        self.rest_sum = self.others.sum(axis=1)
        self.calls = 0

    def variation(self, t):
        return self.rest_var + abspow(t[:, None] - self.others, self.p).sum(axis=1)

    def __call__(self, t):
        self.calls += 1
        m = (self.rest_sum + t) / self.n
        dev = abspow(self.others - m[:, None], self.p).sum(axis=1) + abspow(t - m, self.p)
        return dev / self.variation(t)


def _golden_max(phi, rows: int, iterations: int) -> np.ndarray:
    """Lock-step golden-section search for a maximum on [0, 1], one per row."""
    a, b = np.zeros(rows), np.ones(rows)
    c, d = b - INVPHI * (b - a), a + INVPHI * (b - a)
    fc, fd = phi(c), phi(d)
    for _ in range(iterations):
        left = fc > fd
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        x = np.where(left, b - INVPHI * (b - a), a + INVPHI * (b - a))
        fx = phi(x)
        c, d, fc, fd = (
            np.where(left, x, d),
            np.where(left, c, x),
            np.where(left, fx, fd),
            np.where(left, fc, fx),
        )
    return 0.5 * (a + b)


def _ascend(F: np.ndarray, p: float, tol: float, max_passes: int):
    """Cyclic coordinate ascent on the middle columns of every row of ``F``.

    Rows are independent; a row stops once a full pass gains less than
    ``tol``.  Returns the final rows, a per-row convergence flag, and the
    number of single-function evaluations spent.
    """
    F = F.copy()
    rows, n = F.shape
    active = np.arange(rows)
    converged = np.zeros(rows, dtype=bool)
    iterations = _golden_iterations(LINE_TOL)
    evaluations = rows
    current = rayleigh_quotient(F, p)
    for _ in range(max_passes):
        if active.size == 0:
            break
        G = F[active]
        start_value = current[active]
        value = start_value.copy()
        total_var = variation_power(G, p)
        for i in range(1, n - 1):
            phi = _LineObjective(G, i, p, total_var)
            t_cur = G[:, i].copy()
            value = phi(t_cur)
            t_gs = _golden_max(phi, G.shape[0], iterations)
            best_t, best_v = t_cur, value
            for t in (t_gs, np.zeros_like(t_cur), np.ones_like(t_cur)):
                v = phi(t)
                better = v > best_v + MOVE_RTOL * np.abs(best_v)
                best_t = np.where(better, t, best_t)
                best_v = np.where(better, v, best_v)
            total_var = phi.variation(best_t)
            G[:, i] = best_t
            G = -np.sort(-G, axis=1)
            value = best_v
            evaluations += phi.calls * G.shape[0]
        F[active] = G
        gain = value - start_value
        current[active] = value
        done = gain < tol
        converged[active[done]] = True
        active = active[~done]
    return F, converged, evaluations


def _seed_rows(n: int) -> np.ndarray:
    """The three explicit candidates, normalized and sorted."""
    g0 = normalize(three_level(n, 0.0))
    g1 = dirac(n)
    g2 = two_level(n, n // 2)
    return np.vstack([sort_descending(g) for g in (g0, g1, g2)])


def _random_rows(n: int, starts: int, seed: int) -> np.ndarray:
    children = np.random.SeedSequence(seed).spawn(starts)
    rows = np.empty((starts, n))
    rows[:, 0], rows[:, -1] = 1.0, 0.0
    for r, child in enumerate(children):
        rows[r, 1:-1] = -np.sort(-np.random.default_rng(child).uniform(size=n - 2))
    return rows


def multistart_ascent(
    n: int,
    p: float,
    starts: int = DEFAULT_STARTS,
    tol: float = DEFAULT_TOL,
    seed: int = 0,
    max_passes: int = MAX_PASSES,
    strict: bool = False,
) -> OptimizationReport:
    """Maximize the quotient from the three explicit candidates plus ``starts`` random points.

    The best row is chosen by (value, lexicographic f), so the result does not
    depend on evaluation order.  If some ascent hits ``max_passes`` without a
    pass gaining less than ``tol``, the report has ``converged=False``; with
    ``strict`` a :class:`NonConvergence` carrying the report is raised instead.
    """
    p = check_exponent(p)
    if n < 3:
        raise BadParameter(f"n must be >= 3, got {n}")
    if starts < 1 or not tol > 0:
        raise BadParameter("need starts >= 1 and tol > 0")
    F0 = np.vstack([_seed_rows(n), _random_rows(n, starts, seed)])
    F, converged, evaluations = _ascend(F0, p, tol, max_passes)
    values = [rayleigh_quotient(row, p) for row in F]
    best = max(range(len(F)), key=lambda r: (values[r], tuple(F[r])))
    report = _finish(F[best].copy(), values[best], n, p, starts, evaluations, seed, bool(converged.all()))
    report.extra["seed_values"] = [rayleigh_quotient(row, p) for row in F0[:3]]
    report.extra["final_rows"], report.extra["final_values"] = F, np.array(values)
    if not report.converged:
        if strict:
            raise NonConvergence(f"coordinate ascent hit {max_passes} passes at n={n}, p={p}", report)
        warnings.warn(f"coordinate ascent did not converge at n={n}, p={p}", RuntimeWarning, stacklevel=2)
    return report


def verify_sharpness(
    n: int,
    p: float,
    tol: float = 1e-6,
    seed: int = 0,
    starts: int = DEFAULT_STARTS,
    class_tol: float = CLASSIFY_TOL,
) -> OptimizationReport:
    """Check that the numerical supremum and its maximizer match the theorem.

    Raises :class:`SharpnessViolation` (with the report attached) when the
    value misses the closed form by more than ``tol`` or the maximizer is
    not in the predicted family.
    """
    r = constants.regime(n, p)
    if not r.resolved:
        raise BadParameter(f"(n={n}, p={p}) lies in the unresolved gap")
    family = r.constant.maximizer_family
    report = multistart_ascent(n, p, starts=starts, seed=seed)
    if class_tol != CLASSIFY_TOL:
        report.family = classify_maximizer(report.best_f, class_tol, prefer=family)
    if report.family.kind is not family:
        # maximizers need not be unique (at n = 3, p = 4 every (1, t, 0) attains the
        # constant); accept a final point of the predicted family tied with the best
        rows, values = report.extra["final_rows"], report.extra["final_values"]
        for i in np.flatnonzero(values >= report.best_value * (1 - TIE_RTOL)):
            label = classify_maximizer(rows[i], class_tol, prefer=family)
            if label.kind is family:
                report.extra["tied_maximizer"] = rows[i].copy()
                report.family = label
                break
    report.value_ok = report.abs_gap <= tol
    report.family_ok = report.family.kind is family
    if not (report.value_ok and report.family_ok):
        raise SharpnessViolation(
            f"n={n}, p={p}: best {report.best_value!r} vs closed form {report.closed_form!r}, "
            f"family {report.family} vs {r.constant.maximizer_family}",
            report,
        )
    return report


def scan_gap(n: int, steps: int, seed: int = 0, starts: int = DEFAULT_STARTS) -> list[GapRow]:
    """Numerical supremum across the unresolved p-interval, endpoints included."""
    if steps < 2:
        raise BadParameter(f"steps must be >= 2, got {steps}")
    lo, hi = constants.gap_interval(n)
    if not lo < hi:
        return []
    rows = []
    for p in np.linspace(lo, hi, steps):
        report = multistart_ascent(n, float(p), starts=starts, seed=seed)
        rows.append(GapRow(float(p), report.best_value, constants.candidate_max(n, float(p)).value, report.family))
    return rows
