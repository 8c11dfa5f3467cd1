"""The ten acceptance criteria, each at its stated tolerance and runtime limit.

Every test appends one PASS/FAIL line to the acceptance summary printed at
the end of the pytest run.
"""
import math
import time
from contextlib import contextmanager
from fractions import Fraction

import numpy as np
import pytest

from poincare_kn import constants as C
from poincare_kn import core, families as F
from poincare_kn import optimizer as opt
from poincare_kn import proofcheck as pc
from poincare_kn.families import Family


@contextmanager
def criterion(log, number, title, limit):
    """Time the body, then log and assert both its outcome and the runtime limit."""
    state = {"detail": ""}
    start = time.perf_counter()
    try:
        yield state
    except AssertionError as exc:
        elapsed = time.perf_counter() - start
        log.append(f"FAIL  {number:>2}. {title} ({elapsed:.2f}s / {limit}s): {exc}")
        raise
    elapsed = time.perf_counter() - start
    ok = elapsed < limit
    log.append(f"{'PASS' if ok else 'FAIL'}  {number:>2}. {title} ({elapsed:.2f}s / {limit}s) {state['detail']}".rstrip())
    assert ok, f"runtime {elapsed:.2f}s exceeds {limit}s"


def test_01_p2_identity(acceptance_log):
    with criterion(acceptance_log, 1, "p=2 identity", 1) as st:
        worst = 0.0
        for n in range(3, 13):
            X = np.random.default_rng(1000 + n).normal(size=(1000, n))
            rel = np.abs(core.rayleigh_quotient(X, 2.0) * n - 1.0)
            worst = max(worst, float(rel.max()))
        st["detail"] = f"max rel err {worst:.1e}"
        assert worst <= 1e-12, f"max relative error {worst}"


SYM_P = (2.5, 3.0, None)  # None stands for 3 + delta1(n)/2


def _verify_all(points, family, formula):
    worst = 0.0
    for n, p in points:
        rep = opt.verify_sharpness(n, p, tol=1e-6, seed=0)
        assert rep.closed_form == pytest.approx(formula(n, p), rel=1e-14)
        assert rep.family.kind is family, f"n={n} p={p}: {rep.family}"
        worst = max(worst, rep.abs_gap)
        yield n, p, rep
    assert worst <= 1e-6


def test_02_two_level_regime(acceptance_log):
    with criterion(acceptance_log, 2, "regime (1,2): two-level", 30) as st:
        points = [(n, p) for n in range(3, 9) for p in (1.2, 1.5, 1.8)]
        gaps = [rep.abs_gap for _, _, rep in _verify_all(points, Family.BALANCED_TWO_LEVEL, C.c_two_level)]
        grid_err = 0.0
        for n in range(3, 6):
            for p in (1.2, 1.5, 1.8):
                grid = opt.grid_search(n, p, 200)
                grid_err = max(grid_err, abs(grid.best_value - C.c_two_level(n, p)))
        st["detail"] = f"max |gap| {max(gaps):.1e}, grid oracle err {grid_err:.1e}"
        assert grid_err <= 1e-3


def test_03_symmetric_regime(acceptance_log):
    with criterion(acceptance_log, 3, "symmetric regime", 30) as st:
        points = [(n, 3 + C.delta1(n) / 2 if p is None else p) for n in range(3, 9) for p in SYM_P]
        worst_mid, worst_gap = 0.0, 0.0
        for n, p, rep in _verify_all(points, Family.SYMMETRIC_THREE_LEVEL_MIDPOINT, C.c_symmetric):
            assert rep.closed_form == pytest.approx(1 / (2 ** (p - 1) + n - 2), rel=1e-14)
            worst_mid = max(worst_mid, abs(rep.family.middle - 0.5))
            worst_gap = max(worst_gap, rep.abs_gap)
        st["detail"] = f"max |gap| {worst_gap:.1e}, max |middle - 1/2| {worst_mid:.1e}"
        assert worst_mid <= 1e-4


def test_04_dirac_regime(acceptance_log):
    with criterion(acceptance_log, 4, "Dirac regime", 30) as st:
        assert C.in_A_n(10, 3.9)
        points = [(n, p) for n in range(3, 9) for p in (4.0, 5.0, 8.0)] + [(10, 3.9)]
        gaps = []
        for n, p, rep in _verify_all(points, Family.DIRAC_DELTA, C.c_dirac):
            assert rep.closed_form == pytest.approx((1 + (n - 1) ** (p - 1)) / n**p, rel=1e-13)
            gaps.append(rep.abs_gap)
        st["detail"] = f"max |gap| {max(gaps):.1e}"


def test_05_p1_bound(acceptance_log):
    with criterion(acceptance_log, 5, "p=1 bound and two-level equality", 5) as st:
        worst_slack, worst_eq = math.inf, 0.0
        for n in range(3, 11):
            X = np.random.default_rng(2000 + n).normal(size=(10_000, n))
            slack = 2 / n * core.p_variation(X, 1.0) + 1e-12 - core.deviation_power(X, 1.0)
            worst_slack = min(worst_slack, float(slack.min()))
            for k in range(1, n):
                f = F.two_level(n, k)
                worst_eq = max(worst_eq, abs(core.deviation_power(f, 1.0) - 2 / n * core.p_variation(f, 1.0)))
        st["detail"] = f"min slack {worst_slack:.1e}, max equality err {worst_eq:.1e}"
        assert worst_slack >= 0
        assert worst_eq <= 1e-12


def test_06_threshold_asymptotics(acceptance_log):
    with criterion(acceptance_log, 6, "threshold asymptotics", 1) as st:
        worst1, worst2 = 0.0, 0.0
        for e in range(1, 7):
            n = 10**e
            r1 = abs(C.delta1(n) * 2 * n * n * math.log(n) - 1) / (10 / n)
            r2 = abs(C.delta2(n) - 2 / n) / (10 / n**2)
            worst1, worst2 = max(worst1, r1), max(worst2, r2)
        st["detail"] = f"worst ratio to bound: delta1 {worst1:.2f}, delta2 {worst2:.2f}"
        assert worst1 <= 1 and worst2 <= 1


def test_07_stationarity(acceptance_log):
    with criterion(acceptance_log, 7, "stationarity", 1) as st:
        worst = 0.0
        for n in range(3, 13):
            for p in (2.5, 3.0, 3 + C.delta1(n) / 2):
                worst = max(worst, abs(opt.stationarity_residual(F.three_level(n, 0.0), p, C.c_symmetric(n, p))))
            for p in (4.0, 5.0, 8.0) + ((3.9,) if C.in_A_n(n, 3.9) else ()):
                worst = max(worst, abs(opt.stationarity_residual(F.dirac(n), p, C.c_dirac(n, p))))
        # hand anchors: exactly zero in rational arithmetic, zero to rounding in floating point
        exact = [
            Fraction(1, 5) * (Fraction(1, 2) ** 2 * 2 + 1 + 1) - 2 * Fraction(1, 2) ** 2,
            Fraction(17, 243) * 3 - (Fraction(2, 3) ** 4 + Fraction(1, 3) ** 4),
        ]
        assert exact == [0, 0]
        a1 = opt.stationarity_residual((1, 0.5, 0), 3, 1 / 5)
        a2 = opt.stationarity_residual((1, 0, 0), 5, 17 / 243)
        st["detail"] = f"max |residual| {worst:.1e}, anchors {a1:.1e}, {a2:.1e}"
        assert worst <= 1e-8
        assert a1 == 0.0 and abs(a2) <= 4 * np.finfo(float).eps


def test_08_proofcheck_suite(acceptance_log):
    with criterion(acceptance_log, 8, "proof-check suite", 60) as st:
        reports = pc.run_suite()
        assert {r.name for r in reports} == set(pc.CHECK_NAMES)
        failed = [(r.name, r.worst_margin) for r in reports if not r.passed]
        assert not failed, f"failed checks {failed}"
        prop = next(r for r in reports if r.name == "proposition_p4")
        assert prop.details["max_abs_margin_at_y1"] <= 1e-12
        series = next(r for r in reports if r.name == "series_3plus")
        assert series.details["sign_changes"] == [1]
        st["detail"] = f"{len(reports)} checks, worst margin {min(r.worst_margin for r in reports):.1e}"


def test_09_lemma_inequality(acceptance_log):
    with criterion(acceptance_log, 9, "lemma inequality", 60) as st:
        points = [(n, p) for n in range(3, 9) for p in (1.2, 1.5, 1.8, 2.5, 3.0, 3 + C.delta1(n) / 2, 4.0, 5.0, 8.0)]
        points.append((10, 3.9))
        worst = -math.inf
        for i, (n, p) in enumerate(points):
            rng = np.random.default_rng(3000 + i)
            # half uniform, half Beta(0.2, 0.2) to crowd the extremes where maximizers live
            X = np.vstack([rng.random((50_000, n)), rng.beta(0.2, 0.2, (50_000, n))])
            X = -np.sort(-X, axis=1)
            X = X[~core.is_constant(X)]
            bound = C.regime(n, p).constant.value
            worst = max(worst, float(np.max(F.lemma_quotient(X, p)) - bound))
        st["detail"] = f"{len(points)} (n,p) pairs, max excess {worst:.1e}"
        assert worst <= 1e-10


def test_10_gap_scan(acceptance_log):
    with criterion(acceptance_log, 10, "gap scan sanity", 60) as st:
        rows = opt.scan_gap(3, 50, seed=0)
        lo, hi = C.gap_interval(3)
        assert len(rows) == 50 and rows[0].p == lo and rows[-1].p == hi
        worst = min(r.best_value - r.candidate_max_value for r in rows)
        left = abs(rows[0].best_value - C.c_symmetric(3, lo))
        right = abs(rows[-1].best_value - C.c_dirac(3, hi))
        st["detail"] = f"min(sup - candidate) {worst:.1e}, endpoint errors {left:.1e}, {right:.1e}"
        assert worst >= -1e-6
        assert left <= 1e-4 and right <= 1e-4
