import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from poincare_kn import constants as C
from poincare_kn import proofcheck as pc
from poincare_kn.errors import BadParameter
from poincare_kn.families import T_function


def test_check_report_pass_threshold():
    assert pc.CheckReport("x", 1, -1e-12, [0.0]).passed
    assert not pc.CheckReport("x", 1, -2e-12, [0.0]).passed


def test_binom_real_matches_integer_binomials():
    for a in range(0, 12):
        for l in range(0, 14):
            assert pc.binom_real(float(a), l) == pytest.approx(math.comb(a, l), abs=1e-9)
    # (1+y)^alpha series reproduces the power
    alpha, y = 0.37, 0.4
    series = sum(pc.binom_real(alpha, l) * y**l for l in range(80))
    assert series == pytest.approx((1 + y) ** alpha, rel=1e-13)


def test_perturbation_examples():
    assert pc.perturbation_margin(1.5, 2.0, 1.0, 0.4) > 0
    assert pc.perturbation_margin(1.5, 2.0, 1.0, 0.0) == 0.0
    rep = pc.check_perturbation(1.5, 100)
    assert rep.passed and rep.samples == 10**6
    with pytest.raises(BadParameter):
        pc.check_perturbation(2.0)


@given(st.floats(1.01, 1.99), st.floats(0.01, 10), st.floats(0.01, 0.99), st.floats(0, 0.999))
def test_perturbation_property(p, a, frac_b, frac_e):
    b = a * frac_b
    e = (a - b) / 2 * frac_e
    assert pc.perturbation_margin(p, a, b, e) >= -1e-13


def test_expression_p_lt_2_examples():
    assert pc.expression_p_lt_2_margin(1, 1.5, 0.0) == pytest.approx(0.0, abs=1e-12)
    assert pc.expression_p_lt_2_margin(1, 1.5, 1.0) == pytest.approx(0.0, abs=1e-12)
    rep = pc.check_expression_p_lt_2(3, 1.7, 10**4)
    assert rep.passed
    assert max(abs(v) for v in rep.details["endpoint_margins"]) <= 1e-12


def test_series_p_lt_2_examples():
    coeffs = pc.series_p_lt_2_coefficients(1, 1.5, 20)
    assert coeffs.shape == (20,) and np.all(coeffs < 0)
    assert pc.check_series_p_lt_2(1, 1.5, 20).passed
    assert pc.check_series_p_lt_2(5, 1.1, 20).passed
    assert pc.check_series_p_lt_2(2, 1.99, 50).passed


def test_vx_examples():
    rep = pc.check_vx_decreasing(7, 3.0)
    assert rep.passed and abs(rep.worst_margin) <= 1e-12  # constant in y when p = 3
    assert pc.check_vx_decreasing(4, 2.5, 100).passed
    assert pc.check_vx_decreasing(10, 2.9).passed
    with pytest.raises(BadParameter):
        pc.check_vx_decreasing(4, 3.2)


def test_mvt_examples():
    assert pc.check_mvt_bound(3, 2.0).worst_margin == pytest.approx(0.0, abs=1e-15)
    assert pc.check_mvt_bound(3, 3.0).worst_margin == pytest.approx(3 / 5 - 1 / 3, rel=1e-14)
    assert pc.check_mvt_bound(50, 2.5).passed


def test_G1_examples():
    top = 3 + C.delta1(3)
    rep = pc.check_G1_bound(3, top)
    assert rep.details["gate_margin"] == pytest.approx(0.0, abs=1e-14)
    assert rep.passed
    assert pc.check_G1_bound(3, 3.05).passed
    assert pc.check_G1_bound(20, 3 + C.delta1(20) / 2).passed
    # G(1) <= n C* is what the gate buys
    assert rep.details["G1"] <= rep.details["n_C_star"]
    with pytest.raises(BadParameter):
        pc.check_G1_bound(3, 3.08)
    assert pc.check_G1_bound(3, 3 + C.delta1(3, improved=True), improved=True).passed


def test_series_3plus_examples():
    rep = pc.check_series_3plus(3, 3.05, 30)
    coeffs = pc.series_3plus_coefficients(3, 3.05, 30)
    assert coeffs[0] > 0 and np.all(coeffs[1:] < 0)
    assert rep.details["sign_changes"] == 1 and rep.details["P_N(1)"] > 0
    assert rep.passed
    assert pc.check_series_3plus(10, 3 + C.delta1(10), 50).passed


def test_series_3plus_matches_direct_function():
    # the truncated series converges to the closed form on [0, 1)
    n, p = 6, 3.01
    nC = n * C.c_symmetric(n, p)
    s = (n - 2) / n
    x = np.linspace(0, 0.9, 10)
    direct = (nC * ((1 + x) ** (p - 2) - (1 - x) ** (p - 2)) - ((1 + s * x) ** (p - 2) - (1 - s * x) ** (p - 2))) / 2
    coeffs = pc.series_3plus_coefficients(n, p, 400)
    poly = np.zeros(2 * 400 + 2)
    poly[1::2] = coeffs
    np.testing.assert_allclose(np.polynomial.polynomial.polyval(x, poly), direct, atol=1e-12)


@pytest.mark.parametrize("r, k", [(2.0, 1), (3.5, 4), (6.0, 10)])
def test_proposition_p4_identity_at_one(r, k):
    assert pc.check_proposition_p4(r, k, 1.0) == 0.0


def test_proposition_p4_examples():
    assert pc.check_proposition_p4(2, 1, 2) == pytest.approx(0.0, abs=1e-12)
    assert pc.check_proposition_p4(3, 2, 2) == pytest.approx(12.0, rel=1e-14)
    with pytest.raises(BadParameter):
        pc.check_proposition_p4(1.5, 1, 2)
    with pytest.raises(BadParameter):
        pc.check_proposition_p4(3, 1, 0.5)
    rep = pc.check_proposition_p4_grid()
    assert rep.passed and rep.details["max_abs_margin_at_y1"] <= 1e-12


@given(st.floats(2, 6), st.integers(1, 10), st.floats(1, 50))
def test_proposition_p4_property(r, k, y):
    scale = (1 + k * y) ** r + (k + y) ** r
    assert pc.check_proposition_p4(r, k, y) / scale >= -1e-13


def test_T_monotone_examples():
    rep = pc.check_T_monotone(3, 3.0, 10**4)
    assert rep.passed and rep.details["direction"] == "increasing" and abs(rep.details["anchor"]) < 1e-14
    rep = pc.check_T_monotone(3, 5.0)
    assert rep.passed and rep.details["direction"] == "decreasing" and abs(rep.details["anchor"]) < 1e-14
    assert pc.check_T_monotone(6, 4.0).passed
    with pytest.raises(BadParameter):
        pc.check_T_monotone(3, 3.5)


def test_alpha_examples():
    rep = pc.check_alpha_nonneg(10, 3.8, 10**4)
    assert rep.passed and rep.details["alpha(0)"] == 0.0
    assert pc.check_alpha_nonneg(3, 4 - 1e-9).passed
    with pytest.raises(BadParameter):
        pc.check_alpha_nonneg(10, 3.0)


def test_dirac_vs_G_examples():
    assert pc.check_dirac_vs_G_bound(3, 4).worst_margin == pytest.approx(0.0, abs=1e-15)
    assert pc.check_dirac_vs_G_bound(3, 5).worst_margin == pytest.approx(7 / 27 - 17 / 81, rel=1e-13)
    assert pc.check_dirac_vs_G_bound(8, 6).passed
    with pytest.raises(BadParameter):
        pc.check_dirac_vs_G_bound(8, 3.9)


def test_failing_claim_is_detected():
    # with a constant below the sharp one, T >= 0 breaks and the report says so
    x = np.linspace(0, 1, 1000)
    t = T_function(3, 3.0, C.c_dirac(3, 3.0), x)
    rep = pc._report("T_with_wrong_constant", t, x)
    assert not rep.passed and rep.worst_location == [0.0]


def test_run_suite_subset_and_determinism():
    a = pc.run_suite(["proposition_p4"])
    b = pc.run_suite(["proposition_p4"])
    assert [r.worst_margin for r in a] == [r.worst_margin for r in b]
    assert [r.worst_location for r in a] == [r.worst_location for r in b]
    with pytest.raises((BadParameter, KeyError, ValueError)):
        pc.run_suite(["no_such_check"])


def test_run_suite_explicit_point():
    reports = pc.run_suite(["series_p_lt_2"], [3], [1.99])
    assert reports and all(r.passed for r in reports)
