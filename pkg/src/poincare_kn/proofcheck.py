"""Sampled verification of the auxiliary inequalities behind the sharp constants.

Each check evaluates one inequality (or monotonicity claim) on a fixed,
deterministic grid and reports the worst margin, oriented so that a
nonnegative margin means the claim holds.  Where the two sides grow like a
large power, margins are divided by the size of the dominant term so that
round-off does not masquerade as a violation; this is noted per check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import constants
from .constants import RegimeKind
from .core import abspow
from .errors import BadParameter
from .families import G_function, T_function, alpha_function

PASS_ATOL = 1e-12
DEFAULT_SAMPLES = 10_000
DEFAULT_TERMS = 50
# slack on the A_n inequality for the alpha check, so p = 4 - 1e-9 at n = 3 is admitted
ALPHA_GATE_ATOL = 1e-9


@dataclass
class CheckReport:
    name: str
    samples: int
    worst_margin: float
    worst_location: list[float]
    passed: bool = field(init=False)
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        self.passed = bool(self.worst_margin >= -PASS_ATOL)


def _report(name: str, margins: np.ndarray, locations: np.ndarray, details=None) -> CheckReport:
    """Reduce a grid of margins to its minimum; locations has one row per margin."""
    margins = np.asarray(margins, dtype=float).ravel()
    locations = np.asarray(locations, dtype=float).reshape(margins.size, -1)
    i = int(np.argmin(margins))
    return CheckReport(name, margins.size, float(margins[i]), locations[i].tolist(), details or {})


def combine(name: str, reports: list[CheckReport]) -> CheckReport:
    """Fold several reports into one, keeping the worst."""
    worst = min(reports, key=lambda r: r.worst_margin)
    details = {"cases": len(reports), "worst_case": worst.name}
    changes = {r.details["sign_changes"] for r in reports if "sign_changes" in r.details}
    if changes:
        details["sign_changes"] = sorted(changes)
    return CheckReport(name, sum(r.samples for r in reports), worst.worst_margin, worst.worst_location, details)


def binom_real(alpha: float, l: int) -> float:
    """Generalized binomial coefficient alpha choose l, by running product."""
    out = 1.0
    for j in range(l):
        out *= (alpha - j) / (j + 1)
    return out


# -- 1 < p < 2 ----------------------------------------------------------------

def perturbation_margin(p: float, a, b, e):
    """(a-e)^(p-1) + (b+e)^(p-1) - a^(p-1) - b^(p-1), grouped so it is exactly 0 at e = 0."""
    q = p - 1
    a, b, e = (np.asarray(v, dtype=float) for v in (a, b, e))
    out = (abspow(a - e, q) - abspow(a, q)) + (abspow(b + e, q) - abspow(b, q))
    return float(out) if out.ndim == 0 else out


def check_perturbation(p: float, grid=100) -> CheckReport:
    """(a-e)^(p-1) + (b+e)^(p-1) >= a^(p-1) + b^(p-1) for a > b > 0, 0 <= e < (a-b)/2.

    ``grid`` is a point count per axis, or an (a, b, e) triple of counts.
    Sweeps a in (0, 10], b = a*j/nb, e = (a-b)/2 * k/ne.
    """
    if not 1 < p < 2:
        raise BadParameter(f"perturbation check needs 1 < p < 2, got {p}")
    na, nb, ne = (grid, grid, grid) if np.isscalar(grid) else grid
    a = np.linspace(10.0 / na, 10.0, na)[:, None, None]
    b = a * (np.arange(1, nb + 1) / (nb + 1))[None, :, None]
    e = (a - b) / 2 * (np.arange(ne) / ne)[None, None, :]
    a, b, e = np.broadcast_arrays(a, b, e)
    margin = perturbation_margin(p, a, b, e)
    return _report(f"perturbation(p={p:g})", margin, np.stack([a, b, e], axis=-1))


def expression_p_lt_2_margin(k: int, p: float, x):
    """RHS - LHS of the one-variable inequality for odd n = 2k+1."""
    x = np.asarray(x, dtype=float)
    q = p - 1
    K = k**q + (k + 1) ** q
    lhs = (2 * k + 1) * (abspow(k + 1 - x, q) + abspow(k + x, q))
    rhs = K * (abspow(1 - x, q) + abspow(x, q) + 2 * k)
    return rhs - lhs


def check_expression_p_lt_2(k: int, p: float, samples: int = DEFAULT_SAMPLES) -> CheckReport:
    """(2k+1)((k+1-x)^(p-1) + (k+x)^(p-1)) <= (k^(p-1) + (k+1)^(p-1))((1-x)^(p-1) + x^(p-1) + 2k) on [0, 1].

    Both endpoints are identities; their margins are reported as ``-|margin|``
    so that any drift there counts as a failure.
    """
    if k < 1 or not 1 < p < 2:
        raise BadParameter(f"need k >= 1 and 1 < p < 2, got k={k}, p={p}")
    x = np.linspace(0.0, 1.0, samples)
    margin = expression_p_lt_2_margin(k, p, x)
    ends = margin[[0, -1]]
    margin[[0, -1]] = -np.abs(ends)
    return _report(
        f"expression_p_lt_2(k={k}, p={p:g})",
        margin,
        x,
        {"endpoint_margins": ends.tolist()},
    )


def series_p_lt_2_coefficients(k: int, p: float, N: int) -> np.ndarray:
    """Coefficients of u^(2l), l = 1..N, in the expansion of RHS - LHS around x = 1/2."""
    q = p - 1
    K = k**q + (k + 1) ** q
    return np.array(
        [binom_real(q, 2 * l) * 2.0 ** (2 * l + 2 - p) * (K - (2 * k + 1) ** (p - 2 * l)) for l in range(1, N + 1)]
    )


def check_series_p_lt_2(k: int, p: float, N: int = DEFAULT_TERMS) -> CheckReport:
    """Every coefficient of u^(2l), l >= 1, is negative.  The l = 0 term is not part of the claim."""
    if k < 1 or not 1 < p < 2 or N < 1:
        raise BadParameter(f"need k >= 1, 1 < p < 2, N >= 1; got k={k}, p={p}, N={N}")
    coeffs = series_p_lt_2_coefficients(k, p, N)
    # strict negativity: a zero coefficient fails
    margin = np.where(coeffs < 0, -coeffs, -1.0)
    return _report(f"series_p_lt_2(k={k}, p={p:g}, N={N})", margin, np.arange(1, N + 1))


# -- 2 < p <= 3 + delta1 --------------------------------------------------------

def check_vx_decreasing(n: int, p: float, samples: int = 100) -> CheckReport:
    """v_x(y) = (y + s)^(p-2) - (y - s)^(p-2), s = (n-2)x/n, is non-increasing in y on [(n-2)/n, 1].

    The margin is min over x and over pairs y1 < y2 of v_x(y1) - v_x(y2),
    computed exactly via a running minimum rather than all pairs.
    """
    if not 2 < p <= 3:
        raise BadParameter(f"v_x check needs 2 < p <= 3, got {p}")
    x = np.linspace(0.0, 1.0, samples)[:, None]
    y = np.linspace((n - 2) / n, 1.0, samples)[None, :]
    s = (n - 2) / n * x
    v = abspow(y + s, p - 2) - abspow(y - s, p - 2)
    # for each y2, the smallest v(y1) with y1 < y2
    prefix_min = np.minimum.accumulate(v, axis=1)[:, :-1]
    margin = prefix_min - v[:, 1:]
    xs, ys = np.broadcast_arrays(x, y[:, 1:])
    return _report(f"vx_decreasing(n={n}, p={p:g})", margin, np.stack([xs, ys], axis=-1))


def check_mvt_bound(n: int, p: float) -> CheckReport:
    """((n-2)/n)^(p-2) <= n / (n - 2 + 2^(p-1)) for 2 <= p <= 3."""
    if not 2 <= p <= 3:
        raise BadParameter(f"mean-value bound needs 2 <= p <= 3, got {p}")
    margin = n / (n - 2 + 2 ** (p - 1)) - ((n - 2) / n) ** (p - 2)
    return _report(f"mvt_bound(n={n}, p={p:g})", [margin], [[n, p]])


def g1_gate_margin(n: int, p: float, improved: bool = False) -> float:
    """Slack in (n-1)^(p-3) - 1 <= (sqrt(n^2+4) - n) / (4n); ``improved`` uses n-1 (or 4 at n = 3)."""
    denom = (4.0 if n == 3 else n - 1.0) if improved else 4.0 * n
    return 4.0 / (math.sqrt(n * n + 4.0) + n) / denom - math.expm1((p - 3) * math.log(n - 1))


def check_G1_bound(n: int, p: float, improved: bool = False) -> CheckReport:
    """((n-1)^(p-2) - 1)(2^(p-1) + n - 2) <= n^(p-1), i.e. G(1) <= n C*, plus the gate on p.

    The main margin is relative (divided by n^(p-1)).  ``improved`` admits p
    up to the larger threshold ``delta1(n, improved=True)``.
    """
    upper = 3 + constants.delta1(n, improved=improved)
    if not 3 < p <= upper:
        raise BadParameter(f"G(1) bound needs 3 < p <= {upper}, got {p}")
    main = 1.0 - ((n - 1) ** (p - 2) - 1) * (2 ** (p - 1) + n - 2) / n ** (p - 1)
    gate = g1_gate_margin(n, p, improved)
    g1 = G_function(n, p, 1.0)
    return _report(
        f"G1_bound(n={n}, p={p:g}{', improved' if improved else ''})",
        [main, gate],
        [[n, p, 0], [n, p, 1]],
        {"main_margin": main, "gate_margin": gate, "G1": g1, "n_C_star": n * constants.c_symmetric(n, p)},
    )


def series_3plus_coefficients(n: int, p: float, N: int) -> np.ndarray:
    """Coefficients of x^(2k+1), k = 0..N, of n C* ((1+x)^(p-2) - (1-x)^(p-2)) - ((1+s)^(p-2) - (1-s)^(p-2)), halved."""
    nC = n * constants.c_symmetric(n, p)
    r = (n - 2) / n
    return np.array([binom_real(p - 2, 2 * k + 1) * (nC - r ** (2 * k + 1)) for k in range(N + 1)])


def _sign_changes(coeffs: np.ndarray) -> int:
    signs = np.sign(coeffs[coeffs != 0])
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def check_series_3plus(n: int, p: float, N: int = DEFAULT_TERMS, samples: int = DEFAULT_SAMPLES) -> CheckReport:
    """Truncated odd series P_N: first coefficient positive, all others negative,
    exactly one sign change, and P_N >= 0 on [0, 1].
    """
    upper = 3 + constants.delta1(n)
    if not 3 < p <= upper or N < 2:
        raise BadParameter(f"series check needs 3 < p <= {upper} and N >= 2, got p={p}, N={N}")
    coeffs = series_3plus_coefficients(n, p, N)
    x = np.linspace(0.0, 1.0, samples)
    poly = np.zeros(2 * N + 2)
    poly[1::2] = coeffs
    values = np.polynomial.polynomial.polyval(x, poly)
    changes = _sign_changes(coeffs)
    margins = np.concatenate(
        [
            [coeffs[0]],
            -coeffs[1:],
            values,
            [0.0 if changes == 1 else -1.0],
        ]
    )
    locations = np.concatenate([[-1.0], -np.arange(2, N + 2, dtype=float), x, [-(N + 2.0)]])
    report = _report(f"series_3plus(n={n}, p={p:g}, N={N})", margins, locations)
    report.details = {"sign_changes": changes, "P_N(1)": float(values[-1]), "first_coefficient": float(coeffs[0])}
    return report


# -- p >= 4 and A_n -----------------------------------------------------------

def proposition_p4_margin(r: float, k: int, y):
    """(1+ky)^r - 1 - (ky)^r - ((k+y)^r - k^r - y^r), grouped so it is exactly 0 at y = 1."""
    y = np.asarray(y, dtype=float)
    ky = k * y
    out = (abspow(1 + ky, r) - abspow(k + y, r)) + (k**r - abspow(ky, r)) + (abspow(y, r) - 1.0)
    return float(out) if out.ndim == 0 else out


def check_proposition_p4(r: float, k: int, y: float) -> float:
    """Margin of (1+ky)^r - 1 - (ky)^r >= (k+y)^r - k^r - y^r for r >= 2, k >= 1, y >= 1."""
    if r < 2 or k < 1 or int(k) != k or y < 1:
        raise BadParameter(f"need r >= 2, integer k >= 1, y >= 1; got r={r}, k={k}, y={y}")
    return proposition_p4_margin(r, k, y)


def check_proposition_p4_grid(rs=None, ks=range(1, 11), ys=None) -> CheckReport:
    """Sweep of the proposition; margins are relative to (1+ky)^r + (k+y)^r."""
    rs = np.arange(2.0, 6.01, 0.5) if rs is None else np.asarray(rs, dtype=float)
    ys = np.geomspace(1.0, 50.0, 100) if ys is None else np.asarray(ys, dtype=float)
    R, K, Y = np.meshgrid(rs, np.asarray(list(ks), dtype=float), ys, indexing="ij")
    margin = (abspow(1 + K * Y, R) - abspow(K + Y, R)) + (K**R - abspow(K * Y, R)) + (abspow(Y, R) - 1.0)
    scale = abspow(1 + K * Y, R) + abspow(K + Y, R)
    at_one = margin[..., 0] if ys[0] == 1.0 else np.zeros(1)
    return _report(
        "proposition_p4",
        margin / scale,
        np.stack([R, K, Y], axis=-1),
        {"max_abs_margin_at_y1": float(np.abs(at_one).max())},
    )


def check_T_monotone(n: int, p: float, samples: int = DEFAULT_SAMPLES) -> CheckReport:
    """T increases on [0, 1] from T(0) = 0 (symmetric regime) or decreases to T(1) = 0 (Dirac regime).

    Margins are relative to C (2^p + (n-2) 2^(p-1)), the size of T's largest term.
    """
    reg = constants.regime(n, p)
    if reg.kind not in (RegimeKind.P_2_3DELTA1, RegimeKind.AN_RESOLVED):
        raise BadParameter(f"T monotonicity applies to the symmetric or Dirac regime, not {reg.kind}")
    C = reg.constant.value
    x = np.linspace(0.0, 1.0, samples)
    T = T_function(n, p, C, x)
    # largest term of T, at x = 1
    scale = C * (2.0**p + (n - 2) * 2.0 ** (p - 1))
    increasing = reg.kind is RegimeKind.P_2_3DELTA1
    steps = np.diff(T) if increasing else -np.diff(T)
    anchor = T[0] if increasing else T[-1]
    margins = np.concatenate([steps, [-abs(anchor)]]) / scale
    locations = np.concatenate([x[1:], [x[0] if increasing else x[-1]]])
    report = _report(f"T_monotone(n={n}, p={p:g})", margins, locations)
    report.details = {"direction": "increasing" if increasing else "decreasing", "anchor": float(anchor)}
    return report


def check_alpha_nonneg(n: int, p: float, samples: int = DEFAULT_SAMPLES) -> CheckReport:
    """alpha(0) = 0, alpha is non-decreasing (finite differences) and nonnegative on [0, 1].

    Margins are relative to n (2 - 2/n)^(p-2), the largest term of alpha.
    """
    if not (3 <= p < 4 and constants.in_A_n(n, p, atol=ALPHA_GATE_ATOL)):
        raise BadParameter(f"alpha check needs p in A_n with 3 <= p < 4, got n={n}, p={p}")
    x = np.linspace(0.0, 1.0, samples)
    a = alpha_function(n, p, x)
    scale = n * (2.0 - 2.0 / n) ** (p - 2)
    margins = np.concatenate([np.diff(a), a, [-abs(a[0])]]) / scale
    locations = np.concatenate([x[1:], x, [0.0]])
    report = _report(f"alpha_nonneg(n={n}, p={p:g})", margins, locations)
    report.details = {"alpha(0)": float(a[0]), "alpha(1)": float(a[-1])}
    return report


def check_dirac_vs_G_bound(n: int, p: float) -> CheckReport:
    """((n-1)^(p-2) - 1) / n^(p-2) >= (1 + (n-1)^(p-1)) / n^(p-1) for p >= 4."""
    if p < 4 or n < 3:
        raise BadParameter(f"need p >= 4 and n >= 3, got n={n}, p={p}")
    ratio = (n - 1) / n
    margin = ratio ** (p - 2) - n ** -(p - 2) - n ** -(p - 1) - ratio ** (p - 1)
    return _report(f"dirac_vs_G_bound(n={n}, p={p:g})", [margin], [[n, p]])


# -- default grids --------------------------------------------------------------

DEFAULT_N = tuple(range(3, 21))
DEFAULT_K = tuple(range(1, 11))
P_PER_INTERVAL = 20
P_MAX = 10.0


def _open(lo: float, hi: float, m: int = P_PER_INTERVAL) -> np.ndarray:
    return np.linspace(lo, hi, m + 2)[1:-1]


def _half_open_right(lo: float, hi: float, m: int = P_PER_INTERVAL) -> np.ndarray:
    """m points in (lo, hi]."""
    return np.linspace(lo, hi, m + 1)[1:]


def _p_grid(name: str, n: int) -> np.ndarray:
    """Default exponents for one check at one n; 20 per valid interval."""
    upper = 3 + constants.delta1(n)
    a_n = constants.a_n_threshold(n)
    dirac_mid = np.linspace(a_n, 4.0, P_PER_INTERVAL + 1)[:-1] if a_n < 4 else np.empty(0)
    dirac_high = np.linspace(4.0, P_MAX, P_PER_INTERVAL)
    if name in ("perturbation", "expression_p_lt_2", "series_p_lt_2"):
        return _open(1.0, 2.0)
    if name in ("vx_decreasing", "mvt_bound"):
        return _half_open_right(2.0, 3.0)
    if name in ("G1_bound", "series_3plus"):
        return _half_open_right(3.0, upper)
    if name == "G1_bound_improved":
        return _half_open_right(3.0, 3 + constants.delta1(n, improved=True))
    if name == "T_monotone":
        return np.concatenate([_half_open_right(2.0, upper), dirac_mid, dirac_high])
    if name == "alpha_nonneg":
        return dirac_mid if n > 3 else np.array([4 - 1e-9])
    if name == "dirac_vs_G_bound":
        return dirac_high
    raise KeyError(name)


def _valid(name: str, n: int, p: float) -> bool:
    try:
        if name in ("perturbation", "expression_p_lt_2", "series_p_lt_2"):
            return 1 < p < 2
        if name == "vx_decreasing":
            return 2 < p <= 3
        if name == "mvt_bound":
            return 2 <= p <= 3
        if name in ("G1_bound", "series_3plus"):
            return 3 < p <= 3 + constants.delta1(n)
        if name == "G1_bound_improved":
            return 3 < p <= 3 + constants.delta1(n, improved=True)
        if name == "T_monotone":
            return constants.regime(n, p).kind in (RegimeKind.P_2_3DELTA1, RegimeKind.AN_RESOLVED)
        if name == "alpha_nonneg":
            return 3 <= p < 4 and constants.in_A_n(n, p, atol=ALPHA_GATE_ATOL)
        if name == "dirac_vs_G_bound":
            return p >= 4
    except BadParameter:
        return False
    raise KeyError(name)


def _run_one(name: str, n: int, p: float, ks=DEFAULT_K) -> list[CheckReport]:
    if name == "perturbation":
        return [check_perturbation(p)]
    if name == "expression_p_lt_2":
        return [check_expression_p_lt_2(k, p) for k in ks]
    if name == "series_p_lt_2":
        return [check_series_p_lt_2(k, p) for k in ks]
    if name == "vx_decreasing":
        return [check_vx_decreasing(n, p)]
    if name == "mvt_bound":
        return [check_mvt_bound(n, p)]
    if name == "G1_bound":
        return [check_G1_bound(n, p)]
    if name == "G1_bound_improved":
        return [check_G1_bound(n, p, improved=True)]
    if name == "series_3plus":
        return [check_series_3plus(n, p)]
    if name == "T_monotone":
        return [check_T_monotone(n, p)]
    if name == "alpha_nonneg":
        return [check_alpha_nonneg(n, p)]
    if name == "dirac_vs_G_bound":
        return [check_dirac_vs_G_bound(n, p)]
    raise KeyError(name)


CHECK_NAMES = (
    "perturbation",
    "expression_p_lt_2",
    "series_p_lt_2",
    "vx_decreasing",
    "mvt_bound",
    "G1_bound",
    "G1_bound_improved",
    "series_3plus",
    "proposition_p4",
    "T_monotone",
    "alpha_nonneg",
    "dirac_vs_G_bound",
)

# checks whose sweep does not depend on n
_N_FREE = ("perturbation", "expression_p_lt_2", "series_p_lt_2")


def run_suite(only=None, n_values=None, p_values=None) -> list[CheckReport]:
    """Run every check (or those named in ``only``) over its grid.

    Without ``n_values``/``p_values`` the default grids are used.  Explicit
    exponents are filtered to those each check accepts; for the 1 < p < 2
    checks an explicit n selects k = n // 2 (odd n = 2k + 1).
    """
    names = CHECK_NAMES if only is None else tuple(only)
    unknown = set(names) - set(CHECK_NAMES)
    if unknown:
        raise KeyError(f"unknown checks: {sorted(unknown)}")
    ns = DEFAULT_N if n_values is None else tuple(int(n) for n in n_values)
    out = []
    for name in names:
        if name == "proposition_p4":
            out.append(check_proposition_p4_grid())
            continue
        reports = []
        for n in ns if name not in _N_FREE or n_values is not None else (3,):
            ps = _p_grid(name, n) if p_values is None else [p for p in p_values if _valid(name, n, p)]
            ks = (max(1, n // 2),) if n_values is not None else DEFAULT_K
            for p in ps:
                reports.extend(_run_one(name, n, float(p), ks))
        if reports:
            out.append(combine(name, reports))
    return out
