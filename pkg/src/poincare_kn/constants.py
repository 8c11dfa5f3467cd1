"""Closed-form constants, the p-thresholds, and the regime classifier.

Three explicit functions give lower bounds for the sharp constant C_{n,p}:

* balanced two-level:  (floor(n/2)^(p-1) + ceil(n/2)^(p-1)) / n^p
* symmetric three-level:  1 / (2^(p-1) + n - 2)
* Dirac delta:  (1 + (n-1)^(p-1)) / n^p

Each is sharp on part of the p-axis.  ``regime`` maps (n, p) to the piece
where the sharp value is known, or to ``Gap`` where it is not.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from scipy.optimize import brentq

from .errors import BadParameter, DomainError
from .families import Family

# relative slack for ties between candidate constants and for the
# non-strict inequality defining A_n (n = 3, p = 4 is an exact equality)
TIE_RTOL = 1e-13


class Formula(enum.Enum):
    TWO_LEVEL = "TwoLevel"
    SYMMETRIC = "Symmetric"
    DIRAC = "Dirac"

    def __str__(self):
        return self.value


class RegimeKind(enum.Enum):
    P1 = "P1"
    P_1_2 = "P_1_2"
    P2 = "P2"
    P_2_3DELTA1 = "P_2_3delta1"
    GAP = "Gap"
    AN_RESOLVED = "AnResolved"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class SharpConstant:
    value: float
    formula: Formula
    maximizer_family: Family


@dataclass(frozen=True)
class Regime:
    kind: RegimeKind
    constant: SharpConstant | None
    p_bounds: tuple[float, float]

    @property
    def resolved(self) -> bool:
        return self.constant is not None


def _check(n: int, p: float | None = None, p_min: float = 1.0) -> None:
    if int(n) != n or n < 3:
        raise BadParameter(f"n must be an integer >= 3, got {n}")
    if p is not None and (not math.isfinite(p) or p < p_min):
        raise BadParameter(f"p must be finite and >= {p_min}, got {p}")


def c_two_level(n: int, p: float) -> float:
    _check(n, p)
    lo, hi = n // 2, n - n // 2
    log_n = math.log(n)
    return math.exp((p - 1) * math.log(lo) - p * log_n) + math.exp((p - 1) * math.log(hi) - p * log_n)


def c_symmetric(n: int, p: float) -> float:
    _check(n, p)
    if p - 1 > 1023:
        return 0.0
    return 1.0 / (2.0 ** (p - 1) + n - 2)


def c_dirac(n: int, p: float) -> float:
    _check(n, p)
    q = p - 1
    log_m = math.log(n - 1)
    return math.exp(math.log1p(math.exp(-q * log_m)) + q * log_m - p * math.log(n))


_FAMILY_OF = {
    Formula.TWO_LEVEL: Family.BALANCED_TWO_LEVEL,
    Formula.SYMMETRIC: Family.SYMMETRIC_THREE_LEVEL_MIDPOINT,
    Formula.DIRAC: Family.DIRAC_DELTA,
}


def candidate_max(n: int, p: float) -> SharpConstant:
    """Largest of the three explicit lower bounds.

    Near-ties go to the formula ``regime`` would use: TwoLevel first when
    p < 2 (at n = 3 it coincides with Dirac), otherwise Symmetric, then
    Dirac, then TwoLevel.
    """
    values = {
        Formula.SYMMETRIC: c_symmetric(n, p),
        Formula.DIRAC: c_dirac(n, p),
        Formula.TWO_LEVEL: c_two_level(n, p),
    }
    if p < 2:
        values = {Formula.TWO_LEVEL: values.pop(Formula.TWO_LEVEL), **values}
    best = max(values.values())
    for formula, value in values.items():
        if value >= best * (1 - TIE_RTOL):
            return SharpConstant(value, formula, _FAMILY_OF[formula])
    raise AssertionError("unreachable")


def delta1(n: int, improved: bool = False) -> float:
    """Width of the extension of the symmetric regime past p = 3.

    Default: log((sqrt(n^2+4) + 3n) / (4n)) / log(n-1).  With ``improved`` the
    denominator 4n becomes n-1 (n >= 4) or 4 (n = 3).
    """
    _check(n)
    root_gap = 4.0 / (math.sqrt(n * n + 4.0) + n)  # sqrt(n^2+4) - n, without cancellation
    if improved:
        denom = 4.0 if n == 3 else n - 1.0
    else:
        denom = 4.0 * n
    return math.log1p(root_gap / denom) / math.log(n - 1)


def delta2(n: int) -> float:
    """(2 log n - log(n^2-2n-1)) / (log n - log(n-1)) - 2."""
    _check(n)
    if n * n - 2 * n - 1 <= 0:
        raise DomainError(f"n^2 - 2n - 1 must be positive, n = {n}")
    return math.log1p(-(2.0 * n + 1.0) / (n * n)) / math.log1p(-1.0 / n) - 2.0


def _a_n_gap(n: int, p: float) -> float:
    # (n-2)/n - (1 + (n-1)^(p-1)) / n^(p-1), written as a sum of two decaying powers
    q = p - 1
    return (n - 2) / n - (math.exp(-q * math.log(n)) + math.exp(q * math.log1p(-1.0 / n)))


def in_A_n(n: int, p: float, atol: float = 0.0) -> bool:
    """Membership of p in A_n = {x > 0 : (n-2)/n >= (1 + (n-1)^(x-1)) / n^(x-1)}.

    ``atol`` widens the set by an absolute slack on the defining inequality.
    """
    _check(n)
    if not p > 0:
        raise BadParameter(f"p must be positive, got {p}")
    return _a_n_gap(n, p) >= -(TIE_RTOL * (n - 2) / n + atol)


def a_n_threshold(n: int) -> float:
    """Left endpoint of A_n, i.e. the smallest p with in_A_n(n, p).

    It always lies in (3, 4]; for n = 3 it is exactly 4.
    """
    _check(n)
    if n == 3:
        return 4.0
    return brentq(lambda x: _a_n_gap(n, x), 3.0, 5.0, xtol=1e-15, rtol=1e-15)


def gap_interval(n: int) -> tuple[float, float]:
    """The p-interval (3 + delta1, inf A_n) not covered by the theorem."""
    return 3.0 + delta1(n), a_n_threshold(n)


def regime(n: int, p: float) -> Regime:
    _check(n, p)
    if p == 1:
        c = SharpConstant(2.0 / n, Formula.TWO_LEVEL, Family.ANY_TWO_LEVEL)
        return Regime(RegimeKind.P1, c, (1.0, 1.0))
    if p < 2:
        c = SharpConstant(c_two_level(n, p), Formula.TWO_LEVEL, Family.BALANCED_TWO_LEVEL)
        return Regime(RegimeKind.P_1_2, c, (1.0, 2.0))
    if p == 2:
        c = SharpConstant(1.0 / n, Formula.SYMMETRIC, Family.EVERYTHING)
        return Regime(RegimeKind.P2, c, (2.0, 2.0))
    upper_sym = 3.0 + delta1(n)
    if p <= upper_sym:
        c = SharpConstant(c_symmetric(n, p), Formula.SYMMETRIC, Family.SYMMETRIC_THREE_LEVEL_MIDPOINT)
        return Regime(RegimeKind.P_2_3DELTA1, c, (2.0, upper_sym))
    a_n = a_n_threshold(n)
    if p >= 4 or in_A_n(n, p):
        c = SharpConstant(c_dirac(n, p), Formula.DIRAC, Family.DIRAC_DELTA)
        return Regime(RegimeKind.AN_RESOLVED, c, (min(a_n, 4.0), math.inf))
    return Regime(RegimeKind.GAP, None, (upper_sym, a_n))
