"""Extremizer families and the one-variable reductions used to analyse them.

The three candidate extremizers are two-level functions (level sets of sizes
k and n-k), Dirac deltas (two levels with one vertex apart), and symmetric
three-level functions (1, x, ..., x, -1).  ``T_function``, ``G_function`` and
``alpha_function`` are the scalar functions of x that decide when the
three-level family beats the Dirac one.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .core import abspow, as_values, is_constant, sort_descending
from .errors import BadBlockSize, BadParameter, ConstantFunction

G_SMALL_X = 1e-8


class Family(enum.Enum):
    ANY_TWO_LEVEL = "AnyTwoLevel"
    BALANCED_TWO_LEVEL = "BalancedTwoLevel"
    SYMMETRIC_THREE_LEVEL_MIDPOINT = "SymmetricThreeLevelMidpoint"
    DIRAC_DELTA = "DiracDelta"
    EVERYTHING = "Everything"
    OTHER = "Other"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class FamilyLabel:
    kind: Family
    block_size: int | None = None  # number of vertices at the top level, two-level only
    middle: float | None = None  # common middle value, three-level only

    def __str__(self):
        if self.kind is Family.ANY_TWO_LEVEL:
            return f"AnyTwoLevel({self.block_size})"
        return str(self.kind)


def two_level(n: int, k: int) -> np.ndarray:
    if not 1 <= k <= n - 1:
        raise BadBlockSize(f"block size must lie in 1..{n - 1}, got {k}")
    f = np.zeros(n)
    f[:k] = 1.0
    return f


def dirac(n: int) -> np.ndarray:
    if n < 3:
        raise BadParameter(f"n must be >= 3, got {n}")
    return two_level(n, 1)


def three_level(n: int, x: float) -> np.ndarray:
    """(1, x, ..., x, -1); x = 0 is the symmetric midpoint member."""
    if n < 3:
        raise BadParameter(f"n must be >= 3, got {n}")
    if abs(x) > 1:
        raise BadParameter(f"middle value must lie in [-1, 1], got {x}")
    f = np.full(n, float(x))
    f[0], f[-1] = 1.0, -1.0
    return f


def lemma_quotient(f, p: float):
    """Ratio of the two sides of the stationarity identity.

    Numerator (f_max - m)^(p-1) + (m - f_min)^(p-1); denominator
    sum_j (f_max - f_j)^(p-1) + (f_j - f_min)^(p-1).  At a maximizer of the
    Rayleigh quotient this ratio equals the sharp constant.
    """
    values = sort_descending(as_values(f))
    if p <= 1:
        raise BadParameter(f"lemma quotient needs p > 1, got {p}")
    if np.any(is_constant(values)):
        raise ConstantFunction("lemma quotient is undefined for a constant function")
    q = p - 1.0
    top = values[..., :1]
    bottom = values[..., -1:]
    m = values.mean(axis=-1, keepdims=True)
    num = abspow(top - m, q) + abspow(m - bottom, q)
    den = (abspow(top - values, q) + abspow(values - bottom, q)).sum(axis=-1, keepdims=True)
    out = (num / den)[..., 0]
    return float(out) if out.ndim == 0 else out


def _shrink(n: int, x):
    return (n - 2) / n * np.asarray(x, dtype=float)


def T_function(n: int, p: float, C: float, x):
    """C(2^p + (n-2)((1-x)^(p-1) + (1+x)^(p-1))) - (1-s)^(p-1) - (1+s)^(p-1), s = (n-2)x/n.

    Nonnegativity on [0, 1] is the lemma inequality restricted to the
    three-level functions (1, x, ..., x, -1).
    """
    x = np.asarray(x, dtype=float)
    s = _shrink(n, x)
    q = p - 1.0
    out = C * (2.0**p + (n - 2) * (abspow(1 - x, q) + abspow(1 + x, q))) - abspow(1 - s, q) - abspow(1 + s, q)
    return float(out) if out.ndim == 0 else out


def G_function(n: int, p: float, x):
    """((1+s)^(p-2) - (1-s)^(p-2)) / ((1+x)^(p-2) - (1-x)^(p-2)), s = (n-2)x/n.

    Returns the limit (n-2)/n for x below 1e-8, where the ratio is 0/0.
    """
    if p <= 2:
        raise BadParameter(f"G is only defined for p > 2, got {p}")
    x = np.asarray(x, dtype=float)
    s = _shrink(n, x)
    q = p - 2.0
    small = x < G_SMALL_X
    xs = np.where(small, 0.5, x)
    ss = np.where(small, 0.5, s)
    ratio = (abspow(1 + ss, q) - abspow(1 - ss, q)) / (abspow(1 + xs, q) - abspow(1 - xs, q))
    out = np.where(small, (n - 2) / n, ratio)
    return float(out) if out.ndim == 0 else out


def alpha_function(n: int, p: float, x):
    """n(1+s)^(p-2) - n(1-s)^(p-2) - (n-2)(1+x)^(p-2) + (n-2)(1-x)^(p-2)."""
    x = np.asarray(x, dtype=float)
    s = _shrink(n, x)
    q = p - 2.0
    out = n * abspow(1 + s, q) - n * abspow(1 - s, q) - (n - 2) * abspow(1 + x, q) + (n - 2) * abspow(1 - x, q)
    return float(out) if out.ndim == 0 else out
