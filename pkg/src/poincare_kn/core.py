"""Functions on the complete graph K_n and the functionals built on them.

A graph function is stored as a float array of its n vertex values.  Every
functional here also accepts a 2-D array and then works row by row, which
is how the optimizer and the sampled checks evaluate many functions at once.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import BadParameter, ConstantFunction

CONSTANT_RTOL = 1e-14


def as_values(f, min_n: int = 3) -> np.ndarray:
    """Validate ``f`` and return it as a float array of shape (n,) or (m, n)."""
    values = np.asarray(f, dtype=float)
    if values.ndim not in (1, 2):
        raise ValueError(f"expected a 1-D or 2-D array, got shape {values.shape}")
    if values.shape[-1] < min_n:
        raise ValueError(f"K_n needs n >= {min_n} vertices, got {values.shape[-1]}")
    if not np.all(np.isfinite(values)):
        raise ValueError("graph function values must be finite")
    return values


def check_exponent(p: float) -> float:
    p = float(p)
    if not math.isfinite(p) or p < 1:
        raise BadParameter(f"exponent must be finite and >= 1, got {p}")
    return p


def abspow(x, p: float) -> np.ndarray:
    """|x|**p, with 0**p = 0 for every p >= 0."""
    return np.power(np.abs(x), p)


def _sum_last(terms: np.ndarray):
    # fsum is exact-rounded for single functions; batches use numpy's pairwise sum
    if terms.ndim == 1:
        return math.fsum(terms)
    return terms.sum(axis=-1)


def _pair_differences(values: np.ndarray) -> np.ndarray:
    i, j = np.triu_indices(values.shape[-1], k=1)
    return values[..., i] - values[..., j]


def is_constant(f) -> np.ndarray | bool:
    values = np.asarray(f, dtype=float)
    spread = values.max(axis=-1) - values.min(axis=-1)
    scale = 1.0 + np.abs(values).max(axis=-1)
    out = spread <= CONSTANT_RTOL * scale
    return bool(out) if values.ndim == 1 else out


def _require_nonconstant(values: np.ndarray) -> None:
    if np.any(is_constant(values)):
        raise ConstantFunction("quotient is undefined for a constant function")


def mean(f):
    values = as_values(f)
    return _sum_last(values) / values.shape[-1]


def p_variation(f, p: float):
    """(sum over edges i<j of |f_i - f_j|**p) ** (1/p)."""
    values = as_values(f)
    p = check_exponent(p)
    total = _sum_last(abspow(_pair_differences(values), p))
    return total ** (1.0 / p)


def variation_power(f, p: float):
    """Var_p(f)**p, i.e. the edge sum without the outer root."""
    values = as_values(f)
    p = check_exponent(p)
    return _sum_last(abspow(_pair_differences(values), p))


def deviation_power(f, p: float):
    """sum_i |f_i - mean(f)|**p."""
    values = as_values(f)
    p = check_exponent(p)
    m = mean(values)
    centred = values - (m[..., None] if values.ndim == 2 else m)
    return _sum_last(abspow(centred, p))


def rayleigh_quotient(f, p: float):
    """Deviation power over variation power; the quantity whose sup is C_{n,p}."""
    values = as_values(f)
    p = check_exponent(p)
    _require_nonconstant(values)
    return deviation_power(values, p) / variation_power(values, p)


def normalize(f) -> np.ndarray:
    """Affine map onto [0, 1] with max 1 and min 0."""
    values = as_values(f)
    _require_nonconstant(values)
    lo = values.min(axis=-1, keepdims=True)
    hi = values.max(axis=-1, keepdims=True)
    out = (values - lo) / (hi - lo)
    # pin the extremes exactly; the division can land one ulp off
    out[values == hi] = 1.0
    out[values == lo] = 0.0
    return out


def sort_descending(f) -> np.ndarray:
    """Sort non-increasingly; equal values keep their original order."""
    values = as_values(f)
    order = np.argsort(-values, axis=-1, kind="stable")
    return np.take_along_axis(values, order, axis=-1)
