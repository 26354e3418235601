"""Scalar kernels: log-factorials, Laguerre polynomials, log-domain weights.

Every Poisson-type factor ``exp(-|a|^2) |a|^(2n) / n!`` is carried as a
logarithm. Exact zeros produced by selection rules are flagged explicitly
rather than encoded as ``-inf``.
"""
from __future__ import annotations

import math
from typing import NamedTuple, Sequence

import numpy as np
from scipy.special import gammaln

from .errors import AllZero

__all__ = [
    "LogWeight",
    "log_factorial",
    "laguerre",
    "log_poisson_weight",
    "normalize_log_weights",
]


class LogWeight(NamedTuple):
    """A nonnegative number stored as its natural log, or an exact zero."""

    log_magnitude: float
    zero_flag: bool = False

    @classmethod
    def zero(cls) -> "LogWeight":
        return cls(0.0, True)

    @classmethod
    def of(cls, value: float) -> "LogWeight":
        if value < 0:
            raise ValueError("LogWeight holds nonnegative quantities only")
        if value == 0:
            return cls.zero()
        return cls(math.log(value))


def log_factorial(n):
    """Return ``ln(n!)`` for a nonnegative integer or integer array."""
    arr = np.asarray(n)
    if np.any(arr < 0):
        raise ValueError("log_factorial needs n >= 0")
    if arr.ndim == 0:
        return math.lgamma(int(arr) + 1)
    return gammaln(arr + 1.0)


def laguerre(r: int, z):
    """Laguerre polynomial ``L_r(z)`` by the three-term recurrence.

    ``z`` may be a complex scalar or array. The recurrence
    ``(k+1) L_{k+1} = (2k+1-z) L_k - k L_{k-1}`` is used instead of the
    explicit series, which loses digits to cancellation once ``|z|`` is large.
    """
    if r < 0:
        raise ValueError("Laguerre order must be nonnegative")
    z = np.asarray(z, dtype=complex)
    prev = np.ones_like(z)
    if r == 0:
        return prev if prev.ndim else complex(prev)
    cur = 1.0 - z
    for k in range(1, r):
        prev, cur = cur, ((2 * k + 1 - z) * cur - k * prev) / (k + 1)
    return cur if cur.ndim else complex(cur)


def log_poisson_weight(n, alpha_mag: float):
    """Log of ``exp(-a^2) a^(2n) / n!`` and a structural-zero mask.

    At ``alpha_mag == 0`` every ``n > 0`` is an exact zero.
    """
    n = np.asarray(n)
    if alpha_mag < 0:
        raise ValueError("alpha_mag must be nonnegative")
    if alpha_mag == 0:
        return np.zeros(n.shape), n > 0
    logw = -alpha_mag**2 + 2.0 * n * math.log(alpha_mag) - log_factorial(n)
    return np.asarray(logw, dtype=float), np.zeros(n.shape, dtype=bool)


def normalize_log_weights(weights, zero_flags=None, axis: int = -1) -> np.ndarray:
    """Turn log-domain weights into probabilities summing to one.

    ``weights`` is either a sequence of :class:`LogWeight` or an array of log
    magnitudes, in which case ``zero_flags`` (same shape) marks exact zeros.
    Arrays are normalized along ``axis``. The largest live log weight is
    subtracted before exponentiating, so arbitrarily large logs are safe.
    """
    if len(weights) and isinstance(weights[0], LogWeight):
        log_mag, zero_flags = _unpack(weights)
    else:
        log_mag = np.asarray(weights, dtype=float)
    if zero_flags is None:
        zero_flags = np.zeros(log_mag.shape, dtype=bool)
    zero_flags = np.broadcast_to(np.asarray(zero_flags, dtype=bool), log_mag.shape)

    live = np.where(zero_flags, -np.inf, log_mag)
    if np.any(np.all(zero_flags, axis=axis)):
        raise AllZero("cannot normalize a weight vector with no nonzero entry")
    peak = np.max(live, axis=axis, keepdims=True)
    shifted = np.where(zero_flags, 0.0, np.exp(live - peak))
    return shifted / np.sum(shifted, axis=axis, keepdims=True)


def _unpack(weights: Sequence[LogWeight]):
    mags = np.array([w.log_magnitude for w in weights], dtype=float)
    flags = np.array([w.zero_flag for w in weights], dtype=bool)
    return mags, flags
