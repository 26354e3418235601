"""Photon-number distributions in closed form, plus moments.

For a GCS of order ``N`` only the levels ``n = S N`` are populated, with
probability ``|Nc|^2 N exp(-|a|^2) |a|^(2n) / n!``. Adding ``r`` photons shifts
the comb to ``n = S N + r`` and reweights each tooth by ``n! / (n-r)!^2``.
All weights are formed in log domain; forbidden levels are exact zeros.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericFailure, TailMassTooLarge, ZeroMean
from .numerics import log_factorial, log_poisson_weight, normalize_log_weights
from .states import (
    CircularStateSpec,
    EllipticStateSpec,
    FockExpansion,
    constituent_radii,
    default_n_max,
    elliptic_normalization,
    gcs_normalization,
    gpacs_normalization,
)

__all__ = [
    "Source",
    "PhotonNumberDistribution",
    "Moments",
    "allowed_levels",
    "interference_bracket",
    "pnd_gcs_closed",
    "pnd_gcs_intermediate",
    "pnd_gpacs_closed",
    "pnd_closed",
    "pnd_elliptic",
    "pnd_from_expansion",
    "level_probability",
    "moments",
]

CLOSURE_TOL = 1e-10


class Source(enum.Enum):
    CLOSED_FORM = "closed-form"
    INTERMEDIATE = "intermediate"
    ORACLE = "oracle"


@dataclass(frozen=True)
class PhotonNumberDistribution:
    """Probabilities ``P_0 .. P_{n_max}`` and where they came from."""

    probs: np.ndarray
    n_max: int
    source: Source
    spec: object = None

    def __len__(self):
        return len(self.probs)

    def __getitem__(self, n):
        return self.probs[n]

    @property
    def total(self) -> float:
        return float(np.sum(self.probs))

    def support(self, atol: float = 0.0) -> np.ndarray:
        """Photon numbers carrying probability above ``atol``."""
        return np.flatnonzero(self.probs > atol)


@dataclass(frozen=True)
class Moments:
    mean: float
    variance: float
    fano: float


def allowed_levels(n, order: int, photons_added: int = 0) -> np.ndarray:
    """Boolean mask of the levels ``n = S*order + photons_added``, ``S >= 0``."""
    shifted = np.asarray(n) - photons_added
    return (shifted >= 0) & (shifted % order == 0)


def _check_closure(probs: np.ndarray, n_max: int) -> None:
    total = float(np.sum(probs))
    if 1.0 - total > CLOSURE_TOL:
        raise TailMassTooLarge(
            f"distribution sums to {total:.15f} on 0..{n_max}; raise n_max")
    if total - 1.0 > CLOSURE_TOL:
        raise NumericFailure(f"distribution sums to {total:.15f} > 1")


def _require_circular(spec, photon_added: bool):
    if not isinstance(spec, CircularStateSpec):
        raise TypeError("expected a CircularStateSpec")
    if photon_added and spec.photons_added < 1:
        raise ValueError("photon-added distribution needs photons_added >= 1")
    if not photon_added and spec.photons_added != 0:
        raise ValueError("GCS distribution needs photons_added == 0")


def pnd_gcs_closed(spec: CircularStateSpec, n_max: int | None = None) -> PhotonNumberDistribution:
    """Closed-form GCS distribution with the comb selection rule ``n = S N``."""
    _require_circular(spec, photon_added=False)
    if n_max is None:
        n_max = default_n_max(spec)
    n = np.arange(n_max + 1)
    logw, zero = log_poisson_weight(n, spec.alpha_mag)
    zero = zero | ~allowed_levels(n, spec.order)
    log_pref = 2.0 * math.log(gcs_normalization(spec)) + math.log(spec.order)
    probs = np.where(zero, 0.0, np.exp(np.where(zero, 0.0, logw + log_pref)))
    _check_closure(probs, n_max)
    return PhotonNumberDistribution(probs, n_max, Source.CLOSED_FORM, spec)


def interference_bracket(n, order: int) -> np.ndarray:
    """``N + 2 sum_{m=1}^{N-1} (N-m) cos(2 pi n m / N)``.

    Equals ``N**2`` on ``n = S N`` and vanishes elsewhere; it is the finite
    trigonometric sum whose closed form ``[sin(n pi)/sin(n pi/N)]^2`` is 0/0 on
    the comb.
    """
    n = np.asarray(n)
    m = np.arange(1, order)
    # reduce n*m mod N in integers so the cosine argument stays small
    angle = 2.0 * np.pi * (np.multiply.outer(n, m) % order) / order
    return order + 2.0 * np.sum((order - m) * np.cos(angle), axis=-1)


def pnd_gcs_intermediate(spec: CircularStateSpec, n_max: int | None = None) -> PhotonNumberDistribution:
    """GCS distribution from the unsimplified trigonometric bracket.

    Kept as an internal cross-check on the closed form; off-comb entries are
    rounding-level, not exact zeros.
    """
    _require_circular(spec, photon_added=False)
    if n_max is None:
        n_max = default_n_max(spec)
    n = np.arange(n_max + 1)
    logw, zero = log_poisson_weight(n, spec.alpha_mag)
    pref = gcs_normalization(spec) ** 2 / spec.order
    poisson = np.where(zero, 0.0, np.exp(np.where(zero, 0.0, logw)))
    probs = pref * poisson * interference_bracket(n, spec.order)
    _check_closure(probs, n_max)
    return PhotonNumberDistribution(probs, n_max, Source.INTERMEDIATE, spec)


def pnd_gpacs_closed(spec: CircularStateSpec, n_max: int | None = None) -> PhotonNumberDistribution:
    """Closed-form distribution of the ``r``-photon-added GCS."""
    _require_circular(spec, photon_added=True)
    if n_max is None:
        n_max = default_n_max(spec)
    r = spec.photons_added
    n = np.arange(n_max + 1)
    live = allowed_levels(n, spec.order, r)
    k = np.where(live, n - r, 0)
    logw, zero = log_poisson_weight(k, spec.alpha_mag)
    logw = logw + log_factorial(n) - log_factorial(k)
    zero = zero | ~live
    log_pref = 2.0 * math.log(gpacs_normalization(spec)) + math.log(spec.order)
    probs = np.where(zero, 0.0, np.exp(np.where(zero, 0.0, logw + log_pref)))
    _check_closure(probs, n_max)
    return PhotonNumberDistribution(probs, n_max, Source.CLOSED_FORM, spec)


def pnd_closed(spec: CircularStateSpec, n_max: int | None = None) -> PhotonNumberDistribution:
    """Dispatch to the GCS or photon-added closed form."""
    if spec.photons_added:
        return pnd_gpacs_closed(spec, n_max)
    return pnd_gcs_closed(spec, n_max)


def pnd_elliptic(spec: EllipticStateSpec, n_max: int | None = None) -> PhotonNumberDistribution:
    """Distribution of the elliptic superposition as ``|c_n|^2``.

    Equivalent to the real double sum over all constituent pairs ``(j, k)``::

        P_{m+r} = |Ne|^2/N (m+r)!/m!^2
                  sum_{j,k} e^{-(|a_j|^2+|a_k|^2)/2} |a_j|^m |a_k|^m cos(2 pi m (j-k)/N)

    Every ordered pair is counted once, so ``a == b`` recovers the GCS.
    """
    if not isinstance(spec, EllipticStateSpec):
        raise TypeError("expected an EllipticStateSpec")
    if n_max is None:
        n_max = default_n_max(spec)
    r = spec.photons_added
    N = spec.order
    radii = constituent_radii(spec)
    m = np.arange(max(n_max - r + 1, 0))

    # the double sum over (j, k) of v_j v_k cos(...) is |sum_j v_j e^{i m theta_j}|^2
    log_v = -0.5 * radii[None, :] ** 2 + m[:, None] * np.log(radii)[None, :]
    log_v = log_v + 0.5 * (log_factorial(m + r) - 2.0 * log_factorial(m))[:, None]
    j = np.arange(1, N + 1)
    phases = np.exp(2j * np.pi * (np.outer(m, j) % N) / N)
    sums = np.abs(np.sum(np.exp(log_v) * phases, axis=1)) ** 2

    probs = np.zeros(n_max + 1)
    norm2 = elliptic_normalization(spec) ** 2 / N
    probs[r:] = np.clip(norm2 * sums, 0.0, None)
    _check_closure(probs, n_max)
    return PhotonNumberDistribution(probs, n_max, Source.CLOSED_FORM, spec)


def pnd_from_expansion(expansion: FockExpansion) -> PhotonNumberDistribution:
    """``P_n = |c_n|^2`` of a normalized expansion."""
    if not expansion.normalized:
        raise ValueError("expansion must be normalized")
    probs = np.abs(np.asarray(expansion.coefficients)) ** 2
    return PhotonNumberDistribution(probs, expansion.n_max, Source.ORACLE, None)


def level_probability(order: int, photons_added: int, target_n: int, alphas) -> np.ndarray:
    """Closed-form ``P_target`` for a whole array of amplitudes at once.

    The comb weights ``|a|^(2m) (m+r)! / m!^2`` (``m = S*order``) are
    normalized by log-sum-exp over the comb, which is the same as multiplying
    by the squared normalization constant since the closed form sums to one.
    Returns zeros when ``target_n`` is off the comb.
    """
    alphas = np.atleast_1d(np.asarray(alphas, dtype=float))
    r = photons_added
    if not allowed_levels(target_n, order, r):
        return np.zeros(alphas.shape)
    top = float(np.max(alphas)) if alphas.size else 0.0
    cutoff = max(default_n_max(CircularStateSpec(top, order, r)), target_n)
    m = np.arange(0, cutoff - r + 1, order)
    with np.errstate(divide="ignore", invalid="ignore"):
        log_a = np.log(alphas)
        power = np.where(m[None, :] == 0, 0.0, 2.0 * m[None, :] * log_a[:, None])
    zero = np.isneginf(power)
    logw = np.where(zero, 0.0, power) + (log_factorial(m + r) - 2.0 * log_factorial(m))[None, :]
    probs = normalize_log_weights(logw, zero, axis=1)
    return probs[:, (target_n - r) // order]


def moments(dist: PhotonNumberDistribution) -> Moments:
    """Mean, variance and Fano factor of a normalized distribution."""
    p = np.asarray(dist.probs)
    n = np.arange(len(p))
    mean = float(np.sum(n * p))
    variance = float(np.sum((n - mean) ** 2 * p))
    if mean < 1e-14:
        raise ZeroMean("Fano factor undefined for zero mean photon number")
    return Moments(mean, variance, variance / mean)
