"""State specifications, normalization constants and the Fock-expansion oracle.

A circular state places ``N`` coherent states at ``|alpha| exp(2 pi i j / N)``,
``j = 1..N``, and optionally applies ``(a^dagger)^r`` to the sum. The elliptic
variant keeps the same angles but moves each constituent onto an ellipse.

:func:`fock_expansion` builds number-basis amplitudes by brute force and is
deliberately independent of the closed-form distributions in :mod:`.pnd`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonPositiveNormSum, TailMassTooLarge
from .numerics import laguerre

__all__ = [
    "CircularStateSpec",
    "EllipticStateSpec",
    "FockExpansion",
    "default_n_max",
    "constituent_angles",
    "constituent_amplitudes",
    "constituent_radii",
    "gcs_normalization",
    "gpacs_normalization",
    "elliptic_normalization",
    "radial_distance",
    "fock_expansion",
]

_IMAG_TOL_GCS = 1e-12
_IMAG_TOL_LAGUERRE = 1e-10


@dataclass(frozen=True)
class CircularStateSpec:
    """``N`` coherent states of amplitude ``alpha_mag`` on a circle, plus
    ``photons_added`` creation operators. ``photons_added == 0`` is a GCS."""

    alpha_mag: float
    order: int
    photons_added: int = 0

    def __post_init__(self):
        if self.order < 1:
            raise ValueError(f"order must be >= 1, got {self.order}")
        if self.photons_added < 0:
            raise ValueError(f"photons_added must be >= 0, got {self.photons_added}")
        if not self.alpha_mag >= 0:
            raise ValueError(f"alpha_mag must be >= 0, got {self.alpha_mag}")

    @property
    def is_photon_added(self) -> bool:
        return self.photons_added > 0

    def with_alpha(self, alpha_mag: float) -> "CircularStateSpec":
        return CircularStateSpec(alpha_mag, self.order, self.photons_added)


@dataclass(frozen=True)
class EllipticStateSpec:
    """``N`` coherent states on an ellipse with semi-axes ``a >= b > 0``."""

    semi_major: float
    semi_minor: float
    order: int
    photons_added: int = 0

    def __post_init__(self):
        if not self.semi_minor > 0:
            raise ValueError("semi_minor must be > 0")
        if self.semi_major < self.semi_minor:
            raise ValueError("semi_major must be >= semi_minor")
        if self.order < 1:
            raise ValueError(f"order must be >= 1, got {self.order}")
        if self.photons_added < 0:
            raise ValueError(f"photons_added must be >= 0, got {self.photons_added}")

    @property
    def equal_area_alpha(self) -> float:
        """Radius of the circle enclosing the same area, ``sqrt(a b)``."""
        return math.sqrt(self.semi_major * self.semi_minor)

    @classmethod
    def from_equal_area(cls, alpha_mag: float, aspect: float, order: int,
                        photons_added: int = 0) -> "EllipticStateSpec":
        """Ellipse with ``a / b == aspect`` and ``a b == alpha_mag**2``."""
        if aspect < 1:
            raise ValueError("aspect ratio a/b must be >= 1")
        root = math.sqrt(aspect)
        return cls(alpha_mag * root, alpha_mag / root, order, photons_added)


@dataclass(frozen=True)
class FockExpansion:
    """Number-basis amplitudes ``c_0 .. c_{n_max}`` of a pure state.

    ``raw_norm`` is the norm of the unnormalized superposition (before the
    prefactor of the state definition is applied); ``tail_mass`` is the
    fraction of probability lying above ``n_max``.
    """

    coefficients: np.ndarray
    n_max: int
    normalized: bool
    raw_norm: float
    tail_mass: float

    def __post_init__(self):
        if len(self.coefficients) != self.n_max + 1:
            raise ValueError("coefficients must have length n_max + 1")

    @property
    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.coefficients) ** 2)))


def default_n_max(spec) -> int:
    """Cutoff covering 12 standard deviations of the widest Poisson envelope."""
    if isinstance(spec, EllipticStateSpec):
        amp = spec.semi_major
    else:
        amp = spec.alpha_mag
    mu = amp * amp
    return int(math.ceil(mu + 12.0 * math.sqrt(mu) + spec.order + spec.photons_added + 25))


def constituent_angles(order: int) -> np.ndarray:
    """Phase angles ``2 pi j / N`` for ``j = 1..N``."""
    j = np.arange(1, order + 1)
    return 2.0 * np.pi * j / order


def radial_distance(j: int, spec: EllipticStateSpec) -> float:
    """Distance of the ``j``-th constituent from the origin.

    Standard polar form of an ellipse centred on the origin, so the result
    always lies in ``[b, a]``.
    """
    if not 1 <= j <= spec.order:
        raise ValueError(f"j must lie in 1..{spec.order}")
    return float(constituent_radii(spec)[j - 1])


def constituent_radii(spec: EllipticStateSpec) -> np.ndarray:
    theta = constituent_angles(spec.order)
    a, b = spec.semi_major, spec.semi_minor
    if a == b:
        return np.full(spec.order, float(a))
    inv = np.cos(theta) ** 2 / a**2 + np.sin(theta) ** 2 / b**2
    return inv ** -0.5


def constituent_amplitudes(spec) -> np.ndarray:
    """Complex amplitudes of the ``N`` coherent states in the superposition."""
    theta = constituent_angles(spec.order)
    if isinstance(spec, EllipticStateSpec):
        radii = constituent_radii(spec)
    else:
        radii = np.full(spec.order, float(spec.alpha_mag))
    return radii * np.exp(1j * theta)


def _overlap_sum(amps: np.ndarray, photons_added: int) -> tuple[complex, float]:
    """``sum_{j,k} r! L_r(-b_k^* b_j) <b_k|b_j>`` over constituent amplitudes,
    together with the sum of term magnitudes (the rounding scale)."""
    bj = amps[None, :]
    bk = amps[:, None]
    cross = np.conj(bk) * bj
    log_overlap = -0.5 * (np.abs(bj) ** 2 + np.abs(bk) ** 2) + cross
    terms = np.exp(log_overlap)
    if photons_added:
        terms = terms * laguerre(photons_added, -cross) * math.factorial(photons_added)
    return complex(np.sum(terms)), float(np.sum(np.abs(terms)))


def _checked_real(total: complex, tol: float, scale: float) -> float:
    if abs(total.imag) > tol * max(1.0, scale):  # scale: sum of |terms|
        raise NonPositiveNormSum(f"norm sum has imaginary residue {total.imag:.3e}")
    if total.real <= 0:
        raise NonPositiveNormSum(f"norm sum is non-positive ({total.real:.3e})")
    return total.real


def gcs_normalization(spec: CircularStateSpec) -> float:
    """Normalization constant of the GCS,
    ``sqrt(N) [sum_{j1,j2} exp(a_j1 a_j2^* - |a|^2)]^(-1/2)``."""
    if spec.photons_added:
        raise ValueError("gcs_normalization is for photons_added == 0")
    total, scale = _overlap_sum(constituent_amplitudes(spec), 0)
    real = _checked_real(total, _IMAG_TOL_GCS, scale)
    return math.sqrt(spec.order / real)


def gpacs_normalization(spec: CircularStateSpec) -> float:
    """``|N_pa| = [(r!/N) sum_{j,k} L_r(-a_j a_k^*) exp(-|a|^2 + a_j a_k^*)]^(-1/2)``."""
    if spec.photons_added < 1:
        raise ValueError("gpacs_normalization needs photons_added >= 1")
    total, scale = _overlap_sum(constituent_amplitudes(spec), spec.photons_added)
    real = _checked_real(total, _IMAG_TOL_LAGUERRE, scale)
    return math.sqrt(spec.order / real)


def elliptic_normalization(spec: EllipticStateSpec) -> float:
    """Normalization constant of the elliptic superposition.

    With photons added the overlap matrix carries the same Laguerre factor as
    in the circular case. Reduces to :func:`gcs_normalization` for ``a == b``.
    """
    total, scale = _overlap_sum(constituent_amplitudes(spec), spec.photons_added)
    tol = _IMAG_TOL_LAGUERRE if spec.photons_added else _IMAG_TOL_GCS
    real = _checked_real(total, tol, scale)
    return math.sqrt(spec.order / real)


def fock_expansion(spec, n_max: int | None = None, *, normalize: bool = True,
                   tail_tol: float = 1e-12) -> FockExpansion:
    """Brute-force number-basis amplitudes of a circular or elliptic state.

    Each coherent constituent contributes ``exp(-|b|^2/2) b^n / sqrt(n!)``;
    the ``N`` contributions are summed with their phases, then
    ``(a^dagger)^r`` is applied by the index shift
    ``c'_{n+r} = sqrt((n+r)!/n!) c_n`` and the result is normalized by its
    own numeric norm. Log-factorials come from a running sum of logs, not from
    :mod:`.numerics`, so this path shares nothing with the closed forms.
    """
    if n_max is None:
        n_max = default_n_max(spec)
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    r = spec.photons_added
    amps = constituent_amplitudes(spec)
    radii = np.abs(amps)
    widest = float(radii.max())
    n_ext = n_max + int(math.ceil(12.0 * widest + 2 * r + 60))

    n = np.arange(n_ext + 1)
    log_fact = np.concatenate(([0.0], np.cumsum(np.log(np.arange(1, n_ext + 1)))))

    # exact integer phase reduction keeps large n free of angle rounding
    j = np.arange(1, spec.order + 1)
    phase_index = np.outer(n, j) % spec.order
    phases = np.exp(2j * np.pi * phase_index / spec.order)

    with np.errstate(divide="ignore", invalid="ignore"):
        log_r = np.log(radii)
        power = np.where(n[:, None] == 0, 0.0, n[:, None] * log_r[None, :])
    log_mag = -0.5 * radii[None, :] ** 2 - 0.5 * log_fact[:, None] + power
    coherent = np.sum(np.exp(log_mag) * phases, axis=1)

    if r:
        shifted = np.zeros(n_ext + 1, dtype=complex)
        src = np.arange(n_ext + 1 - r)
        gain = np.exp(0.5 * (log_fact[src + r] - log_fact[src]))
        shifted[r:] = coherent[src] * gain
        coherent = shifted

    weights = np.abs(coherent) ** 2
    total = float(np.sum(weights))
    if total <= 0:
        raise TailMassTooLarge("expansion vanished on the whole cutoff range")
    tail = float(np.sum(weights[n_max + 1:])) / total
    if tail > tail_tol:
        raise TailMassTooLarge(
            f"tail mass {tail:.3e} above n_max={n_max} exceeds {tail_tol:.1e}")

    kept = coherent[: n_max + 1]
    if normalize:
        kept = kept / math.sqrt(float(np.sum(np.abs(kept) ** 2)))
    return FockExpansion(kept, n_max, normalize, math.sqrt(total), tail)
