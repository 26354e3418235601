"""Quantum-scissor planning on top of the closed-form distributions.

The main entry point is :func:`fock_window`, which finds the interval of
``|alpha|`` over which a circular (photon-added) superposition is, to a given
threshold, a single Fock state. Everything else here is built from it or from
the same closed-form level probabilities.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, Literal, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .numerics import log_factorial
from .pnd import allowed_levels, level_probability, pnd_closed, pnd_elliptic
from .states import CircularStateSpec, EllipticStateSpec, default_n_max, fock_expansion

__all__ = [
    "DEFAULT_THRESHOLD",
    "DEFAULT_ASPECT",
    "ParameterWindow",
    "TruncationOutcome",
    "ReachabilityRecord",
    "fock_window",
    "window_for",
    "reachability_table",
    "elliptic_reachable_levels",
    "equal_superposition_alpha",
    "two_fock_truncation",
    "overlap_fidelity",
    "fidelity_peak",
    "delta_alpha_curve",
]

log = logging.getLogger(__name__)

DEFAULT_THRESHOLD = 0.99
DEFAULT_ASPECT = 5.0 / 3.2
GRID_STEP = 0.01
BISECT_TOL = 1e-4

TargetKind = Literal["N_plus_r", "2N_plus_r", "3N_plus_r"]
_KIND_MULTIPLE = {"N_plus_r": 1, "2N_plus_r": 2, "3N_plus_r": 3}


@dataclass(frozen=True)
class ParameterWindow:
    target_n: int
    alpha_lo: float
    alpha_hi: float
    threshold: float
    spec: CircularStateSpec
    peak_probability: float = math.nan

    @property
    def width(self) -> float:
        return self.alpha_hi - self.alpha_lo

    def contains(self, alpha: float) -> bool:
        return self.alpha_lo <= alpha <= self.alpha_hi


@dataclass(frozen=True)
class TruncationOutcome:
    levels: tuple[tuple[int, float], ...]
    residual: float

    @property
    def photon_numbers(self) -> tuple[int, ...]:
        return tuple(n for n, _ in self.levels)


@dataclass
class ReachabilityRecord:
    """One row of the reachability table.

    ``gpacs_combos`` holds every reachable ``(N, r)`` with ``r >= 1``; use
    :meth:`nontrivial_gpacs` for the ones where the coherent part contributes
    at least one photon (``fock_n > r``).
    """

    fock_n: int
    gcs_orders: list[int] = field(default_factory=list)
    gpacs_combos: list[tuple[int, int]] = field(default_factory=list)
    elliptic_reachable: bool = False

    def nontrivial_gpacs(self) -> list[tuple[int, int]]:
        return [(N, r) for N, r in self.gpacs_combos if r < self.fock_n]

    def to_dict(self) -> dict:
        return {
            "fock_n": self.fock_n,
            "gcs_orders": list(self.gcs_orders),
            "gpacs_combos": [list(c) for c in self.gpacs_combos],
            "elliptic_reachable": self.elliptic_reachable,
        }


def _runs(mask: np.ndarray) -> list[tuple[int, int]]:
    """Inclusive index ranges of the True runs in ``mask``."""
    padded = np.concatenate(([False], mask, [False])).astype(np.int8)
    edges = np.flatnonzero(np.diff(padded))
    return [(int(s), int(e) - 1) for s, e in zip(edges[::2], edges[1::2])]


def _bisect(f, inside: float, outside: float, tol: float) -> float:
    """Boundary between ``inside`` (f true) and ``outside`` (f false)."""
    while abs(outside - inside) > tol:
        mid = 0.5 * (inside + outside)
        if f(mid):
            inside = mid
        else:
            outside = mid
    return inside


def fock_window(spec: CircularStateSpec, target_n: int, threshold: float = DEFAULT_THRESHOLD,
                alpha_max: float | None = None, grid_step: float = GRID_STEP,
                tol: float = BISECT_TOL) -> ParameterWindow | None:
    """Interval of ``|alpha|`` over which ``P_target >= threshold``.

    ``spec.alpha_mag`` is ignored. The range ``[0, alpha_max]`` is scanned on
    a grid of ``grid_step``; the widest qualifying run is kept and each open
    end is refined by bisection to ``tol``. Returns ``None`` when the target is
    off the selection comb or no grid point qualifies.
    """
    if not 0.5 < threshold < 1.0:
        raise ValueError("threshold must lie in (0.5, 1)")
    N, r = spec.order, spec.photons_added
    if target_n < 0 or not allowed_levels(target_n, N, r):
        return None
    if alpha_max is None:
        alpha_max = math.sqrt(target_n) + 8.0

    grid = np.arange(0.0, alpha_max + 0.5 * grid_step, grid_step)
    probs = level_probability(N, r, target_n, grid)
    runs = _runs(probs >= threshold)
    if not runs:
        return None
    if len(runs) > 1:
        log.warning("P_%d >= %g on %d disjoint alpha ranges for N=%d r=%d; keeping the widest",
                    target_n, threshold, len(runs), N, r)
    start, stop = max(runs, key=lambda run: (grid[run[1]] - grid[run[0]], -run[0]))

    def passes(alpha: float) -> bool:
        return bool(level_probability(N, r, target_n, [alpha])[0] >= threshold)

    lo = 0.0 if start == 0 else _bisect(passes, grid[start], grid[start - 1], tol)
    if stop == len(grid) - 1:
        log.warning("window for |%d> reaches alpha_max=%g; upper edge is truncated", target_n, alpha_max)
        hi = float(grid[stop])
    else:
        hi = _bisect(passes, grid[stop], grid[stop + 1], tol)
    peak = float(np.max(probs[start:stop + 1]))
    return ParameterWindow(target_n, float(lo), float(hi), threshold,
                           spec.with_alpha(0.0), peak)


def window_for(order: int, photons_added: int, target_n: int, **kwargs) -> ParameterWindow | None:
    """Shorthand for :func:`fock_window` without building a spec."""
    return fock_window(CircularStateSpec(0.0, order, photons_added), target_n, **kwargs)


def elliptic_reachable_levels(N_values: Iterable[int], r_values: Iterable[int],
                              threshold: float = DEFAULT_THRESHOLD,
                              aspect: float = DEFAULT_ASPECT,
                              alpha_max: float = 10.0, step: float = 0.05) -> dict[int, float]:
    """Best probability reached by each level ``n > r`` in elliptic states.

    Sweeps the equal-area amplitude ``sqrt(a b)`` over ``(0, alpha_max]`` at a
    fixed aspect ratio. The photon-added vacuum ``n == r``, which every
    geometry approaches as the amplitude goes to zero, is skipped.
    Returns ``{n: max P_n}`` for every level that was ever the most probable
    one; only such a level can clear a threshold above one half.
    """
    best: dict[int, float] = {}
    amps = np.arange(step, alpha_max + 0.5 * step, step)
    for N in N_values:
        for r in r_values:
            for amp in amps:
                dist = pnd_elliptic(EllipticStateSpec.from_equal_area(float(amp), aspect, N, r))
                p = dist.probs[r + 1:]
                if not p.size:
                    continue
                n = int(np.argmax(p)) + r + 1
                best[n] = max(best.get(n, 0.0), float(p[n - r - 1]))
    return best


def reachability_table(n_fock_max: int = 16, N_max: int = 15, r_max: int = 10,
                       threshold: float = DEFAULT_THRESHOLD, aspect: float = DEFAULT_ASPECT,
                       elliptic: bool = True) -> list[ReachabilityRecord]:
    """Which circular states truncate to each Fock state ``|0> .. |n_fock_max>``.

    For every ``fock_n`` all ``(N, r)`` with ``N <= N_max``, ``r <= r_max`` and
    ``fock_n = S N + r`` are tried with :func:`fock_window`. The elliptic
    column sweeps :func:`pnd_elliptic` at the given aspect ratio.
    """
    if min(n_fock_max, N_max) < 0 or N_max < 1 or r_max < 0:
        raise ValueError("table bounds must be nonnegative with N_max >= 1")
    records = []
    for fock_n in range(n_fock_max + 1):
        rec = ReachabilityRecord(fock_n)
        for N in range(1, N_max + 1):
            for r in range(0, min(r_max, fock_n) + 1):
                if not allowed_levels(fock_n, N, r):
                    continue
                if window_for(N, r, fock_n, threshold=threshold) is None:
                    continue
                if r == 0:
                    rec.gcs_orders.append(N)
                else:
                    rec.gpacs_combos.append((N, r))
        rec.gpacs_combos.sort()
        records.append(rec)

    if elliptic:
        levels = elliptic_reachable_levels(range(1, N_max + 1), range(0, r_max + 1),
                                           threshold=threshold, aspect=aspect,
                                           alpha_max=math.sqrt(n_fock_max) + 6.0)
        for rec in records:
            rec.elliptic_reachable = levels.get(rec.fock_n, 0.0) >= threshold
    return records


def equal_superposition_alpha(N: int, S: int) -> float:
    """``|alpha|`` at which the comb levels ``S N`` and ``(S+1) N`` are equally
    likely: ``|alpha|^(2N) = ((S+1)N)! / (SN)!``."""
    if N < 1 or S < 0:
        raise ValueError("need N >= 1 and S >= 0")
    return math.exp((log_factorial((S + 1) * N) - log_factorial(S * N)) / (2 * N))


def two_fock_truncation(spec: CircularStateSpec, alpha: float | None = None,
                        k: int = 2) -> TruncationOutcome:
    """The ``k`` most probable levels of the closed-form distribution."""
    if alpha is not None:
        spec = spec.with_alpha(alpha)
    probs = pnd_closed(spec).probs
    order = np.lexsort((np.arange(len(probs)), -probs))[:k]
    levels = tuple((int(n), float(probs[n])) for n in order if probs[n] > 0)
    residual = max(0.0, 1.0 - sum(p for _, p in levels))
    return TruncationOutcome(levels, residual)


def overlap_fidelity(spec: CircularStateSpec, alpha: float | None, S: int) -> float:
    """``|<psi'|psi>|^2`` with ``psi' = (|SN> + |(S+1)N>)/sqrt(2)``.

    Amplitudes come from the brute-force Fock expansion, phases included.
    """
    if spec.photons_added:
        raise ValueError("overlap_fidelity is defined for photons_added == 0")
    if alpha is not None:
        spec = spec.with_alpha(alpha)
    lo, hi = S * spec.order, (S + 1) * spec.order
    exp = fock_expansion(spec, max(hi, default_n_max(spec)))
    c = exp.coefficients
    return float(abs((c[lo] + c[hi]) / math.sqrt(2.0)) ** 2)


def fidelity_peak(N: int, S: int, alpha_range: tuple[float, float] | None = None,
                  step: float = 0.01) -> tuple[float, float]:
    """Location and height of the maximum of :func:`overlap_fidelity` in alpha.

    A grid search brackets the peak; a bounded scalar optimizer then polishes
    it.
    """
    spec = CircularStateSpec(0.0, N, 0)
    if alpha_range is None:
        guess = equal_superposition_alpha(N, S)
        alpha_range = (max(step, guess - 1.5), guess + 1.5)
    grid = np.arange(alpha_range[0], alpha_range[1] + 0.5 * step, step)
    values = np.array([overlap_fidelity(spec, float(a), S) for a in grid])
    i = int(np.argmax(values))
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, len(grid) - 1)]
    res = minimize_scalar(lambda a: -overlap_fidelity(spec, a, S), bounds=(lo, hi),
                          method="bounded", options={"xatol": 1e-7})
    if -res.fun >= values[i]:
        return float(res.x), float(-res.fun)
    return float(grid[i]), float(values[i])


def delta_alpha_curve(N_range: Sequence[int], r: int, target_kind: TargetKind = "N_plus_r",
                      threshold: float = DEFAULT_THRESHOLD) -> list[tuple[int, float | None]]:
    """Window width for the target ``k N + r`` at each ``N``; ``None`` where no
    window exists."""
    try:
        mult = _KIND_MULTIPLE[target_kind]
    except KeyError:
        raise ValueError(f"unknown target kind {target_kind!r}") from None
    out = []
    for N in N_range:
        win = window_for(N, r, mult * N + r, threshold=threshold)
        out.append((N, None if win is None else win.width))
    return out
