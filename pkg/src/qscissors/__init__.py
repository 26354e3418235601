"""Photon-number statistics of generalized coherent states and quantum-scissor planning.

Circular superpositions of ``N`` coherent states (optionally with ``r`` added
photons) populate only the comb ``n = S N + r``. This package evaluates those
distributions in closed form, checks them against a brute-force Fock-space
expansion, and searches the amplitude windows in which a superposition is
effectively a single Fock state or an equal two-Fock superposition.
"""
__version__ = "0.1.0"

from .errors import (
    AllZero,
    NonPositiveNormSum,
    NumericFailure,
    QScissorsError,
    TailMassTooLarge,
    ZeroMean,
)
from .numerics import LogWeight, laguerre, log_factorial, normalize_log_weights
from .pnd import (
    Moments,
    PhotonNumberDistribution,
    Source,
    level_probability,
    moments,
    pnd_closed,
    pnd_elliptic,
    pnd_from_expansion,
    pnd_gcs_closed,
    pnd_gcs_intermediate,
    pnd_gpacs_closed,
)
from .scissors import (
    ParameterWindow,
    ReachabilityRecord,
    TruncationOutcome,
    delta_alpha_curve,
    elliptic_reachable_levels,
    equal_superposition_alpha,
    fidelity_peak,
    fock_window,
    overlap_fidelity,
    reachability_table,
    two_fock_truncation,
    window_for,
)
from .states import (
    CircularStateSpec,
    EllipticStateSpec,
    FockExpansion,
    elliptic_normalization,
    fock_expansion,
    gcs_normalization,
    gpacs_normalization,
    radial_distance,
)
