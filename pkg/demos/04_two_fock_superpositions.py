"""Balanced two-level superpositions (|SN> + |(S+1)N>)/sqrt(2).

The amplitude balancing the two comb levels has a closed form; the overlap
with the ideal superposition peaks right next to it and drops slowly with S.
"""
from qscissors import (CircularStateSpec, equal_superposition_alpha, fidelity_peak,
                       two_fock_truncation)

N = 16
for S in range(4):
    alpha = equal_superposition_alpha(N, S)
    peak_alpha, peak = fidelity_peak(N, S)
    print(f"S={S}: balance at |alpha|={alpha:.4f}, best overlap {peak:.6f} at {peak_alpha:.4f}")

for alpha in (2.5, 4.9, 6.0):
    out = two_fock_truncation(CircularStateSpec(alpha, N))
    pairs = ", ".join(f"P_{n}={p:.3f}" for n, p in out.levels)
    print(f"|alpha|={alpha}: {pairs}, rest {out.residual:.1e}")
