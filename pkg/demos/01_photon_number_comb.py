"""Photon statistics of a circle of coherent states.

Superposing N coherent states evenly spaced on a circle kills every Fock level
that is not a multiple of N. Adding r photons shifts that comb up by r.
"""
import numpy as np

from qscissors import CircularStateSpec, moments, pnd_closed, pnd_from_expansion, fock_expansion

for N in (1, 2, 4, 8):
    dist = pnd_closed(CircularStateSpec(4.0, N))
    levels = dist.support(1e-3)
    print(f"N={N}: populated levels (P > 1e-3) {levels.tolist()}")

# three photons added to a hexagon: the comb moves to 3, 9, 15, ...
dist = pnd_closed(CircularStateSpec(2.5, 6, 3))
print("N=6, r=3:", {int(n): round(float(dist[n]), 4) for n in dist.support(1e-4)})

# the closed form agrees with a brute-force Fock expansion of the same state
spec = CircularStateSpec(3.0, 5, 2)
closed = pnd_closed(spec)
oracle = pnd_from_expansion(fock_expansion(spec, closed.n_max))
print(f"closed form vs Fock expansion, max |diff| = {np.max(np.abs(closed.probs - oracle.probs)):.1e}")

# the Fano factor of a hexagon swings above and below the Poisson value
for alpha in (1.0, 1.5, 2.0, 2.5, 3.0):
    print(f"alpha={alpha}: Fano = {moments(pnd_closed(CircularStateSpec(alpha, 6))).fano:.3f}")
