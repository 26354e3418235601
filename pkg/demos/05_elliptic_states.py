"""Coherent states placed on an ellipse instead of a circle.

Breaking the rotational symmetry leaks population off the comb, so the best
single-level probability stays well short of 0.99.
"""
from qscissors import EllipticStateSpec, elliptic_reachable_levels, pnd_elliptic

dist = pnd_elliptic(EllipticStateSpec(5.0, 3.2, 16))
print(f"a=5, b=3.2, N=16: P_16 = {dist[16]:.4f}, P_0 = {dist[0]:.4f}")

best = elliptic_reachable_levels([8, 12, 16, 20], [0], alpha_max=8.0, step=0.1)
n = max(best, key=best.get)
print(f"best excited level over the sweep: n={n} with P = {best[n]:.4f}")
