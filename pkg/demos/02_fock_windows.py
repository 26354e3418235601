"""Amplitude windows in which a circle of coherent states is one Fock state.

For each target level the search scans |alpha| on a 0.01 grid and refines the
edges of the widest run with P_target >= 0.99 by bisection.
"""
from qscissors import delta_alpha_curve, window_for

for N, target in [(12, 0), (12, 12), (24, 0), (24, 24), (24, 48)]:
    win = window_for(N, 0, target)
    print(f"N={N:2d} |{target}>: {win.alpha_lo:.3f} <= |alpha| <= {win.alpha_hi:.3f}"
          f"  (peak P = {win.peak_probability:.5f})")

print("N=12 |24>:", window_for(12, 0, 24))

# the window for |N> opens at small N and widens as N grows; photon addition widens it further
for r in (0, 1, 2):
    curve = delta_alpha_curve(range(8, 17), r)
    print(f"r={r}:", " ".join("-" if w is None else f"{w:.2f}" for _, w in curve))
