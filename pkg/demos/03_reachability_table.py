"""Which Fock states can be cut out of circular superpositions at all.

Plain circles only reach |0> and sufficiently high levels; adding photons
fills the gap below. The elliptic sweep is skipped here to keep the run short
(use ``qscissors table`` for the full table).
"""
from qscissors import reachability_table

N_MAX = 16
for rec in reachability_table(16, N_MAX, 10, elliptic=False):
    # r == fock_n is the photon-added vacuum, reachable for every N as |alpha| -> 0
    vacuum = sum(1 for _, r in rec.gpacs_combos if r == rec.fock_n)
    shown = ", ".join(f"({N},{r})" for N, r in rec.nontrivial_gpacs()) or "-"
    note = f"  +vacuum with r={rec.fock_n} for {vacuum}/{N_MAX} orders" if vacuum else ""
    print(f"|{rec.fock_n:2d}>  circle orders {rec.gcs_orders or '-'}  photon-added (N,r): {shown}{note}")
