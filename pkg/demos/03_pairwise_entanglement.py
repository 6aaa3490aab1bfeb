"""Entanglement between two of the three qubits as the coupling grows.

Trace out the field and one qubit, then apply the X-state formula. The result
rises quadratically, peaks, and decays. The transformed state's entanglement
drops to exactly zero at a finite g. The exact state's keeps falling steeply
but stays positive.

Run: python demos/03_pairwise_entanglement.py
"""

import numpy as np

from rabi3q import ModelParams, solve_converged, transformed_ground
from rabi3q.model import auto_cutoff
from rabi3q.observables import partial_transpose_negativity, state_entanglement, two_qubit_rdm
from rabi3q.sweep import find_entanglement_death

p = ModelParams(1.0, 1.0, 0.5)
ex = solve_converged(p, 1e-10, auto_cutoff(0.5))
rdm = two_qubit_rdm(ex.state)
np.set_printoptions(precision=5, suppress=True)
print("pair matrix at g = 0.5 (basis ee, es, se, ss):")
print(rdm.rho.real)
print(f"X formula {state_entanglement(ex.state):.6f}, negativity {partial_transpose_negativity(rdm):.6f}")

print("\n  g     exact       transformed   g^2/8")
for g in (0.05, 0.1, 0.2, 0.5, 0.8, 1.0, 1.5, 2.0, 3.0):
    q = ModelParams(1.0, 1.0, g)
    e = solve_converged(q, 1e-10, auto_cutoff(g))
    t = transformed_ground(q, e.cutoff_used)
    print(f"  {g:.2f}  {state_entanglement(e.state):.3e}   {state_entanglement(t.state):.3e}     {g * g / 8:.3e}")

for w_c in (0.8, 1.0, 1.2):
    g_star = find_entanglement_death(1.0, w_c, "transformed", g_max=2.0, g_step=0.02)
    print(f"transformed-state entanglement vanishes at g = {g_star:.3f} for w_c = {w_c}")
