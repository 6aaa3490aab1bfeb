"""Exact ground state against the displacement-transformed approximation.

Run: python demos/01_exact_vs_transformed.py
"""

import numpy as np

from rabi3q import ModelParams, fidelity, solve_converged, transformed_ground
from rabi3q.model import auto_cutoff

# Start with one point at resonance. The exact solver doubles the photon
# cutoff until the energy stops moving by more than 1e-10.
p = ModelParams(w_a=1.0, w_c=1.0, g=0.5)
exact = solve_converged(p, tol=1e-10, start_cutoff=auto_cutoff(p.g / p.w_c))
approx = transformed_ground(p, exact.cutoff_used)

print(f"E exact       {exact.energy:.10f}  (cutoff {exact.cutoff_used})")
print(f"E transformed {approx.energy:.10f}  (chi = {approx.chi:.6f})")
print(f"relative error {abs(approx.energy - exact.energy) / abs(exact.energy):.4%}")
print(f"fidelity       {fidelity(exact.state, approx.state):.6f}")

# The approximation stays close while g is below about half the qubit
# frequency, and drifts once the coupling gets larger.
print("\n  w_c    g     rel err    fidelity")
for w_c in (0.8, 1.0, 1.2):
    for g in np.linspace(0.2, 1.0, 5):
        q = ModelParams(1.0, w_c, g)
        ex = solve_converged(q, 1e-10, auto_cutoff(g / w_c))
        tr = transformed_ground(q, ex.cutoff_used)
        err = abs(tr.energy - ex.energy) / abs(ex.energy)
        print(f"  {w_c:.1f}  {g:.2f}  {err:9.4%}  {fidelity(ex.state, tr.state):.5f}")
