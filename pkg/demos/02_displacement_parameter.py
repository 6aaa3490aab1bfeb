"""How the displacement chi is chosen, and what is left over.

chi is the root of the leading counter-rotating coefficient C1. The next
coefficient, C3, is not removed; it is the size of what the method neglects.

Run: python demos/02_displacement_parameter.py
"""

import numpy as np

from rabi3q import ModelParams
from rabi3q.transform import c1, coeffs_at, solve_chi

p = ModelParams(1.0, 1.0, 0.4)

# C1 as a function of chi has a single sign change near g / (w_a + w_c).
for chi in np.linspace(0.0, 0.4, 9):
    print(f"chi = {chi:.2f}   C1 = {c1(p, chi):+.5f}")

root = solve_chi(p)
print(f"\nroot chi = {root:.12f}, g/(w_a+w_c) = {p.g / (p.w_a + p.w_c):.6f}")
print(f"C1 at the root: {c1(p, root):.2e}")

# The residual coupling C3 at the root grows with g, fastest for negative
# detuning.
print("\n  g     |C3| w_c=0.8   w_c=1.0   w_c=1.2")
for g in np.linspace(0.1, 1.0, 10):
    c3 = [abs(coeffs_at(ModelParams(1.0, w_c, g), solve_chi(ModelParams(1.0, w_c, g))).C3) for w_c in (0.8, 1.0, 1.2)]
    print(f"  {g:.1f}   " + "   ".join(f"{v:.5f}" for v in c3))
