"""Regenerate every figure data file and draw them as SVG.

Writes into ./figures by default. The same thing is available from the
command line as ``rabi3q figures --svg``.

Run: python demos/04_regenerate_figures.py [out_dir] [points]
"""

import sys

from rabi3q.sweep import FigureConfig, generate_figures, read_csv

out = sys.argv[1] if len(sys.argv) > 1 else "figures"
points = int(sys.argv[2]) if len(sys.argv) > 2 else 201

files = generate_figures(FigureConfig(out, points=points, svg=True))
for name, path in files.items():
    print(f"{name:22s} {path}")

# A quick look at the combined energy table.
rows = read_csv(files["fig1_energy_combined"])
worst = max((r for r in rows if r["g"] <= 0.5), key=lambda r: r["rel_err"])
print(f"\nlargest energy error for g <= 0.5: {worst['rel_err']:.3%} at w_c={worst['w_c']}, g={worst['g']:.3f}")
