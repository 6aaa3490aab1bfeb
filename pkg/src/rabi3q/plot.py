"""Minimal dependency-free SVG line charts for sweep rows."""

from __future__ import annotations

import math
from pathlib import Path
from xml.sax.saxutils import escape

from .errors import EmptySeries

WIDTH, HEIGHT = 640, 420
MARGIN = 60
COLORS = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")

# series id -> row attribute (row attributes pass through unchanged)
_ALIASES = {
    "energy_exact": "e_exact",
    "energy_transformed": "e_transformed",
    "energy_quadratic": "e_quadratic",
}


def _num(x: float) -> str:
    return f"{x:.2f}"


def emit_plot(rows, series: str, out_path, w_a: float = 1.0) -> Path:
    """One chart of ``series`` against ``g / w_a``, one polyline per ``w_c``.

    Output bytes depend only on the inputs.
    """
    column = _ALIASES.get(series, series)
    curves: dict[float, list[tuple[float, float]]] = {}
    for r in rows:
        y = getattr(r, column)
        if y is None or math.isnan(y):
            continue
        curves.setdefault(r.w_c, []).append((r.g / w_a, y))
    if not curves:
        raise EmptySeries(f"no finite values for series {series!r}")

    xs = [x for pts in curves.values() for x, _ in pts]
    ys = [y for pts in curves.values() for _, y in pts]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if x1 == x0:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 == y0:
        pad = abs(y0) * 0.1 or 0.5
        y0, y1 = y0 - pad, y1 + pad

    def sx(x):
        return MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2 * MARGIN)

    def sy(y):
        return HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2 * MARGIN)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<line x1="{MARGIN}" y1="{HEIGHT - MARGIN}" x2="{WIDTH - MARGIN}" y2="{HEIGHT - MARGIN}" stroke="black"/>',
        f'<line x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" y2="{HEIGHT - MARGIN}" stroke="black"/>',
        f'<text x="{WIDTH / 2}" y="{HEIGHT - 15}" text-anchor="middle" font-size="14">g/w_a</text>',
        f'<text x="15" y="{HEIGHT / 2}" text-anchor="middle" font-size="14" '
        f'transform="rotate(-90 15 {HEIGHT / 2})">{escape(series)}</text>',
        f'<text x="{MARGIN}" y="{HEIGHT - MARGIN + 18}" font-size="11" text-anchor="middle">{x0:.3g}</text>',
        f'<text x="{WIDTH - MARGIN}" y="{HEIGHT - MARGIN + 18}" font-size="11" text-anchor="middle">{x1:.3g}</text>',
        f'<text x="{MARGIN - 5}" y="{HEIGHT - MARGIN}" font-size="11" text-anchor="end">{y0:.3g}</text>',
        f'<text x="{MARGIN - 5}" y="{MARGIN + 4}" font-size="11" text-anchor="end">{y1:.3g}</text>',
    ]
    for i, (w_c, pts) in enumerate(sorted(curves.items())):
        color = COLORS[i % len(COLORS)]
        if len(pts) == 1:
            x, y = pts[0]
            out.append(f'<circle cx="{_num(sx(x))}" cy="{_num(sy(y))}" r="3" fill="{color}"/>')
        else:
            coords = " ".join(f"{_num(sx(x))},{_num(sy(y))}" for x, y in pts)
            out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{coords}"/>')
        out.append(
            f'<text x="{WIDTH - MARGIN + 5}" y="{MARGIN + 16 * i}" font-size="11" fill="{color}">'
            f"w_c={w_c:g}</text>"
        )
    out.append("</svg>")
    path = Path(out_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(out) + "\n", encoding="utf-8")
    return path
