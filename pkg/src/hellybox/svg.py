"""Minimal SVG drawings of planar certificates."""

from __future__ import annotations

from typing import Sequence

SIZE = 480
MARGIN = 20


def polygon_svg(vertices: Sequence, points: Sequence = ()) -> str:
    """Polygon outline with optional host points, rescaled to a fixed canvas.

    Coordinates are converted to floats here only for drawing.
    """
    allpts = [tuple(map(float, v)) for v in vertices] + [tuple(map(float, p)) for p in points]
    xs = [p[0] for p in allpts] or [0.0]
    ys = [p[1] for p in allpts] or [0.0]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or 1.0
    scale = (SIZE - 2 * MARGIN) / span

    def tr(p):
        return MARGIN + (float(p[0]) - min(xs)) * scale, SIZE - MARGIN - (float(p[1]) - min(ys)) * scale

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}">']
    for p in points:
        x, y = tr(p)
        parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="2" fill="#999"/>')
    path = " ".join(f"{x:.2f},{y:.2f}" for x, y in map(tr, vertices))
    parts.append(f'<polygon points="{path}" fill="none" stroke="#c03" stroke-width="1.5"/>')
    for v in vertices:
        x, y = tr(v)
        parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="#c03"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
