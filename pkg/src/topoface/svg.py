"""Deterministic SVG output.

Coordinates stay exact until they are written, then each one is rounded
to nine decimals.  The y axis is flipped so pictures read like the usual
math orientation.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .drawing import Drawing
from .geometry import Point

PALETTE = ["#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1", "#76b7b2", "#edc948", "#ff9da7"]


def decimal(value: Fraction, digits: int = 9) -> str:
    value = Fraction(value)
    scaled = round(value * 10**digits)
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10**digits)
    text = f"{sign}{whole}.{frac:0{digits}d}".rstrip("0").rstrip(".")
    return "0" if text in ("", "-0") else text


def _pts(points: Iterable[Sequence[Fraction]]) -> str:
    return " ".join(f"{decimal(p[0])},{decimal(-Fraction(p[1]))}" for p in points)


def _bounds(d: Drawing, extra=()):
    pts = list(d.vertices.values())
    for line in d.edges.values():
        pts.extend(line.points)
    for poly in extra:
        pts.extend(poly)
    if not pts:
        return Fraction(0), Fraction(0), Fraction(1), Fraction(1)
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    return min(xs), min(ys), max(xs), max(ys)


def render_svg(
    d: Drawing,
    faces: Sequence[Sequence[Point]] = (),
    rects: Sequence[Sequence[Point]] = (),
    size: int = 800,
) -> str:
    """SVG text for the drawing with optional face fills and shaded rectangles."""
    x0, y0, x1, y1 = _bounds(d, list(faces) + list(rects))
    span = max(x1 - x0, y1 - y0) or Fraction(1)
    pad = span / 20
    box = (x0 - pad, -(y1 + pad), (x1 - x0) + 2 * pad, (y1 - y0) + 2 * pad)
    radius = span / 150
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="{" ".join(decimal(v) for v in box)}" preserveAspectRatio="xMidYMid meet">',
        f'<rect class="background" x="{decimal(box[0])}" y="{decimal(box[1])}" '
        f'width="{decimal(box[2])}" height="{decimal(box[3])}" fill="white"/>',
    ]
    for i, poly in enumerate(faces):
        color = PALETTE[i % len(PALETTE)]
        lines.append(f'<polygon class="face" points="{_pts(poly)}" fill="{color}" fill-opacity="0.35" stroke="none"/>')
    for poly in rects:
        lines.append(
            f'<polygon class="rect" points="{_pts(poly)}" fill="#999999" fill-opacity="0.5" '
            'stroke="#555555" stroke-width="1" vector-effect="non-scaling-stroke"/>'
        )
    for (u, v), line in d.edges.items():
        lines.append(
            f'<polyline class="edge" data-u="{u}" data-v="{v}" points="{_pts(line.points)}" fill="none" '
            'stroke="#222222" stroke-width="1" vector-effect="non-scaling-stroke"/>'
        )
    for v, p in d.vertices.items():
        lines.append(
            f'<circle class="vertex" data-id="{v}" cx="{decimal(p.x)}" cy="{decimal(-p.y)}" '
            f'r="{decimal(radius)}" fill="#d62728"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
