"""Exact lower-convex polygons with integer abscissae and rational ordinates."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ._util import DomainError, as_fraction, format_rational, padic_valuation


@dataclass(frozen=True)
class NewtonPolygon:
    """Vertex list of a lower convex polygon, starting at (0, 0).

    Vertices are kept in canonical form: abscissae strictly increase and so do
    the slopes, so two polygons are equal exactly when their vertex tuples are.
    """

    vertices: tuple[tuple[int, Fraction], ...]

    def __post_init__(self):
        verts = tuple((int(x), as_fraction(y)) for x, y in self.vertices)
        if not verts or verts[0] != (0, 0):
            raise DomainError("polygon must start at (0, 0)")
        prev_slope = None
        for (x0, y0), (x1, y1) in zip(verts, verts[1:]):
            if x1 <= x0:
                raise DomainError("abscissae must strictly increase")
            slope = (y1 - y0) / (x1 - x0)
            if prev_slope is not None and slope <= prev_slope:
                raise DomainError("slopes must strictly increase")
            prev_slope = slope
        object.__setattr__(self, "vertices", verts)

    @property
    def width(self) -> int:
        return self.vertices[-1][0]

    @property
    def endpoint(self) -> tuple[int, Fraction]:
        return self.vertices[-1]

    def value_at(self, x) -> Fraction:
        """Ordinate of the piecewise-linear interpolant at ``x``."""
        x = as_fraction(x)
        if x < 0 or x > self.width:
            raise DomainError(f"x = {x} outside [0, {self.width}]")
        for (x0, y0), (x1, y1) in zip(self.vertices, self.vertices[1:]):
            if x0 <= x <= x1:
                return y0 + (y1 - y0) * (x - x0) / (x1 - x0)
        return self.vertices[0][1]

    def slopes(self) -> list[tuple[Fraction, int]]:
        """``(slope, horizontal length)`` for every edge, in order."""
        return [
            ((y1 - y0) / (x1 - x0), x1 - x0)
            for (x0, y0), (x1, y1) in zip(self.vertices, self.vertices[1:])
        ]

    def slope_multiset(self) -> list[Fraction]:
        out = []
        for s, length in self.slopes():
            out.extend([s] * length)
        return out

    def to_json(self) -> list[list[str]]:
        return [[str(x), format_rational(y)] for x, y in self.vertices]

    @classmethod
    def from_json(cls, obj: Sequence[Sequence[str]]) -> "NewtonPolygon":
        return cls(tuple((int(x), Fraction(y)) for x, y in obj))

    def __str__(self):
        return " ".join(f"({x},{format_rational(y)})" for x, y in self.vertices)


def _cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lower_convex_hull(points: Iterable[tuple[int, object]]) -> NewtonPolygon:
    """Lower hull of the finite points; ``inf`` ordinates are dropped."""
    best: dict[int, Fraction] = {}
    seen = False
    for x, y in points:
        seen = True
        if isinstance(y, float) and math.isinf(y):
            continue
        y = as_fraction(y)
        x = int(x)
        if x not in best or y < best[x]:
            best[x] = y
    if not seen:
        raise DomainError("empty point set")
    if not best:
        raise DomainError("no point with a finite ordinate")
    if best.get(0) != 0:
        raise DomainError("the point (0, 0) must be present")
    hull: list[tuple[int, Fraction]] = []
    for pt in sorted(best.items()):
        if pt[0] < 0:
            raise DomainError("negative abscissa")
        # pop while the turn is clockwise or straight; drops collinear points
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    return NewtonPolygon(tuple(hull))


def hodge_polygon(d: int) -> NewtonPolygon:
    if d < 3:
        raise DomainError("d must be at least 3")
    return lower_convex_hull((n, Fraction(n * (n + 1), 2 * d)) for n in range(d))


def lies_on_or_above(P: NewtonPolygon, Q: NewtonPolygon) -> bool:
    if P.width != Q.width:
        raise DomainError(f"span mismatch: {P.width} vs {Q.width}")
    return all(P.value_at(x) >= Q.value_at(x) for x in range(P.width + 1))


def scale(P: NewtonPolygon, factor: int) -> NewtonPolygon:
    if factor < 1:
        raise DomainError("scale factor must be a positive integer")
    return NewtonPolygon(tuple((factor * x, factor * y) for x, y in P.vertices))


def join_segments(segments: Iterable[tuple[object, int]]) -> NewtonPolygon:
    """Concatenate ``(slope, length)`` segments from the origin in slope order."""
    segs = []
    for slope, length in segments:
        if int(length) <= 0:
            raise DomainError("segment length must be positive")
        segs.append((as_fraction(slope), int(length)))
    segs.sort()
    pts = [(0, Fraction(0))]
    for slope, length in segs:
        x, y = pts[-1]
        pts.append((x + length, y + slope * length))
    return lower_convex_hull(pts)


def padic_newton_polygon(coeffs: Sequence[int], p: int) -> NewtonPolygon:
    """Classical p-adic Newton polygon of an integer polynomial with constant term 1."""
    pts = [(k, padic_valuation(c, p)) for k, c in enumerate(coeffs) if c]
    return lower_convex_hull(pts)


# -- SVG ----------------------------------------------------------------------

_VIEW_W, _VIEW_H, _PAD = 640, 400, 48


def polygons_svg(
    polygons: Sequence[tuple[str, NewtonPolygon]],
    title: str = "",
) -> str:
    """Deterministic SVG overlay; the first polygon is drawn solid, others dashed."""
    xmax = max(P.width for _, P in polygons) or 1
    ymax = max(max(y for _, y in P.vertices) for _, P in polygons) or Fraction(1)
    sx = Fraction(_VIEW_W - 2 * _PAD, xmax)
    sy = Fraction(_VIEW_H - 2 * _PAD) / ymax

    def xy(x, y):
        return (
            f"{float(_PAD + sx * x):.3f}",
            f"{float(_VIEW_H - _PAD - sy * y):.3f}",
        )

    colors = ["#1f4e9c", "#b0371f", "#2f7d32", "#6a3d9a"]
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_VIEW_W} {_VIEW_H}" '
        f'width="{_VIEW_W}" height="{_VIEW_H}">',
        f'<rect x="0" y="0" width="{_VIEW_W}" height="{_VIEW_H}" fill="white"/>',
    ]
    x0, y0 = xy(0, 0)
    x1, _ = xy(xmax, 0)
    _, y1 = xy(0, ymax)
    lines.append(f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="#888"/>')
    lines.append(f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="#888"/>')
    if title:
        lines.append(f'<text x="{_PAD}" y="24" font-size="14" font-family="monospace">{title}</text>')
    for k, (label, P) in enumerate(polygons):
        color = colors[k % len(colors)]
        dash = "" if k == 0 else ' stroke-dasharray="6,4"'
        pts = " ".join(",".join(xy(x, y)) for x, y in P.vertices)
        lines.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="2"{dash}/>'
        )
        for x, y in P.vertices:
            cx, cy = xy(x, y)
            lines.append(f'<circle cx="{cx}" cy="{cy}" r="3" fill="{color}"/>')
            lines.append(
                f'<text x="{cx}" y="{float(cy) - 6 - 12 * k:.3f}" font-size="10" '
                f'font-family="monospace" fill="{color}">({x},{format_rational(y)})</text>'
            )
        lines.append(
            f'<text x="{_VIEW_W - _PAD - 120}" y="{24 + 14 * k}" font-size="11" '
            f'font-family="monospace" fill="{color}">{label}</text>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
