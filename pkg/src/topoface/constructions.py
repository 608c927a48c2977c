"""Explicit drawings: the unit-square family ``D_n``, convex ``C_m``, twisted ``T_m``.

All three are built with exact rational coordinates.  Curved arcs are
realized as polylines; the checked invariants in the layout classes are
what guarantees the realization has the required crossing structure.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction as F

from .drawing import CrossingPattern, Drawing, Edge, edge_key, pair_key
from .errors import SharedEndpoint
from .geometry import (
    Location,
    Point,
    Polygon,
    Polyline,
    convex_hull,
    point_in_polygon,
    polygon_area,
    polyline_crossings,
)


# ---------------------------------------------------------------------------
# crossing predicates on index quadruples

def _check_indices(i, j, k, l):
    if not (i < j and k < l):
        raise ValueError("edges must be given as (i, j), (k, l) with i < j and k < l")
    if len({i, j, k, l}) < 4:
        raise SharedEndpoint(f"edges ({i},{j}) and ({k},{l}) share an endpoint")


def convex_crossing_predicate(i: int, j: int, k: int, l: int) -> bool:
    _check_indices(i, j, k, l)
    return i < k < j < l or k < i < l < j


def twisted_crossing_predicate(i: int, j: int, k: int, l: int) -> bool:
    _check_indices(i, j, k, l)
    return i < k < l < j or k < i < j < l


def dn_crossing_predicate(i1: int, i2: int, i3: int, i4: int) -> bool:
    _check_indices(i1, i2, i3, i4)
    return i1 < i3 < i2 < i4 or i3 < i1 < i4 < i2


PREDICATES = {
    "dn": dn_crossing_predicate,
    "cm": convex_crossing_predicate,
    "tm": twisted_crossing_predicate,
}


def predicate_crosses(n: int, predicate) -> frozenset:
    edges = list(itertools.combinations(range(1, n + 1), 2))
    out = set()
    for e, f in itertools.combinations(edges, 2):
        if len(set(e) | set(f)) == 4 and predicate(*e, *f):
            out.add(pair_key(e, f))
    return frozenset(out)


def pattern_mismatches(pattern: CrossingPattern, predicate) -> list:
    """Edge pairs on which a computed pattern disagrees with a predicate."""
    expected = predicate_crosses(pattern.n, predicate)
    return sorted(expected ^ pattern.crosses)


def _straight(p: Point, q: Point) -> Polyline:
    return Polyline((p, q))


def _join(*chains) -> Polyline:
    pts: list[Point] = []
    for chain in chains:
        for p in chain:
            if not pts or pts[-1] != p:
                pts.append(p)
    return Polyline(tuple(pts))


# ---------------------------------------------------------------------------
# D_n

@dataclass(frozen=True, eq=False)
class DnLayout:
    n: int
    grid: dict[tuple[int, int], Point]
    regions: dict[int, Polygon]
    rectangles: dict[int, Polygon]
    upper: dict[tuple[int, int], Polyline]
    lower: dict[tuple[int, int], Polyline]
    drawing: Drawing

    def targets(self, i1: int, i2: int) -> tuple[int, int]:
        n = self.n
        return i1 + (n + 1 - i2), i2 - i1

    def check(self) -> list[str]:
        """Return violated layout invariants (empty when all hold)."""
        n = self.n
        problems = []
        half = F(1, 2)
        for (i, j), p in self.grid.items():
            if p != Point(F(i - 1, n) + F(j, n * (n + 1)), half):
                problems.append(f"grid point v_{i},{j} misplaced")
        for i, rect in self.rectangles.items():
            if polygon_area(rect) != F(1, 3 * n):
                problems.append(f"R_{i} has wrong area")
            lo, hi = F(i - 1, n), F(i, n)
            if not all(lo < p.x < hi and half < p.y < 1 for p in rect.vertices):
                problems.append(f"R_{i} not inside S_{i}")
        for (i, j), curve in self.upper.items():
            lo, hi = F(i - 1, n), F(i, n)
            inner = curve.points[1:-1]
            if not all(lo < p.x < hi and half < p.y < 1 for p in inner):
                problems.append(f"c_{i},{j} leaves S_{i}")
            if j < i:
                hull = Polygon(tuple(convex_hull(curve.points)))
                if any(point_in_polygon(c, hull) is not Location.INSIDE for c in self.rectangles[i].vertices):
                    problems.append(f"hull of c_{i},{j} misses R_{i}")
        for i in range(1, n + 1):
            mine = [c for (a, _), c in sorted(self.upper.items()) if a == i]
            for a, b in itertools.combinations(mine, 2):
                try:
                    if polyline_crossings(a, b):
                        problems.append(f"upper curves in S_{i} cross")
                except Exception as exc:  # degenerate contact is also a violation
                    problems.append(f"upper curves in S_{i} touch: {exc}")
        return problems


def build_dn(n: int) -> tuple[Drawing, DnLayout]:
    """The unit-square drawing whose every face has area at least ``1/(3n)``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    half = F(1, 2)
    width = F(1, n)
    step = F(1, n * (n + 1))

    def v(i, j):
        return Point(F(i - 1, n) + j * step, half)

    grid = {(i, j): v(i, j) for i in range(1, n + 1) for j in range(1, n + 1)}
    regions = {}
    rectangles = {}
    for i in range(1, n + 1):
        x0, x1 = F(i - 1, n), F(i, n)
        regions[i] = Polygon(((x0, half), (x1, half), (x1, F(1)), (x0, F(1))))
        rx0, rx1 = x0 + width / 10, x1 - width / 10
        ry0, ry1 = F(13, 24), F(23, 24)
        rectangles[i] = Polygon(((rx0, ry0), (rx1, ry0), (rx1, ry1), (rx0, ry1)))

    nest = F(1, 20 * n * n)
    upper: dict[tuple[int, int], Polyline] = {}
    for i in range(1, n + 1):
        b = grid[(i, i)]
        rx0, ry0, rx1, ry1 = (
            rectangles[i].vertices[0].x,
            rectangles[i].vertices[0].y,
            rectangles[i].vertices[2].x,
            rectangles[i].vertices[2].y,
        )
        for j in range(1, i):
            # wrap around an enlarged copy of R_i; farther targets get wider copies
            d = (i - j) * nest
            a = grid[(i, j)]
            box = [Point(rx0 - d, ry0 - d), Point(rx1 + d, ry0 - d), Point(rx1 + d, ry1 + d), Point(rx0 - d, ry1 + d)]
            hull = convex_hull([a, b] + box)
            k = hull.index(b)
            chain = hull[k:] + hull[:k]
            chain = chain[: chain.index(a) + 1]
            upper[(i, j)] = Polyline(tuple(chain))
        for j in range(i + 1, n + 1):
            a = grid[(i, j)]
            slope = F(j - i, 28 * (n + 1))
            apex = Point(a.x, half + slope * (a.x - b.x))
            upper[(i, j)] = Polyline((b, apex, a))

    depth_unit = F(2, 5 * (n + 2))
    lower: dict[tuple[int, int], Polyline] = {}
    edges: dict[Edge, Polyline] = {}
    for i1, i2 in itertools.combinations(range(1, n + 1), 2):
        j1, j2 = i1 + (n + 1 - i2), i2 - i1
        a, b = grid[(i1, j1)], grid[(i2, j2)]
        depth = ((i2 - i1) + F(i1, n + 1)) * depth_unit
        u_shape = Polyline((a, Point(a.x, half - depth), Point(b.x, half - depth), b))
        lower[(i1, i2)] = u_shape
        edges[(i1, i2)] = _join(upper[(i1, j1)].points, u_shape.points, upper[(i2, j2)].points[::-1])

    vertices = {i: grid[(i, i)] for i in range(1, n + 1)}
    drawing = Drawing(vertices, edges, complete=True, meta={"kind": "dn", "n": n})
    return drawing, DnLayout(n, grid, regions, rectangles, upper, lower, drawing)


# ---------------------------------------------------------------------------
# C_m

def build_cm(m: int) -> Drawing:
    """Straight-line complete graph on ``m`` points of a parabola in the unit square."""
    if m < 1:
        raise ValueError("m must be at least 1")
    pts = {i: Point(F(i, m + 1), F(i, m + 1) ** 2) for i in range(1, m + 1)}
    edges = {(i, j): _straight(pts[i], pts[j]) for i, j in itertools.combinations(pts, 2)}
    return Drawing(pts, edges, complete=True, meta={"kind": "cm", "n": m})


# ---------------------------------------------------------------------------
# T_m

@dataclass(frozen=True, eq=False)
class TmLayout:
    m: int
    spine: dict[int, Point]
    axis_points: dict[tuple[int, int], Point]
    curves: dict[tuple[int, int], Polyline]
    hulls: dict[tuple[int, int], Polygon]
    drawing: Drawing

    def check(self) -> list[str]:
        problems = []
        origin = Point(F(0), F(0))
        drawn: list[Polyline] = []
        for (i, j), hull in self.hulls.items():
            if point_in_polygon(origin, hull) is not Location.INSIDE:
                problems.append(f"hull of c_{i},{j} misses the origin")
            for k in range(1, j):
                if point_in_polygon(self.spine[k], hull) is not Location.INSIDE:
                    problems.append(f"hull of c_{i},{j} misses v_{k}")
            for line in drawn:
                if any(point_in_polygon(p, hull) is Location.OUTSIDE for p in line.points):
                    problems.append(f"hull of c_{i},{j} misses an earlier edge")
                    break
            drawn.append(self.drawing.edges[(i, j)])
        return problems


def build_tm(m: int) -> tuple[Drawing, TmLayout]:
    """Twisted drawing: edges cross exactly when their index intervals nest."""
    if m < 1:
        raise ValueError("m must be at least 1")
    spine = {j: Point(F(j), F(0)) for j in range(1, m + 1)}
    total = m * (m - 1) // 2
    axis_points, curves, hulls, edges = {}, {}, {}, {}
    t = 0
    for j in range(2, m + 1):
        for i in range(1, j):
            t += 1
            # each step encloses everything drawn so far inside a larger box
            lean = F(t * t, (total + 1) ** 2)
            u = Point(F(0), F(-t))
            chain = (spine[j], Point(j + lean, F(t)), Point(F(-t), F(t)), Point(F(-t), F(-t)), u)
            curve = Polyline(chain)
            axis_points[(i, j)] = u
            curves[(i, j)] = curve
            hulls[(i, j)] = Polygon(tuple(convex_hull(chain)))
            edges[(i, j)] = _join((spine[i],), chain[::-1])
    drawing = Drawing(spine, edges, complete=True, meta={"kind": "tm", "n": m})
    return drawing, TmLayout(m, spine, axis_points, curves, hulls, drawing)


def build(kind: str, n: int) -> Drawing:
    if kind == "dn":
        return build_dn(n)[0]
    if kind == "cm":
        return build_cm(n)
    if kind == "tm":
        return build_tm(n)[0]
    raise ValueError(f"unknown construction {kind!r}")


def random_straight_line(n: int, seed: int = 0, grid: int = 1000) -> Drawing:
    """Complete straight-line drawing on ``n`` seeded points in general position."""
    import random

    rng = random.Random(seed)
    pts: list[Point] = []
    while len(pts) < n:
        p = Point(F(rng.randint(1, grid - 1), grid), F(rng.randint(1, grid - 1), grid))
        if p in pts:
            continue
        if any(
            (b.x - a.x) * (p.y - a.y) == (b.y - a.y) * (p.x - a.x) for a, b in itertools.combinations(pts, 2)
        ):
            continue
        pts.append(p)
    verts = {i + 1: p for i, p in enumerate(pts)}
    edges = {(i, j): _straight(verts[i], verts[j]) for i, j in itertools.combinations(verts, 2)}
    return Drawing(verts, edges, complete=True, meta={"kind": "random", "n": n, "seed": seed})
