"""Exact rational geometry kernel.

Every predicate here is evaluated exactly.  Public functions take
``Fraction`` coordinates; internally, point sets are rescaled to a common
integer grid so the inner loops run on Python ints instead of fractions.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .errors import DegenerateContact, NonSimplePolygon


class Point(NamedTuple):
    x: Fraction
    y: Fraction


def point(x, y) -> Point:
    return Point(Fraction(x), Fraction(y))


def parse_rational(text) -> Fraction:
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"rational must be a 'p/q' string, got {text!r}")
    return Fraction(text.strip())


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


class Orientation(enum.IntEnum):
    CLOCKWISE = -1
    COLLINEAR = 0
    COUNTERCLOCKWISE = 1


class Location(enum.Enum):
    INSIDE = "inside"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


def cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def orientation(a: Point, b: Point, c: Point) -> Orientation:
    return Orientation(_sign(cross(a, b, c)))


# ---------------------------------------------------------------------------
# integer rescaling

def common_scale(points: Iterable[Sequence[Fraction]]) -> int:
    scale = 1
    for p in points:
        scale = math.lcm(scale, Fraction(p[0]).denominator, Fraction(p[1]).denominator)
    return scale


def to_grid(points: Iterable[Sequence[Fraction]], scale: int) -> list[tuple[int, int]]:
    out = []
    for x, y in points:
        x, y = Fraction(x), Fraction(y)
        out.append((x.numerator * (scale // x.denominator), y.numerator * (scale // y.denominator)))
    return out


def _ratio(num, den) -> Fraction:
    if isinstance(num, int) and isinstance(den, int):
        return Fraction(num, den)
    return Fraction(num) / Fraction(den)


# ---------------------------------------------------------------------------
# segments

@dataclass(frozen=True)
class SegmentIntersection:
    kind: str  # "disjoint" | "proper_cross" | "touch" | "overlap"
    point: Point | None = None
    overlap: tuple[Point, Point] | None = None

    def __bool__(self) -> bool:
        return self.kind != "disjoint"


def _on_segment(p, q, r) -> bool:
    """r is known collinear with pq; test whether it lies on the closed segment."""
    return min(p[0], q[0]) <= r[0] <= max(p[0], q[0]) and min(p[1], q[1]) <= r[1] <= max(p[1], q[1])


def on_segment(p, q, r) -> bool:
    """Whether point r lies on the closed segment pq."""
    return cross(p, q, r) == 0 and _on_segment(p, q, r)


def _param(p, q, r) -> Fraction:
    """Parameter of collinear point r along p->q."""
    dx, dy = q[0] - p[0], q[1] - p[1]
    if dx != 0:
        return _ratio(r[0] - p[0], dx)
    return _ratio(r[1] - p[1], dy)


def contact(p, q, r, s):
    """Classify segment pq against rs on raw coordinates.

    Returns ``None`` when disjoint, ``("cross", t, u)`` or ``("touch", t, u)``
    with parameters along each segment, or ``("overlap", (t0, t1), (u0, u1))``
    with the shared interval expressed along both segments.
    """
    if max(p[0], q[0]) < min(r[0], s[0]) or max(r[0], s[0]) < min(p[0], q[0]):
        return None
    if max(p[1], q[1]) < min(r[1], s[1]) or max(r[1], s[1]) < min(p[1], q[1]):
        return None
    d1 = cross(p, q, r)
    d2 = cross(p, q, s)
    d3 = cross(r, s, p)
    d4 = cross(r, s, q)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        den = d3 - d4
        t = _ratio(d3, den)
        u = _ratio(d1, d1 - d2)
        return ("cross", t, u)
    if d1 == 0 and d2 == 0:
        # collinear: intersect parameter intervals along pq
        tr, ts = _param(p, q, r), _param(p, q, s)
        lo, hi = max(Fraction(0), min(tr, ts)), min(Fraction(1), max(tr, ts))
        if lo > hi:
            return None
        # map the shared interval back onto rs
        u_lo = (lo - tr) / (ts - tr)
        u_hi = (hi - tr) / (ts - tr)
        if lo == hi:
            return ("touch", lo, u_lo)
        return ("overlap", (lo, hi), (u_lo, u_hi))
    if d1 == 0 and _on_segment(p, q, r):
        return ("touch", _param(p, q, r), Fraction(0))
    if d2 == 0 and _on_segment(p, q, s):
        return ("touch", _param(p, q, s), Fraction(1))
    if d3 == 0 and _on_segment(r, s, p):
        return ("touch", Fraction(0), _param(r, s, p))
    if d4 == 0 and _on_segment(r, s, q):
        return ("touch", Fraction(1), _param(r, s, q))
    return None


def _lerp(p: Sequence[Fraction], q: Sequence[Fraction], t: Fraction) -> Point:
    return Point(p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))


def segment_intersection(s1: tuple[Point, Point], s2: tuple[Point, Point]) -> SegmentIntersection:
    (p, q), (r, s) = s1, s2
    if p == q or r == s:
        raise ValueError("segment endpoints must be distinct")
    c = contact(p, q, r, s)
    if c is None:
        return SegmentIntersection("disjoint")
    if c[0] == "cross":
        return SegmentIntersection("proper_cross", _lerp(p, q, c[1]))
    if c[0] == "touch":
        return SegmentIntersection("touch", _lerp(p, q, c[1]))
    (t0, t1), _ = c[1], c[2]
    return SegmentIntersection("overlap", overlap=(_lerp(p, q, t0), _lerp(p, q, t1)))


# ---------------------------------------------------------------------------
# polylines

def _segments_clash(pts: Sequence, closed: bool) -> tuple[int, int] | None:
    """Return an offending segment pair if the chain is not simple."""
    m = len(pts)
    nseg = m if closed else m - 1
    segs = [(pts[i], pts[(i + 1) % m]) for i in range(nseg)]
    boxes = [(min(a[0], b[0]), max(a[0], b[0]), min(a[1], b[1]), max(a[1], b[1])) for a, b in segs]
    for i in range(nseg):
        bi = boxes[i]
        for j in range(i + 1, nseg):
            bj = boxes[j]
            if bi[1] < bj[0] or bj[1] < bi[0] or bi[3] < bj[2] or bj[3] < bi[2]:
                continue
            c = contact(*segs[i], *segs[j])
            if c is None:
                continue
            adjacent_fwd = j == i + 1
            adjacent_wrap = closed and i == 0 and j == nseg - 1
            if c[0] == "touch":
                if adjacent_fwd and c[1] == 1 and c[2] == 0:
                    continue
                if adjacent_wrap and c[1] == 0 and c[2] == 1:
                    continue
            return (i, j)
    return None


@dataclass(frozen=True)
class Polyline:
    """Simple open polygonal curve; validated eagerly."""

    points: tuple[Point, ...]

    def __post_init__(self):
        pts = tuple(Point(Fraction(p[0]), Fraction(p[1])) for p in self.points)
        object.__setattr__(self, "points", pts)
        if len(pts) < 2:
            raise ValueError("a polyline needs at least two points")
        for a, b in zip(pts, pts[1:]):
            if a == b:
                raise ValueError("consecutive polyline points must be distinct")
        scale = common_scale(pts)
        if _segments_clash(to_grid(pts, scale), closed=False) is not None:
            raise DegenerateContact("polyline intersects itself")

    @property
    def start(self) -> Point:
        return self.points[0]

    @property
    def end(self) -> Point:
        return self.points[-1]

    def reversed(self) -> "Polyline":
        return Polyline(self.points[::-1])

    def segments(self) -> list[tuple[Point, Point]]:
        return list(zip(self.points, self.points[1:]))

    def point_at(self, param: Fraction) -> Point:
        """Point at parameter ``index + t`` (segment index plus local fraction)."""
        i = min(int(param), len(self.points) - 2)
        return _lerp(self.points[i], self.points[i + 1], Fraction(param) - i)


@dataclass(frozen=True)
class Crossing:
    point: Point
    param1: Fraction
    param2: Fraction


def raw_polyline_crossings(a: Sequence, b: Sequence, boxes_a=None, boxes_b=None):
    """All proper crossings between two simple chains on raw coordinates.

    Contact at a terminal point shared by both chains is ignored; any other
    touching or overlap raises ``DegenerateContact``.  Returns a list of
    ``(param_a, param_b)`` sorted along ``a``.
    """
    if boxes_a is None:
        boxes_a = segment_boxes(a)
    if boxes_b is None:
        boxes_b = segment_boxes(b)
    terminals = {tuple(a[0]), tuple(a[-1])} & {tuple(b[0]), tuple(b[-1])}
    out = []
    na, nb = len(a) - 1, len(b) - 1
    for i in range(na):
        bi = boxes_a[i]
        p, q = a[i], a[i + 1]
        for j in range(nb):
            bj = boxes_b[j]
            if bi[1] < bj[0] or bj[1] < bi[0] or bi[3] < bj[2] or bj[3] < bi[2]:
                continue
            c = contact(p, q, b[j], b[j + 1])
            if c is None:
                continue
            if c[0] == "cross":
                out.append((i + c[1], j + c[2]))
                continue
            if c[0] == "touch":
                sa, sb = i + c[1], j + c[2]
                if sa in (0, na) and sb in (0, nb) and tuple(a[0] if sa == 0 else a[-1]) in terminals:
                    continue
                raise DegenerateContact(f"curves touch without crossing (segments {i}, {j})")
            raise DegenerateContact(f"curves overlap along a segment (segments {i}, {j})")
    out.sort()
    return out


def segment_boxes(pts: Sequence) -> list[tuple]:
    return [
        (min(p[0], q[0]), max(p[0], q[0]), min(p[1], q[1]), max(p[1], q[1]))
        for p, q in zip(pts, pts[1:])
    ]


def polyline_crossings(p1: Polyline, p2: Polyline) -> list[Crossing]:
    scale = common_scale(p1.points + p2.points)
    a, b = to_grid(p1.points, scale), to_grid(p2.points, scale)
    found = raw_polyline_crossings(a, b)
    return [Crossing(p1.point_at(s), s, t) for s, t in found]


# ---------------------------------------------------------------------------
# polygons

@dataclass(frozen=True)
class Polygon:
    vertices: tuple[Point, ...]
    # set by callers that already know the boundary is simple
    trusted: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        pts = tuple(Point(Fraction(p[0]), Fraction(p[1])) for p in self.vertices)
        object.__setattr__(self, "vertices", pts)
        if len(pts) < 3:
            raise ValueError("a polygon needs at least three vertices")

    @cached_property
    def grid(self) -> tuple[int, list[tuple[int, int]]]:
        scale = common_scale(self.vertices)
        return scale, to_grid(self.vertices, scale)

    @cached_property
    def twice_signed_area_grid(self) -> int:
        pts = self.grid[1]
        total = 0
        for (x0, y0), (x1, y1) in zip(pts, pts[1:] + pts[:1]):
            total += x0 * y1 - x1 * y0
        return total

    @property
    def signed_area(self) -> Fraction:
        scale = self.grid[0]
        return Fraction(self.twice_signed_area_grid, 2 * scale * scale)

    @property
    def is_ccw(self) -> bool:
        return self.twice_signed_area_grid > 0

    @cached_property
    def bbox(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        xs = [p.x for p in self.vertices]
        ys = [p.y for p in self.vertices]
        return min(xs), max(xs), min(ys), max(ys)

    def is_simple(self) -> bool:
        if self.trusted:
            return True
        return self._simple

    @cached_property
    def _simple(self) -> bool:
        if self.twice_signed_area_grid == 0:
            return False
        return _segments_clash(self.grid[1], closed=True) is None


def polygon_area(p: Polygon) -> Fraction:
    if not p.is_simple():
        raise NonSimplePolygon("polygon boundary intersects itself")
    return abs(p.signed_area)


def locate_raw(qx, qy, pts: Sequence) -> Location:
    inside = False
    ax, ay = pts[-1]
    for bx, by in pts:
        if (ax <= qx <= bx or bx <= qx <= ax) and (ay <= qy <= by or by <= qy <= ay):
            if (bx - ax) * (qy - ay) == (by - ay) * (qx - ax):
                return Location.BOUNDARY
        if (ay > qy) != (by > qy):
            dy = by - ay
            lhs = (qx - ax) * dy
            rhs = (qy - ay) * (bx - ax)
            if (lhs < rhs) if dy > 0 else (lhs > rhs):
                inside = not inside
        ax, ay = bx, by
    return Location.INSIDE if inside else Location.OUTSIDE


def _to_frame(q: Sequence[Fraction], scale: int):
    x, y = Fraction(q[0]) * scale, Fraction(q[1]) * scale
    return (x.numerator if x.denominator == 1 else x), (y.numerator if y.denominator == 1 else y)


def point_in_polygon(q: Point, p: Polygon) -> Location:
    scale, pts = p.grid
    qx, qy = _to_frame(q, scale)
    return locate_raw(qx, qy, pts)


# ---------------------------------------------------------------------------
# interior disjointness

def _boundary_states(pa: list, ccw_a: bool, pb: list, ccw_b: bool):
    """Classify the boundary of polygon ``pa`` against polygon ``pb``.

    The boundary of ``pa`` is cut at every point where it meets the boundary
    of ``pb``; each maximal stretch between such points is either inside,
    outside, or lies on ``pb``'s boundary (then reported with whether the two
    interiors sit on the same side of it).  Yields one state per stretch.
    """
    m, k = len(pa), len(pb)
    bsegs = [(pb[j], pb[(j + 1) % k]) for j in range(k)]
    bboxes = [
        (min(r[0], s[0]), max(r[0], s[0]), min(r[1], s[1]), max(r[1], s[1])) for r, s in bsegs
    ]
    run_classified = False
    for i in range(m):
        p, q = pa[i], pa[(i + 1) % m]
        lo_x, hi_x = min(p[0], q[0]), max(p[0], q[0])
        lo_y, hi_y = min(p[1], q[1]), max(p[1], q[1])
        events = set()
        overlaps = []
        for j, (r, s) in enumerate(bsegs):
            bj = bboxes[j]
            if hi_x < bj[0] or bj[1] < lo_x or hi_y < bj[2] or bj[3] < lo_y:
                continue
            c = contact(p, q, r, s)
            if c is None:
                continue
            if c[0] == "overlap":
                t0, t1 = c[1]
                events.add(t0)
                events.add(t1)
                dot = (q[0] - p[0]) * (s[0] - r[0]) + (q[1] - p[1]) * (s[1] - r[1])
                same = ccw_a == (ccw_b == (dot > 0))
                overlaps.append((t0, t1, same))
            else:
                events.add(c[1])
        cuts = sorted(events | {Fraction(0), Fraction(1)})
        if Fraction(0) in events:
            run_classified = False
        for t0, t1 in zip(cuts, cuts[1:]):
            shared = next((o for o in overlaps if o[0] <= t0 and t1 <= o[1]), None)
            if shared is not None:
                yield "on_same" if shared[2] else "on_opposite"
            elif not run_classified:
                tm = (t0 + t1) / 2
                mx = p[0] + tm * (q[0] - p[0])
                my = p[1] + tm * (q[1] - p[1])
                loc = locate_raw(mx, my, pb)
                yield "inside" if loc is Location.INSIDE else "outside"
                run_classified = True
            if t1 in events:
                run_classified = False


def _common_frame(p1: Polygon, p2: Polygon):
    scale = math.lcm(p1.grid[0], p2.grid[0])
    a = [(x * (scale // p1.grid[0]), y * (scale // p1.grid[0])) for x, y in p1.grid[1]]
    b = [(x * (scale // p2.grid[0]), y * (scale // p2.grid[0])) for x, y in p2.grid[1]]
    return a, b


def _bboxes_apart(p1: Polygon, p2: Polygon) -> bool:
    a, b = p1.bbox, p2.bbox
    return a[1] <= b[0] or b[1] <= a[0] or a[3] <= b[2] or b[3] <= a[2]


def interiors_disjoint(p1: Polygon, p2: Polygon) -> bool:
    """True iff the open interiors of two simple polygons do not meet."""
    if _bboxes_apart(p1, p2):
        return True
    a, b = _common_frame(p1, p2)
    for state in _boundary_states(a, p1.is_ccw, b, p2.is_ccw):
        if state in ("inside", "on_same"):
            return False
    for state in _boundary_states(b, p2.is_ccw, a, p1.is_ccw):
        if state in ("inside", "on_same"):
            return False
    return True


def polygon_within(inner: Polygon, outer: Polygon) -> bool:
    """True iff the open interior of ``inner`` lies in the closed region of ``outer``."""
    a, b = _common_frame(inner, outer)
    for state in _boundary_states(a, inner.is_ccw, b, outer.is_ccw):
        if state == "outside":
            return False
    return True


def convex_hull(points: Iterable[Point]) -> list[Point]:
    """Counterclockwise hull without collinear points (monotone chain)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]
