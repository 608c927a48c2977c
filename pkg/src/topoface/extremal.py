"""Searches for pairwise disjoint 4-faces and k-faces, plus the edge-rerouting move.

Existence guarantees from the underlying theory back several searches
here; when a search that should succeed comes up empty we raise
``LemmaViolation`` instead of returning a partial answer.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .constructions import (
    build_cm,
    build_tm,
    convex_crossing_predicate,
    predicate_crosses,
    twisted_crossing_predicate,
)
from .drawing import (
    CrossingPattern,
    Drawing,
    Edge,
    PlaneSubgraph,
    crossing_pattern,
    edge_key,
    pair_key,
    weak_isomorphism_check,
)
from .errors import (
    BudgetExceeded,
    DegenerateContact,
    InvalidDrawing,
    IterationCapExceeded,
    LemmaViolation,
    NonSimplePolygon,
    NoPlane4Cycle,
    NotFound,
    NotMutable,
)
from .faces import (
    ArrangementFaces,
    FaceRegion,
    PlaneCycle,
    arrangement_faces,
    default_budget,
    enumerate_plane_cycles,
    face_area,
    faces_disjoint,
    interior_vertex_count,
    interior_vertices,
    is_biconnected,
    region_within,
)
from .geometry import Location, Point, Polygon, Polyline, convex_hull, format_rational, point_in_polygon


@dataclass(frozen=True, eq=False)
class FourCell(FaceRegion):
    def __post_init__(self):
        if self.cycle.k != 4:
            raise ValueError("a 4-cell needs a 4-cycle")

    @classmethod
    def of(cls, region: FaceRegion) -> "FourCell":
        return cls(region.cycle, region.bounded)


@dataclass
class CellCollection:
    cells: list[FourCell] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.cells)

    @property
    def bounded(self) -> list[FourCell]:
        return [c for c in self.cells if c.bounded]

    def problems(self) -> list[str]:
        out = []
        if sum(not c.bounded for c in self.cells) > 1:
            out.append("more than one unbounded cell")
        for a, b in itertools.combinations(self.cells, 2):
            if not faces_disjoint(a, b):
                out.append(f"{a} and {b} overlap")
        return out

    def to_json(self) -> list[dict]:
        return [
            {
                "cycle": list(c.cycle.vertices),
                "boundedSide": c.bounded,
                "area": format_rational(face_area(c)) if c.bounded else None,
            }
            for c in self.cells
        ]


# ---------------------------------------------------------------------------
# non-crossing edges from an outside vertex

def frv_noncrossing_edges(d: Drawing, h: PlaneSubgraph, v: int) -> list[Edge]:
    """Edges from ``v`` to vertices of ``h`` that cross no edge of ``h``."""
    if v in h.vertices:
        raise ValueError(f"vertex {v} already belongs to the subgraph")
    if len(h.vertices) < 2 or not h.is_connected():
        raise ValueError("subgraph must be connected with at least two vertices")
    pattern = crossing_pattern(d)
    out = []
    for w in sorted(h.vertices):
        e = edge_key(v, w)
        if e not in d.edges:
            raise ValueError(f"drawing lacks edge {e}")
        if not any(pair_key(e, f) in pattern.crosses for f in h.edges):
            out.append(e)
    if len(out) < 2:
        raise LemmaViolation(f"only {len(out)} non-crossing edges from vertex {v}")
    return out


# ---------------------------------------------------------------------------
# plane augmentation

def augment_to_spanning_biconnected(
    d: Drawing, h: PlaneSubgraph, vertices=None, budget: int | None = None
) -> PlaneSubgraph:
    """Extend ``h`` by non-crossing edges until it is biconnected on ``vertices``.

    ``vertices`` defaults to every vertex of ``d``.
    """
    target = sorted(d.vertices if vertices is None else set(vertices))
    if not h.vertices <= set(target):
        raise ValueError("subgraph has vertices outside the target set")
    if h.vertices == set(target) and len(target) >= 3 and is_biconnected(target, h.edges):
        return h
    pattern = crossing_pattern(d)
    crosses = pattern.crosses
    candidates = [e for e in itertools.combinations(target, 2) if e not in h.edges]
    for e in candidates:
        if e not in d.edges:
            raise ValueError(f"drawing lacks edge {e}")
    if len(target) < 3:
        return PlaneSubgraph.of(d, set(h.edges) | set(candidates), target)

    def addable(e, current):
        return e not in current and not any(pair_key(e, f) in crosses for f in current)

    current = set(h.edges)
    for e in candidates:
        if addable(e, current):
            current.add(e)
    if is_biconnected(target, current):
        return PlaneSubgraph.of(d, current, target)

    # the greedy choice got stuck; search other maximal extensions
    budget = default_budget() if budget is None else budget
    seen: set[frozenset] = set()
    steps = 0

    def search(chosen: frozenset):
        nonlocal steps
        steps += 1
        if steps > budget:
            raise BudgetExceeded("augmentation search exceeded its budget")
        if chosen in seen:
            return None
        seen.add(chosen)
        options = [e for e in candidates if addable(e, chosen)]
        if not options:
            return chosen if is_biconnected(target, chosen) else None
        for e in options:
            got = search(chosen | {e})
            if got is not None:
                return got
        return None

    found = search(frozenset(h.edges))
    if found is None:
        raise LemmaViolation("no plane biconnected extension exists")
    return PlaneSubgraph.of(d, found, target)


# ---------------------------------------------------------------------------
# a 4-cell inside a given face

def _as_region(target) -> FaceRegion:
    if isinstance(target, PlaneCycle):
        return FaceRegion(target, True)
    return target


def _exhaustive_4cell(d: Drawing, target: FaceRegion, candidates, budget) -> FourCell:
    if candidates is None:
        candidates = enumerate_plane_cycles(d, 4, budget=budget)
    options = []
    for c in candidates:
        for bounded in (True,) if target.bounded else (True, False):
            cell = FourCell(c, bounded)
            if cell.same_cell(target) or not region_within(cell, target):
                continue
            options.append((interior_vertex_count(cell, d), not bounded, c.vertices, cell))
    if not options:
        raise NotFound(f"no 4-cell inside {target}")
    return min(options, key=lambda t: t[:3])[3]


def _split_4cell(d: Drawing, target: FaceRegion, depth: int = 0) -> FourCell | None:
    """Split the face by two non-crossing edges from an interior vertex."""
    inside = interior_vertices(target, d)
    if not inside or depth > d.n:
        return None
    v = min(inside)
    seq = list(target.cycle.vertices)
    h = PlaneSubgraph.of(d, target.cycle.edges)
    try:
        spokes = [w for e in frv_noncrossing_edges(d, h, v) for w in e if w != v]
    except LemmaViolation:
        return None
    pos = {w: i for i, w in enumerate(seq)}
    k = len(seq)
    pieces = []
    for w1, w2 in itertools.combinations(spokes, 2):
        i, j = pos[w1], pos[w2]
        for a, b in ((i, j), (j, i)):
            arc = [seq[(a + t) % k] for t in range((b - a) % k + 1)]
            pieces.append([v] + arc)
    pieces.sort(key=lambda p: (len(p), p))
    for piece in pieces:
        if len(piece) < 3:
            continue
        cycle = PlaneCycle(d, piece)
        region = FaceRegion(cycle, True)
        if not region_within(region, target):
            continue
        if len(piece) == 4:
            return FourCell(cycle, True)
        if interior_vertices(region, d):
            got = _split_4cell(d, region, depth + 1)
            if got is not None:
                return got
    return None


def find_4face_in_face(
    d: Drawing, target, strategy: str = "exhaustive", candidates=None, budget: int | None = None
) -> FourCell:
    """A 4-cell lying inside ``target`` (a plane cycle's bounded face, or any FaceRegion)."""
    target = _as_region(target)
    if strategy not in ("exhaustive", "recursive"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if strategy == "recursive" and target.bounded:
        got = _split_4cell(d, target)
        if got is not None:
            return got
    return _exhaustive_4cell(d, target, candidates, budget)


# ---------------------------------------------------------------------------
# the improvement loop

@dataclass
class Certificate:
    h: PlaneSubgraph
    h_prime: PlaneSubgraph
    faces: ArrangementFaces
    collection_size: int
    bounded_cells: int
    iterations: int
    factor: Fraction | int
    n: int

    @property
    def per_face(self) -> list[tuple[int, int]]:
        return [(c.size, c.interior) for c in self.faces.cells]

    @property
    def e(self) -> int:
        return len(self.h_prime.edges)

    @property
    def v(self) -> int:
        return len(self.h_prime.vertices)

    def problems(self) -> list[str]:
        out = []
        if not self.h.edges <= self.h_prime.edges:
            out.append("H is not contained in H'")
        if self.h_prime.vertices != self.h.vertices:
            out.append("H' does not span the vertices of H")
        if not is_biconnected(self.h_prime.vertices, self.h_prime.edges):
            out.append("H' is not biconnected")
        for size, inner in self.per_face:
            if inner >= self.factor * size:
                out.append(f"face with |f|={size} has {inner} interior vertices")
        if 2 * self.e != sum(size for size, _ in self.per_face):
            out.append("2e(H') differs from the sum of face sizes")
        if self.v >= 3 and 3 * self.v - 6 < self.e:
            out.append("3v(H') - 6 < e(H')")
        if sum(size + inner for size, inner in self.per_face) < self.n:
            out.append("faces miss some vertex")
        if 4 * self.collection_size < len(self.h.vertices):
            out.append("|C| < v(H)/4")
        return out

    def to_json(self) -> dict:
        return {
            "counts": {
                "n": self.n,
                "e_H_prime": self.e,
                "v_H_prime": self.v,
                "v_H": len(self.h.vertices),
                "collection": self.collection_size,
                "bounded_cells": self.bounded_cells,
                "iterations": self.iterations,
                "factor": self.factor,
            },
            "H": [list(e) for e in sorted(self.h.edges)],
            "H_prime": [list(e) for e in sorted(self.h_prime.edges)],
            "faces": [
                dict(c.to_json(), outer=(i == self.faces.outer)) for i, c in enumerate(self.faces.cells)
            ],
        }


def disjoint_4faces(
    d: Drawing,
    factor=6,
    strategy: str = "exhaustive",
    budget: int | None = None,
    max_iterations: int | None = None,
    initial=None,
) -> tuple[CellCollection, Certificate]:
    """Pairwise disjoint 4-cells, improved until every face of the augmented
    boundary graph has fewer than ``factor * |f|`` interior vertices.

    ``initial`` replaces the greedy starting collection (smallest faces first).
    """
    if d.n < 4:
        raise NoPlane4Cycle("fewer than four vertices")
    plane4 = enumerate_plane_cycles(d, 4, budget=budget)
    if not plane4:
        raise NoPlane4Cycle("the drawing has no plane 4-cycle")
    cap = 10 * d.n if max_iterations is None else max_iterations
    iterations = 0

    def tick():
        nonlocal iterations
        iterations += 1
        if iterations > cap:
            raise IterationCapExceeded(f"more than {cap} improvement steps")

    ranked = sorted(plane4, key=lambda c: (face_area(FaceRegion(c, True)), c.vertices))
    cells: list[FourCell] = []
    if initial is not None:
        cells = [FourCell.of(c) for c in initial]
        if CellCollection(cells).problems():
            raise ValueError("initial cells are not a disjoint collection")
        ranked = []
    for c in ranked:
        cell = FourCell(c, True)
        if all(faces_disjoint(cell, other) for other in cells):
            cells.append(cell)
            tick()

    while True:
        edges = {e for c in cells for e in c.cycle.edges}
        h = PlaneSubgraph.of(d, edges)
        h_prime = augment_to_spanning_biconnected(d, h, vertices=h.vertices, budget=budget)
        decomposition = arrangement_faces(h_prime)
        crowded = [c for c in decomposition.cells if c.interior >= factor * c.size]
        crowded.sort(key=lambda c: c.region.cycle.vertices)
        changed = False
        for face in crowded:
            try:
                new = find_4face_in_face(d, face.region, strategy, candidates=plane4, budget=budget)
            except NotFound:
                continue
            owners = [i for i, c in enumerate(cells) if region_within(face.region, c)]
            if owners:
                cells[owners[0]] = new
            else:
                if not all(faces_disjoint(new, other) for other in cells):
                    raise AssertionError("new cell overlaps the collection")
                cells.append(new)
            tick()
            changed = True
            break
        if not changed:
            break

    collection = CellCollection(cells)
    cert = Certificate(
        h, h_prime, decomposition, len(cells), len(collection.bounded), iterations, factor, d.n
    )
    return collection, cert


# ---------------------------------------------------------------------------
# rerouting one edge across the crossing of two others

def _crossing_param(d: Drawing, x: Edge, y: Edge) -> Fraction:
    pair = pair_key(x, y)
    pe, pf = d._contacts[0][pair][0]
    return Fraction(pe) if pair[0] == x else Fraction(pf)


def _between(line: Polyline, s: Fraction, t: Fraction) -> list[Point]:
    """Polyline vertices strictly between parameters ``s`` and ``t``, in travel order."""
    pts = line.points
    if s < t:
        return [pts[i] for i in range(len(pts)) if s < i < t]
    return [pts[i] for i in range(len(pts) - 1, -1, -1) if t < i < s]


@dataclass
class _Triangle:
    first: Edge
    second: Edge
    sa: Fraction
    sb: Fraction
    arc_first: list[Point]
    arc_second: list[Point]
    apex: Point
    polygon: Polygon


def mutation_triangle(d: Drawing, e1: Edge, e2: Edge, e3: Edge) -> _Triangle:
    """Check the preconditions of the move and describe the empty triangle."""
    e1, e2, e3 = (edge_key(*e) for e in (e1, e2, e3))
    if len({e1, e2, e3}) < 3:
        raise NotMutable("edges must be distinct")
    pattern = crossing_pattern(d)
    for x, y in ((e1, e2), (e1, e3), (e2, e3)):
        if pair_key(x, y) not in pattern.crosses:
            raise NotMutable(f"{x} and {y} do not cross")
    for e, x, y in ((e1, e2, e3), (e2, e1, e3), (e3, e1, e2)):
        seq = pattern.order[e]
        if abs(seq.index(x) - seq.index(y)) != 1:
            raise NotMutable(f"crossings with {x} and {y} are not consecutive along {e}")
    s2, s3 = _crossing_param(d, e1, e2), _crossing_param(d, e1, e3)
    first, second = (e2, e3) if s2 < s3 else (e3, e2)
    sa, sb = min(s2, s3), max(s2, s3)
    line1 = d.edges[e1]
    pa, pb = line1.point_at(sa), line1.point_at(sb)
    apex = d.edges[first].point_at(_crossing_param(d, first, second))

    def arc(e, start):
        t0 = _crossing_param(d, e, e1)
        t1 = _crossing_param(d, e, first if e == second else second)
        return [start] + _between(d.edges[e], t0, t1) + [apex]

    arc_first, arc_second = arc(first, pa), arc(second, pb)
    ring = [pa] + _between(line1, sa, sb) + arc_second + arc_first[::-1][1:-1]
    try:
        polygon = Polygon(tuple(ring))
        simple = polygon.is_simple
    except (NonSimplePolygon, ValueError):
        simple = False
    if not simple:
        raise NotMutable("triangle boundary is not a simple curve")
    for v, p in d.vertices.items():
        if point_in_polygon(p, polygon) is not Location.OUTSIDE:
            raise NotMutable(f"vertex {v} lies in the triangle")
    return _Triangle(first, second, sa, sb, arc_first, arc_second, apex, polygon)


def _left(p: Point, q: Point) -> tuple[Fraction, Fraction]:
    return (-(q.y - p.y), q.x - p.x)


def _offset(arc: list[Point], sign: int, lam: Fraction) -> list[Point]:
    """Interior vertices of ``arc`` pushed to its left (sign 1) or right (sign -1)."""
    out = []
    for prev, p, nxt in zip(arc, arc[1:], arc[2:]):
        a, b = _left(prev, p), _left(p, nxt)
        out.append(Point(p.x + sign * lam * (a[0] + b[0]), p.y + sign * lam * (a[1] + b[1])))
    return out


def _expected_orders(pattern: CrossingPattern, e1: Edge, first: Edge, second: Edge) -> dict:
    def swap(seq, x, y):
        return tuple(y if s == x else x if s == y else s for s in seq)

    orders = dict(pattern.order)
    orders[e1] = swap(orders[e1], first, second)
    orders[first] = swap(orders[first], e1, second)
    orders[second] = swap(orders[second], e1, first)
    return orders


def triangle_mutation(d: Drawing, e1: Edge, e2: Edge, e3: Edge, attempts: int = 40) -> Drawing:
    """Move ``e1`` across the crossing point of ``e2`` and ``e3``."""
    e1, e2, e3 = (edge_key(*e) for e in (e1, e2, e3))
    tri = mutation_triangle(d, e1, e2, e3)
    pattern = crossing_pattern(d)
    want = _expected_orders(pattern, e1, tri.first, tri.second)
    pts = d.edges[e1].points
    before = math.ceil(tri.sa) - 1
    after = math.floor(tri.sb) + 1
    pa, pb = tri.arc_first[0], tri.arc_second[0]
    # the triangle lies left of the first arc when the ring runs clockwise
    sign_first = 1 if tri.polygon.is_ccw else -1
    ua = (tri.arc_first[-2].x - tri.apex.x, tri.arc_first[-2].y - tri.apex.y)
    ub = (tri.arc_second[-2].x - tri.apex.x, tri.arc_second[-2].y - tri.apex.y)
    lam = Fraction(1, 4)
    for _ in range(attempts):
        a = Point(pa.x + lam * (pts[before].x - pa.x), pa.y + lam * (pts[before].y - pa.y))
        b = Point(pb.x + lam * (pts[after].x - pb.x), pb.y + lam * (pts[after].y - pb.y))
        beyond = Point(tri.apex.x - lam * (ua[0] + ub[0]), tri.apex.y - lam * (ua[1] + ub[1]))
        route = (
            [a]
            + _offset(tri.arc_first, sign_first, lam)
            + [beyond]
            + _offset(tri.arc_second, -sign_first, lam)[::-1]
            + [b]
        )
        lam /= 2
        try:
            line = Polyline(tuple(pts[: before + 1]) + tuple(route) + tuple(pts[after:]))
            out = d.with_edge(e1, line)
            new = crossing_pattern(out)
        except (InvalidDrawing, DegenerateContact, ValueError):
            continue
        if new.crosses == pattern.crosses and dict(new.order) == want:
            return out
    raise NotMutable("reroute failed")


def find_mutable_triples(d: Drawing, limit: int | None = None) -> list[tuple[Edge, Edge, Edge]]:
    """Triples ``(e1, e2, e3)`` passing every precondition of the move."""
    pattern = crossing_pattern(d)
    found = []
    for e1 in sorted(pattern.order):
        seq = pattern.order[e1]
        for x, y in zip(seq, seq[1:]):
            if pair_key(x, y) not in pattern.crosses:
                continue
            try:
                mutation_triangle(d, e1, *sorted((x, y)))
            except NotMutable:
                continue
            found.append((e1, *sorted((x, y))))
            if limit is not None and len(found) >= limit:
                return found
    return found


# ---------------------------------------------------------------------------
# disjoint k-faces in the convex and twisted drawings

def convex_blocks(m: int, k: int) -> list[tuple[int, ...]]:
    return [tuple(range((i - 1) * k + 1, i * k + 1)) for i in range(1, m // k + 1)]


def twisted_cycle(i: int, k: int) -> tuple[int, ...]:
    """Vertex order of the plane cycle on the ``i``-th block of ``T_m``."""
    half = k // 2
    seq = [1, half + 1]
    for t in range(half - 1):
        seq += [k - t, half - t]
    return tuple(v + (i - 1) * k for v in seq)


def _check_k(m: int, k: int):
    if k < 4 or k % 2:
        raise ValueError("k must be an even integer >= 4")
    if m < k:
        raise ValueError("m must be at least k")


def cycle_plane_by_predicate(seq, predicate) -> bool:
    edges = [edge_key(seq[i], seq[(i + 1) % len(seq)]) for i in range(len(seq))]
    for e, f in itertools.combinations(edges, 2):
        if set(e) & set(f):
            continue
        if predicate(*e, *f):
            return False
    return True


def disjoint_kfaces_convex(m: int, k: int, d: Drawing | None = None) -> list[FaceRegion]:
    _check_k(m, k)
    d = d or build_cm(m)
    out = []
    for block in convex_blocks(m, k):
        if not cycle_plane_by_predicate(block, convex_crossing_predicate):
            raise LemmaViolation(f"cycle {block} is not plane")
        out.append(FaceRegion(PlaneCycle(d, block), True))
    return out


@dataclass
class SeparationCheck:
    i: int
    j: int
    edge: Edge
    inner_inside: bool
    outer_apart: bool


def separating_edge(i: int, j: int, k: int) -> Edge:
    return edge_key(i * k, (j - 1) * k + 1)


def edge_hull(d: Drawing, e: Edge) -> Polygon:
    return Polygon(tuple(convex_hull(d.edges[e].points)))


def twisted_separation(d: Drawing, faces: list[FaceRegion], k: int) -> list[SeparationCheck]:
    from .geometry import interiors_disjoint, polygon_within

    out = []
    for (i, fi), (j, fj) in itertools.combinations(enumerate(faces, 1), 2):
        e = separating_edge(i, j, k)
        hull = edge_hull(d, e)
        out.append(
            SeparationCheck(i, j, e, polygon_within(fi.boundary, hull), interiors_disjoint(fj.boundary, hull))
        )
    return out


def disjoint_kfaces_twisted(m: int, k: int, d: Drawing | None = None) -> list[FaceRegion]:
    _check_k(m, k)
    d = d or build_tm(m)[0]
    out = []
    for i in range(1, m // k + 1):
        seq = twisted_cycle(i, k)
        if not cycle_plane_by_predicate(seq, twisted_crossing_predicate):
            raise LemmaViolation(f"cycle {seq} is not plane")
        out.append(FaceRegion(PlaneCycle(d, seq), True))
    for check in twisted_separation(d, out, k):
        if not (check.inner_inside and check.outer_apart):
            raise LemmaViolation(f"edge {check.edge} does not separate faces {check.i} and {check.j}")
    return out


# ---------------------------------------------------------------------------
# convex or twisted sub-drawings

def induced_pattern(pattern: CrossingPattern, subset) -> CrossingPattern:
    subset = sorted(subset)
    relabel = {v: i + 1 for i, v in enumerate(subset)}
    edges = [edge_key(relabel[u], relabel[v]) for u, v in itertools.combinations(subset, 2)]
    crosses = frozenset(
        pair_key(edge_key(relabel[e[0]], relabel[e[1]]), edge_key(relabel[f[0]], relabel[f[1]]))
        for e, f in pattern.crosses
        if set(e) <= set(subset) and set(f) <= set(subset)
    )
    return CrossingPattern(len(subset), crosses, {e: () for e in edges})


def predicate_pattern(m: int, predicate) -> CrossingPattern:
    edges = list(itertools.combinations(range(1, m + 1), 2))
    return CrossingPattern(m, predicate_crosses(m, predicate), {e: () for e in edges})


def find_convex_or_twisted_subset(d: Drawing, m: int, budget: int | None = None):
    """First ``m``-subset (lexicographic) weakly isomorphic to ``C_m`` or ``T_m``.

    Returns ``(subset, kind, labelling)`` or ``None``.
    """
    if m > 6:
        raise ValueError("m above 6 is out of reach for brute force")
    if m < 1 or m > d.n:
        return None
    budget = default_budget() if budget is None else budget
    pattern = crossing_pattern(d)
    targets = (("convex", predicate_pattern(m, convex_crossing_predicate)),
               ("twisted", predicate_pattern(m, twisted_crossing_predicate)))
    spent = 0
    for subset in itertools.combinations(sorted(d.vertices), m):
        spent += math.factorial(m)
        if spent > budget:
            raise BudgetExceeded("subset search exceeded its budget")
        local = induced_pattern(pattern, subset)
        for kind, target in targets:
            witness = weak_isomorphism_check(local, target)
            if witness is not None:
                labelling = {subset[a - 1]: b for a, b in witness.items()}
                return subset, kind, labelling
    return None

