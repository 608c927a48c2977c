"""Plane cycles, the cells they enclose, and cell decompositions of plane subgraphs."""
from __future__ import annotations

import functools
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .drawing import Drawing, Edge, PlaneSubgraph, crossing_pattern, edge_key, pair_key
from .errors import BudgetExceeded, NonSimpleBoundary, NotBiconnected, UnboundedFace
from .geometry import Location, Polygon, format_rational, locate_raw, polygon_area

DEFAULT_BUDGET = 10**7


def default_budget() -> int:
    raw = os.environ.get("TOPOFACE_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


def canonical_cycle(seq: Sequence[int]) -> tuple[int, ...]:
    """Rotate to the smallest vertex and orient so the second entry is below the last."""
    seq = list(seq)
    k = seq.index(min(seq))
    seq = seq[k:] + seq[:k]
    if len(seq) > 2 and seq[1] > seq[-1]:
        seq = [seq[0]] + seq[1:][::-1]
    return tuple(seq)


def cycle_edges(seq: Sequence[int]) -> list[Edge]:
    return [edge_key(seq[i], seq[(i + 1) % len(seq)]) for i in range(len(seq))]


@dataclass(frozen=True, eq=False)
class PlaneCycle:
    parent: Drawing
    vertices: tuple[int, ...]

    def __post_init__(self):
        seq = tuple(self.vertices)
        if len(seq) < 3 or len(set(seq)) != len(seq):
            raise ValueError(f"not a simple cycle: {seq}")
        edges = cycle_edges(seq)
        missing = [e for e in edges if e not in self.parent.edges]
        if missing:
            raise ValueError(f"cycle uses missing edges {missing}")
        pattern = crossing_pattern(self.parent)
        for a in range(len(edges)):
            for b in range(a + 1, len(edges)):
                if pair_key(edges[a], edges[b]) in pattern.crosses:
                    raise NonSimpleBoundary(f"cycle edges {edges[a]} and {edges[b]} cross")
        object.__setattr__(self, "vertices", canonical_cycle(seq))

    @property
    def k(self) -> int:
        return len(self.vertices)

    @cached_property
    def edges(self) -> list[Edge]:
        return cycle_edges(self.vertices)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def polygon(self) -> Polygon:
        d = self.parent
        pts = []
        grid = []
        seq = self.vertices
        for i, u in enumerate(seq):
            v = seq[(i + 1) % len(seq)]
            line = d.edges[edge_key(u, v)].points
            g = d.grid_edges[edge_key(u, v)]
            if u > v:
                line, g = line[::-1], g[::-1]
            pts.extend(line[:-1])
            grid.extend(g[:-1])
        poly = Polygon(tuple(pts), trusted=True)
        poly.__dict__["grid"] = (d.scale, grid)
        return poly

    def key(self) -> tuple[int, ...]:
        return self.vertices

    def __repr__(self) -> str:
        return f"PlaneCycle({'-'.join(map(str, self.vertices))})"


@dataclass(frozen=True, eq=False)
class FaceRegion:
    """One side of a plane cycle: the bounded open cell or the unbounded one."""

    cycle: PlaneCycle
    bounded: bool = True

    @property
    def boundary(self) -> Polygon:
        return self.cycle.polygon

    @property
    def parent(self) -> Drawing:
        return self.cycle.parent

    def locate_grid(self, qx, qy) -> Location:
        loc = locate_raw(qx, qy, self.boundary.grid[1])
        if self.bounded or loc is Location.BOUNDARY:
            return loc
        return Location.OUTSIDE if loc is Location.INSIDE else Location.INSIDE

    def locate(self, q) -> Location:
        scale = self.boundary.grid[0]
        x, y = Fraction(q[0]) * scale, Fraction(q[1]) * scale
        return self.locate_grid(x, y)

    def complement(self) -> "FaceRegion":
        return FaceRegion(self.cycle, not self.bounded)

    def same_cell(self, other: "FaceRegion") -> bool:
        return self.bounded == other.bounded and self.cycle.edge_set == other.cycle.edge_set

    def to_json(self, d: Drawing | None = None) -> dict:
        d = d or self.parent
        out = {"cycle": list(self.cycle.vertices), "boundedSide": self.bounded}
        out["area"] = format_rational(face_area(self)) if self.bounded else None
        out["interior_vertices"] = interior_vertices(self, d)
        return out

    def __repr__(self) -> str:
        side = "bounded" if self.bounded else "unbounded"
        return f"FaceRegion({'-'.join(map(str, self.cycle.vertices))}, {side})"


def face_of_cycle(c: PlaneCycle, side: str = "bounded") -> FaceRegion:
    if side not in ("bounded", "unbounded"):
        raise ValueError("side must be 'bounded' or 'unbounded'")
    return FaceRegion(c, side == "bounded")


def face_area(f: FaceRegion) -> Fraction:
    if not f.bounded:
        raise UnboundedFace("the unbounded cell has infinite area")
    return polygon_area(f.boundary)


def interior_vertices(f: FaceRegion, d: Drawing | None = None) -> list[int]:
    d = d or f.parent
    if d is f.parent:
        return [v for v, (x, y) in d.grid_vertices.items() if f.locate_grid(x, y) is Location.INSIDE]
    return [v for v, p in d.vertices.items() if f.locate(p) is Location.INSIDE]


def interior_vertex_count(f: FaceRegion, d: Drawing | None = None) -> int:
    return len(interior_vertices(f, d))


# ---------------------------------------------------------------------------
# disjointness and containment between cells of one drawing

def _probe(d: Drawing, e: Edge):
    """A grid point in the relative interior of edge ``e``."""
    (x0, y0), (x1, y1) = d.grid_edges[e][:2]
    return Fraction(x0 + x1, 2), Fraction(y0 + y1, 2)


def _cycles_cross(a: PlaneCycle, b: PlaneCycle) -> bool:
    crosses = crossing_pattern(a.parent).crosses
    return any(pair_key(e, f) in crosses for e in a.edges for f in b.edges if e != f)


def _boundary_hits(c: PlaneCycle, f: FaceRegion, target: Location) -> bool:
    """Whether some point on ``c`` off ``f``'s boundary is located at ``target``.

    Valid only when the two cycles do not cross: then each vertex or edge
    of ``c`` not shared with ``f``'s cycle is wholly inside or outside ``f``.
    """
    d = c.parent
    own = set(f.cycle.vertices)
    for v in c.vertices:
        if v not in own and f.locate_grid(*d.grid_vertices[v]) is target:
            return True
    shared = f.cycle.edge_set
    for e in c.edges:
        if e not in shared and f.locate_grid(*_probe(d, e)) is target:
            return True
    return False


def _bounded_within(c: PlaneCycle, f: FaceRegion) -> bool:
    """Bounded side of ``c`` contained in the bounded cell ``f`` (open sets)."""
    if _cycles_cross(c, f.cycle):
        return False
    return not _boundary_hits(c, f, Location.OUTSIDE)


def faces_disjoint(f1: FaceRegion, f2: FaceRegion) -> bool:
    if f1.parent is not f2.parent:
        raise ValueError("faces must come from the same drawing")
    if not f1.bounded and not f2.bounded:
        return False
    if _cycles_cross(f1.cycle, f2.cycle):
        return False
    if f1.bounded and f2.bounded:
        if f1.cycle.edge_set == f2.cycle.edge_set:
            return False
        if _boundary_hits(f2.cycle, f1, Location.INSIDE):
            return False
        return not _boundary_hits(f1.cycle, f2, Location.INSIDE)
    inner, outer = (f1, f2) if f1.bounded else (f2, f1)
    return not _boundary_hits(inner.cycle, outer.complement(), Location.OUTSIDE)


def region_within(x: FaceRegion, y: FaceRegion) -> bool:
    """Whether cell ``x`` lies inside cell ``y`` (both open)."""
    if x.bounded and y.bounded:
        return _bounded_within(x.cycle, y)
    if x.bounded:
        return faces_disjoint(x, y.complement())
    if y.bounded:
        return False
    return _bounded_within(y.cycle, x.complement())


# ---------------------------------------------------------------------------
# enumeration

def enumerate_plane_cycles(
    d: Drawing, k: int, within: FaceRegion | None = None, budget: int | None = None
) -> list[PlaneCycle]:
    """All plane ``k``-cycles, each once up to rotation and reflection."""
    if k < 3:
        raise ValueError("k must be at least 3")
    budget = default_budget() if budget is None else budget
    crosses = crossing_pattern(d).crosses
    verts = sorted(d.vertices)
    checks = 0
    found: list[tuple[int, ...]] = []

    def ok(e: Edge, used: list[Edge]) -> bool:
        nonlocal checks
        checks += len(used)
        if checks > budget:
            raise BudgetExceeded(f"plane-cycle enumeration exceeded {budget} pair checks")
        return all(pair_key(e, f) not in crosses for f in used)

    def extend(path: list[int], used: list[Edge]):
        last = path[-1]
        for w in verts:
            if w <= path[0] or w in path:
                continue
            e = edge_key(last, w)
            if e not in d.edges or not ok(e, used):
                continue
            if len(path) + 1 == k:
                if path[1] > w:
                    continue
                close = edge_key(w, path[0])
                if close in d.edges and ok(close, used + [e]):
                    found.append(tuple(path + [w]))
            else:
                extend(path + [w], used + [e])

    for s in verts:
        extend([s], [])
    cycles = [PlaneCycle(d, seq) for seq in sorted(found)]
    if within is not None:
        cycles = [c for c in cycles if region_within(FaceRegion(c, True), within)]
    return cycles


# ---------------------------------------------------------------------------
# cell decomposition of a plane biconnected subgraph

def articulation_points(adj: dict[int, set[int]]) -> set[int]:
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    points: set[int] = set()
    counter = 0

    def visit(root: int):
        nonlocal counter
        disc[root] = low[root] = counter
        counter += 1
        stack = [(root, None, iter(sorted(adj[root])))]
        children = {root: 0}
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w not in disc:
                    disc[w] = low[w] = counter
                    counter += 1
                    children[v] += 1
                    children[w] = 0
                    stack.append((w, v, iter(sorted(adj[w]))))
                    advanced = True
                    break
                if w != parent:
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent is not None:
                low[parent] = min(low[parent], low[v])
                if stack[-1][1] is not None and low[v] >= disc[parent]:
                    points.add(parent)
        if children[root] > 1:
            points.add(root)

    for v in sorted(adj):
        if v not in disc:
            visit(v)
    return points


def is_biconnected(vertices: Iterable[int], edges: Iterable[Edge]) -> bool:
    adj: dict[int, set[int]] = {v: set() for v in vertices}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    if len(adj) < 2:
        return False
    start = min(adj)
    seen = {start}
    stack = [start]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != len(adj):
        return False
    return not articulation_points(adj)


def _direction_order(a, b) -> int:
    ha = 0 if (a[1] > 0 or (a[1] == 0 and a[0] > 0)) else 1
    hb = 0 if (b[1] > 0 or (b[1] == 0 and b[0] > 0)) else 1
    if ha != hb:
        return ha - hb
    c = a[0] * b[1] - a[1] * b[0]
    return -1 if c > 0 else (1 if c < 0 else 0)


def rotation_system(d: Drawing, edges: Iterable[Edge]) -> dict[int, list[int]]:
    """Neighbors of each vertex in counterclockwise order of their leaving direction."""
    leaving: dict[int, list[tuple[tuple[int, int], int]]] = {}
    for u, v in edges:
        g = d.grid_edges[(u, v)]
        leaving.setdefault(u, []).append(((g[1][0] - g[0][0], g[1][1] - g[0][1]), v))
        leaving.setdefault(v, []).append(((g[-2][0] - g[-1][0], g[-2][1] - g[-1][1]), u))
    key = functools.cmp_to_key(lambda a, b: _direction_order(a[0], b[0]))
    return {v: [w for _, w in sorted(items, key=key)] for v, items in leaving.items()}


@dataclass
class Cell:
    region: FaceRegion
    size: int
    interior: int

    def to_json(self) -> dict:
        return {
            "cycle": list(self.region.cycle.vertices),
            "boundedSide": self.region.bounded,
            "size": self.size,
            "interior": self.interior,
        }


@dataclass
class ArrangementFaces:
    cells: list[Cell]
    outer: int
    edge_count: int
    vertex_count: int

    @property
    def sizes(self) -> list[int]:
        return [c.size for c in self.cells]


def arrangement_faces(h: PlaneSubgraph) -> ArrangementFaces:
    d = h.parent
    if len(h.vertices) < 3 or not is_biconnected(h.vertices, h.edges):
        raise NotBiconnected("cell decomposition needs a biconnected plane subgraph on >= 3 vertices")
    rot = rotation_system(d, h.edges)
    pos = {v: {w: i for i, w in enumerate(ws)} for v, ws in rot.items()}
    seen: set[tuple[int, int]] = set()
    walks: list[list[int]] = []
    for u, v in sorted(h.edges):
        for dart in ((u, v), (v, u)):
            if dart in seen:
                continue
            walk = []
            a, b = dart
            while (a, b) not in seen:
                seen.add((a, b))
                walk.append(a)
                ring = rot[b]
                c = ring[pos[b][a] - 1]
                a, b = b, c
            walks.append(walk)
    cells: list[Cell] = []
    outer = None
    for walk in walks:
        if len(set(walk)) != len(walk):
            raise NotBiconnected(f"face boundary {walk} is not a cycle")
        cycle = PlaneCycle(d, walk)
        # orientation of the walk decides which side it bounds
        ccw = _walk_signed_area(d, walk) > 0
        region = FaceRegion(cycle, bounded=ccw)
        if not ccw:
            if outer is not None:
                raise NotBiconnected("more than one unbounded cell")
            outer = len(cells)
        cells.append(Cell(region, len(walk), interior_vertex_count(region, d)))
    if outer is None:
        raise NotBiconnected("no unbounded cell found")
    total = sum(c.size for c in cells)
    if total != 2 * len(h.edges):
        raise AssertionError("double counting identity failed")
    return ArrangementFaces(cells, outer, len(h.edges), len(h.vertices))


def _walk_signed_area(d: Drawing, walk: Sequence[int]) -> int:
    pts = []
    for i, u in enumerate(walk):
        v = walk[(i + 1) % len(walk)]
        g = d.grid_edges[edge_key(u, v)]
        pts.extend((g if u < v else g[::-1])[:-1])
    total = 0
    for (x0, y0), (x1, y1) in zip(pts, pts[1:] + pts[:1]):
        total += x0 * y1 - x1 * y0
    return total
