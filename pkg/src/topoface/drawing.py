"""Drawings of topological graphs and the combinatorics derived from them.

A ``Drawing`` is the ground truth: vertices at exact points, edges as
polylines.  Crossing relations are always recomputed from the geometry.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping

from .errors import DegenerateContact, InvalidDrawing, NotPlane, SizeMismatch
from .geometry import (
    Point,
    Polyline,
    common_scale,
    on_segment,
    raw_polyline_crossings,
    segment_boxes,
    to_grid,
)

Edge = tuple[int, int]
EdgePair = tuple[Edge, Edge]


def edge_key(u: int, v: int) -> Edge:
    if u == v:
        raise ValueError(f"loop at vertex {u}")
    return (u, v) if u < v else (v, u)


def pair_key(e: Edge, f: Edge) -> EdgePair:
    return (e, f) if e < f else (f, e)


def shares_endpoint(e: Edge, f: Edge) -> bool:
    return bool(set(e) & set(f))


@dataclass(frozen=True, eq=False)
class Drawing:
    """Vertices ``1..n`` at distinct points; each edge ``(u, v)``, ``u < v``,
    is a polyline running from ``u``'s location to ``v``'s."""

    vertices: Mapping[int, Point]
    edges: Mapping[Edge, Polyline]
    complete: bool = False
    meta: Mapping = field(default_factory=dict, compare=False)

    def __post_init__(self):
        verts = {int(k): Point(Fraction(p[0]), Fraction(p[1])) for k, p in sorted(self.vertices.items())}
        if len(set(verts.values())) != len(verts):
            raise InvalidDrawing("vertex locations must be pairwise distinct")
        edges = {}
        for (u, v), line in sorted(self.edges.items()):
            key = edge_key(u, v)
            if key[0] not in verts or key[1] not in verts:
                raise InvalidDrawing(f"edge {key} references an unknown vertex")
            a, b = verts[key[0]], verts[key[1]]
            if line.start == b and line.end == a:
                line = line.reversed()
            if line.start != a or line.end != b:
                raise InvalidDrawing(f"edge {key} does not join its endpoints")
            if key in edges:
                raise InvalidDrawing(f"duplicate edge {key}")
            edges[key] = line
        if self.complete:
            missing = [p for p in itertools.combinations(verts, 2) if p not in edges]
            if missing:
                raise InvalidDrawing(f"drawing marked complete but misses {len(missing)} edges")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", edges)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def vertex_ids(self) -> list[int]:
        return list(self.vertices)

    def polyline(self, u: int, v: int) -> Polyline:
        """Edge curve oriented from ``u`` to ``v``."""
        line = self.edges[edge_key(u, v)]
        return line if u < v else line.reversed()

    def with_edge(self, e: Edge, line: Polyline) -> "Drawing":
        edges = dict(self.edges)
        edges[edge_key(*e)] = line
        return Drawing(self.vertices, edges, self.complete, dict(self.meta))

    # -- integer frame ----------------------------------------------------

    @cached_property
    def scale(self) -> int:
        pts = list(self.vertices.values())
        for line in self.edges.values():
            pts.extend(line.points)
        return common_scale(pts)

    @cached_property
    def grid_edges(self) -> dict[Edge, list[tuple[int, int]]]:
        return {e: to_grid(line.points, self.scale) for e, line in self.edges.items()}

    @cached_property
    def grid_vertices(self) -> dict[int, tuple[int, int]]:
        return dict(zip(self.vertices, to_grid(self.vertices.values(), self.scale)))

    @cached_property
    def _contacts(self):
        """Crossing parameters for every edge pair, plus detected defects."""
        grid = self.grid_edges
        boxes = {e: segment_boxes(pts) for e, pts in grid.items()}
        hull = {
            e: (min(b[0] for b in bx), max(b[1] for b in bx), min(b[2] for b in bx), max(b[3] for b in bx))
            for e, bx in boxes.items()
        }
        found: dict[EdgePair, list[tuple[Fraction, Fraction]]] = {}
        defects: list[tuple[object, str]] = []
        keys = sorted(grid)
        for a, e in enumerate(keys):
            he = hull[e]
            for f in keys[a + 1:]:
                hf = hull[f]
                if he[1] < hf[0] or hf[1] < he[0] or he[3] < hf[2] or hf[3] < he[2]:
                    continue
                try:
                    hits = raw_polyline_crossings(grid[e], grid[f], boxes[e], boxes[f])
                except DegenerateContact as exc:
                    defects.append(((e, f), str(exc)))
                    continue
                if hits:
                    found[(e, f)] = hits
        for e in keys:
            pts = grid[e]
            for v, loc in self.grid_vertices.items():
                if v in e:
                    continue
                if any(on_segment(p, q, loc) for p, q in zip(pts, pts[1:])):
                    defects.append((e, f"edge passes through vertex {v}"))
        return found, defects


@dataclass
class ValidationReport:
    passed: bool
    crossings: dict[EdgePair, int]
    failures: list[tuple[object, str]]

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "crossing_pairs": [[list(e), list(f)] for (e, f), c in sorted(self.crossings.items()) if c],
            "failures": [
                {"where": _jsonable(where), "reason": reason} for where, reason in self.failures
            ],
        }


def _jsonable(obj):
    if isinstance(obj, tuple):
        return [_jsonable(o) for o in obj]
    return obj


def validate_simple(d: Drawing) -> ValidationReport:
    found, defects = d._contacts
    failures = list(defects)
    counts = {pair: len(hits) for pair, hits in found.items()}
    for (e, f), c in sorted(counts.items()):
        if shares_endpoint(e, f):
            failures.append(((e, f), "adjacent edges cross"))
        elif c > 1:
            failures.append(((e, f), f"edges cross {c} times"))
    return ValidationReport(not failures, counts, failures)


@dataclass(frozen=True)
class CrossingPattern:
    n: int
    crosses: frozenset[EdgePair]
    order: Mapping[Edge, tuple[Edge, ...]]

    def cross(self, e: Edge, f: Edge) -> bool:
        return pair_key(edge_key(*e), edge_key(*f)) in self.crosses

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "crosses": [[list(e), list(f)] for e, f in sorted(self.crosses)],
            "order": {f"{e[0]}-{e[1]}": [list(f) for f in seq] for e, seq in sorted(self.order.items())},
        }


def pattern_from_hits(n: int, edges: Iterable[Edge], hits: Mapping[EdgePair, list]) -> CrossingPattern:
    along: dict[Edge, list[tuple[Fraction, Edge]]] = {e: [] for e in edges}
    for (e, f), params in hits.items():
        for pe, pf in params:
            along[e].append((pe, f))
            along[f].append((pf, e))
    order = {e: tuple(f for _, f in sorted(seq)) for e, seq in along.items()}
    return CrossingPattern(n, frozenset(pair_key(*p) for p in hits), order)


def crossing_pattern(d: Drawing) -> CrossingPattern:
    return d.__dict__.get("_pattern") or _compute_pattern(d)


def _compute_pattern(d: Drawing) -> CrossingPattern:
    report = validate_simple(d)
    if not report.passed:
        where, reason = report.failures[0]
        raise InvalidDrawing(f"{where}: {reason}")
    pattern = pattern_from_hits(d.n, d.edges, d._contacts[0])
    d.__dict__["_pattern"] = pattern
    return pattern


def crossing_points(d: Drawing) -> dict[EdgePair, Point]:
    crossing_pattern(d)
    return {
        pair: d.edges[pair[0]].point_at(hits[0][0]) for pair, hits in d._contacts[0].items()
    }


def is_plane(d: Drawing, edges: Iterable[Edge]) -> bool:
    pattern = crossing_pattern(d)
    es = sorted({edge_key(*e) for e in edges})
    for e in es:
        if e not in d.edges:
            raise KeyError(f"edge {e} not in drawing")
    return not any(pair_key(e, f) in pattern.crosses for e, f in itertools.combinations(es, 2))


@dataclass(frozen=True, eq=False)
class PlaneSubgraph:
    parent: Drawing
    edges: frozenset[Edge]
    vertices: frozenset[int]

    def __post_init__(self):
        es = frozenset(edge_key(*e) for e in self.edges)
        vs = frozenset(self.vertices) | {v for e in es for v in e}
        if not is_plane(self.parent, es):
            raise NotPlane("subgraph edges cross")
        object.__setattr__(self, "edges", es)
        object.__setattr__(self, "vertices", vs)

    @classmethod
    def of(cls, parent: Drawing, edges: Iterable[Edge] = (), vertices: Iterable[int] = ()) -> "PlaneSubgraph":
        return cls(parent, frozenset(edges), frozenset(vertices))

    def adjacency(self) -> dict[int, set[int]]:
        adj = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def is_connected(self) -> bool:
        adj = self.adjacency()
        if not adj:
            return False
        start = min(adj)
        seen = {start}
        stack = [start]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(adj)


# ---------------------------------------------------------------------------
# weak isomorphism

def _pattern_edges(p: CrossingPattern) -> set[Edge]:
    return set(p.order)


def weak_isomorphism_check(p: CrossingPattern, q: CrossingPattern, labelling="search"):
    """Check for an incidence-preserving bijection matching crossing pairs.

    With an explicit ``labelling`` (dict from p's vertices to q's) returns a
    bool.  With ``"search"`` returns a witness dict, or ``None`` if no
    bijection works.
    """
    if p.n != q.n:
        raise SizeMismatch(f"{p.n} vertices vs {q.n}")
    pe, qe = _pattern_edges(p), _pattern_edges(q)
    pv = sorted({v for e in pe for v in e})
    qv = sorted({v for e in qe for v in e})
    if labelling != "search":
        mapping = dict(labelling)
        if sorted(mapping) != pv or sorted(mapping.values()) != qv:
            return False
        if {edge_key(mapping[u], mapping[v]) for u, v in pe} != qe:
            return False
        return all(
            p.cross(e, f) == q.cross(edge_key(mapping[e[0]], mapping[e[1]]), edge_key(mapping[f[0]], mapping[f[1]]))
            for e, f in itertools.combinations(sorted(pe), 2)
        )
    if len(pv) != len(qv) or len(pe) != len(qe):
        return None
    return _search_bijection(p, q, pv, qv, pe, qe)


def _search_bijection(p, q, pv, qv, pe, qe):
    def load(pattern, verts):
        count = {v: 0 for v in verts}
        for e, f in pattern.crosses:
            for v in e + f:
                count[v] += 1
        return count

    lp, lq = load(p, pv), load(q, qv)
    if sorted(lp.values()) != sorted(lq.values()):
        return None
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def consistent(v: int) -> bool:
        placed = list(mapping)
        mv = mapping[v]
        for u in placed:
            if u == v:
                continue
            if (edge_key(u, v) in pe) != (edge_key(mapping[u], mv) in qe):
                return False
        new_edges = [edge_key(u, v) for u in placed if u != v and edge_key(u, v) in pe]
        old_edges = [
            edge_key(a, b) for a, b in itertools.combinations(placed, 2) if edge_key(a, b) in pe
        ]
        for e in new_edges:
            me = edge_key(mapping[e[0]], mapping[e[1]])
            for f in old_edges + new_edges:
                if f == e or shares_endpoint(e, f):
                    continue
                mf = edge_key(mapping[f[0]], mapping[f[1]])
                if p.cross(e, f) != q.cross(me, mf):
                    return False
        return True

    def extend(i: int):
        if i == len(pv):
            return True
        v = pv[i]
        for w in qv:
            if w in used or lq[w] != lp[v]:
                continue
            mapping[v] = w
            used.add(w)
            if consistent(v) and extend(i + 1):
                return True
            used.discard(w)
            del mapping[v]
        return False

    return dict(mapping) if extend(0) else None
