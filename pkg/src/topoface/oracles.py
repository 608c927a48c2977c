"""Brute-force ground truth for small drawings.

Nothing here calls into the face or extraction code: crossings are found
segment by segment on the original rationals, 4-cycles are enumerated
over subsets and cyclic orders, and polygons are assembled locally.  Only
the exact geometry kernel is shared.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction

from .drawing import CrossingPattern, Drawing
from .errors import BudgetExceeded, DegenerateContact, InvalidDrawing, NoPlane4Cycle
from .geometry import Polygon, contact, interiors_disjoint, on_segment, polygon_area

ORACLE_BUDGET = 10**7


def _budget(budget):
    if budget is not None:
        return budget
    raw = os.environ.get("TOPOFACE_BUDGET")
    return int(raw) if raw else ORACLE_BUDGET


def _key(u, v):
    return (u, v) if u < v else (v, u)


def naive_crossing_check(d: Drawing) -> CrossingPattern:
    """Crossing pattern from every segment pair of every edge pair, no shortcuts."""
    edges = sorted(d.edges)
    along = {e: [] for e in edges}
    crosses = set()
    for e, f in itertools.combinations(edges, 2):
        a, b = d.edges[e].points, d.edges[f].points
        shared = set(e) & set(f)
        hits = []
        for i in range(len(a) - 1):
            for j in range(len(b) - 1):
                c = contact(a[i], a[i + 1], b[j], b[j + 1])
                if c is None:
                    continue
                if c[0] == "cross":
                    hits.append((i + c[1], j + c[2]))
                    continue
                if c[0] == "touch":
                    ta, tb = i + c[1], j + c[2]
                    at_ends = ta in (0, len(a) - 1) and tb in (0, len(b) - 1)
                    p = d.edges[e].point_at(Fraction(ta))
                    if at_ends and shared and p in {d.vertices[v] for v in shared}:
                        continue
                raise DegenerateContact(f"edges {e} and {f} touch or overlap")
        # a crossing exactly at a polyline bend is seen from two segments
        hits = sorted(set(hits))
        if not hits:
            continue
        if shared:
            raise InvalidDrawing(f"adjacent edges {e} and {f} cross")
        if len(hits) > 1:
            raise InvalidDrawing(f"edges {e} and {f} cross {len(hits)} times")
        crosses.add((e, f))
        along[e].append((hits[0][0], f))
        along[f].append((hits[0][1], e))
    for e in edges:
        line = d.edges[e].points
        for v, p in d.vertices.items():
            if v not in e and any(on_segment(line[i], line[i + 1], p) for i in range(len(line) - 1)):
                raise InvalidDrawing(f"edge {e} passes through vertex {v}")
    order = {e: tuple(f for _, f in sorted(seq)) for e, seq in along.items()}
    return CrossingPattern(d.n, frozenset(crosses), order)


@dataclass
class QuadFace:
    cycle: tuple[int, int, int, int]
    polygon: Polygon

    @property
    def area(self) -> Fraction:
        return polygon_area(self.polygon)


def _cycle_polygon(d: Drawing, cycle) -> Polygon:
    pts = []
    for u, v in zip(cycle, cycle[1:] + cycle[:1]):
        line = d.edges[_key(u, v)].points
        if u > v:
            line = line[::-1]
        pts.extend(line[:-1])
    return Polygon(tuple(pts))


def plane_quads(d: Drawing, pattern: CrossingPattern | None = None) -> list[QuadFace]:
    """Bounded faces of every plane 4-cycle, over 4-subsets and their three cyclic orders."""
    pattern = pattern or naive_crossing_check(d)
    out = []
    for a, b, c, e in itertools.combinations(sorted(d.vertices), 4):
        for cycle in ((a, b, c, e), (a, b, e, c), (a, c, b, e)):
            sides = [_key(cycle[i], cycle[(i + 1) % 4]) for i in range(4)]
            if any(s not in d.edges for s in sides):
                continue
            # only opposite sides can cross
            if _key(*sorted((sides[0], sides[2]))) in pattern.crosses:
                continue
            if _key(*sorted((sides[1], sides[3]))) in pattern.crosses:
                continue
            out.append(QuadFace(cycle, _cycle_polygon(d, cycle)))
    return out


@dataclass
class ExactResult:
    value: int
    witness: list[tuple[int, int, int, int]]
    faces: int
    nodes: int


def max_disjoint_4faces_exact(d: Drawing, budget: int | None = None) -> ExactResult:
    """Largest set of pairwise disjoint bounded 4-faces, by branch and bound."""
    budget = _budget(budget)
    quads = plane_quads(d)
    m = len(quads)
    conflict = [0] * m
    for i, j in itertools.combinations(range(m), 2):
        if not interiors_disjoint(quads[i].polygon, quads[j].polygon):
            conflict[i] |= 1 << j
            conflict[j] |= 1 << i
    best: list[int] = []
    nodes = 0

    def grow(chosen: list[int], free: int):
        nonlocal best, nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"branch and bound exceeded {budget} nodes")
        if len(chosen) + bin(free).count("1") <= len(best):
            return
        if not free:
            best = list(chosen)
            return
        v = (free & -free).bit_length() - 1
        chosen.append(v)
        grow(chosen, free & ~(1 << v) & ~conflict[v])
        chosen.pop()
        grow(chosen, free & ~(1 << v))

    grow([], (1 << m) - 1)
    return ExactResult(len(best), [quads[i].cycle for i in best], m, nodes)


def min_4face_area(d: Drawing) -> Fraction:
    quads = plane_quads(d)
    if not quads:
        raise NoPlane4Cycle("the drawing has no plane 4-cycle")
    return min(q.area for q in quads)
