import itertools
import random
from fractions import Fraction as F

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from topoface.constructions import build_cm, build_dn, build_tm, random_straight_line
from topoface.drawing import Drawing, PlaneSubgraph
from topoface.errors import BudgetExceeded, NonSimpleBoundary, NotBiconnected, UnboundedFace
from topoface.extremal import disjoint_kfaces_twisted
from topoface.faces import (
    FaceRegion,
    PlaneCycle,
    arrangement_faces,
    enumerate_plane_cycles,
    face_area,
    face_of_cycle,
    faces_disjoint,
    interior_vertex_count,
    is_biconnected,
    region_within,
)
from topoface.geometry import Location, Polyline, interiors_disjoint, point, point_in_polygon


def straight(verts, pairs):
    vs = {i: point(*c) for i, c in verts.items()}
    return Drawing(vs, {e: Polyline((vs[e[0]], vs[e[1]])) for e in pairs})


def unit_square():
    return straight({1: (0, 0), 2: (1, 0), 3: (1, 1), 4: (0, 1)}, [(1, 2), (2, 3), (3, 4), (1, 4)])


def test_enumeration_examples():
    assert [c.vertices for c in enumerate_plane_cycles(build_cm(4), 4)] == [(1, 2, 3, 4)]
    triples = [c.vertices for c in enumerate_plane_cycles(build_dn(4)[0], 3)]
    assert triples == list(itertools.combinations(range(1, 5), 3))
    tm4 = [c.vertices for c in enumerate_plane_cycles(build_tm(4)[0], 4)]
    assert PlaneCycle(build_tm(4)[0], (1, 3, 4, 2)).vertices in tm4


@pytest.mark.parametrize("n", range(3, 8))
def test_dn_plane_cycles_are_increasing_sequences(n):
    d = build_dn(n)[0]
    for k in range(3, n + 1):
        got = [c.vertices for c in enumerate_plane_cycles(d, k)]
        assert got == list(itertools.combinations(range(1, n + 1), k))


def test_enumeration_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_plane_cycles(build_cm(8), 4, budget=10)


def test_cycle_must_be_plane():
    with pytest.raises(NonSimpleBoundary):
        PlaneCycle(build_cm(4), (1, 3, 2, 4))


def test_unit_square_faces():
    c = PlaneCycle(unit_square(), (1, 2, 3, 4))
    inner, outer = face_of_cycle(c), face_of_cycle(c, "unbounded")
    assert face_area(inner) == 1
    assert outer.locate(point(2, 2)) is Location.INSIDE
    assert inner.locate(point(2, 2)) is Location.OUTSIDE
    with pytest.raises(UnboundedFace):
        face_area(outer)


def test_dn_face_contains_middle_rectangles():
    d, layout = build_dn(4)
    f = face_of_cycle(PlaneCycle(d, (1, 2, 3, 4)))
    for i in (2, 3):
        assert all(f.locate(p) is Location.INSIDE for p in layout.rectangles[i].vertices)
    assert face_area(f) >= F(1, 12)


def test_disjoint_examples():
    d = straight(
        {1: (0, 0), 2: (2, 0), 3: (1, 1), 4: (0, 2), 5: (2, 2)},
        [(1, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 5)],
    )
    a, b = face_of_cycle(PlaneCycle(d, (1, 2, 3))), face_of_cycle(PlaneCycle(d, (3, 4, 5)))
    assert faces_disjoint(a, b) and faces_disjoint(b, a)
    assert not faces_disjoint(a, a)
    # a far-away triangle's unbounded side contains the other triangle
    assert not faces_disjoint(a, face_of_cycle(PlaneCycle(d, (3, 4, 5)), "unbounded"))
    assert not faces_disjoint(face_of_cycle(PlaneCycle(d, (3, 4, 5)), "unbounded"),
                              face_of_cycle(PlaneCycle(d, (1, 2, 3)), "unbounded"))
    nested = straight(
        {1: (0, 0), 2: (9, 0), 3: (9, 9), 4: (0, 9), 5: (3, 3), 6: (6, 3), 7: (3, 6)},
        [(1, 2), (2, 3), (3, 4), (1, 4), (5, 6), (6, 7), (5, 7)],
    )
    small = face_of_cycle(PlaneCycle(nested, (5, 6, 7)))
    assert faces_disjoint(small, face_of_cycle(PlaneCycle(nested, (1, 2, 3, 4)), "unbounded"))
    assert not faces_disjoint(small, face_of_cycle(PlaneCycle(nested, (1, 2, 3, 4))))
    f1, f2 = disjoint_kfaces_twisted(8, 4)
    assert faces_disjoint(f1, f2)
    assert interiors_disjoint(f1.boundary, f2.boundary)


def test_interior_vertex_examples():
    d = build_cm(4)
    assert interior_vertex_count(face_of_cycle(PlaneCycle(d, (1, 2, 3, 4))), d) == 0
    k4 = straight({1: (0, 0), 2: (4, 0), 3: (0, 4), 4: (1, 1)}, list(itertools.combinations(range(1, 5), 2)))
    assert interior_vertex_count(face_of_cycle(PlaneCycle(k4, (1, 2, 3))), k4) == 1
    # the fifth convex point lies strictly outside the quadrilateral, hence in the unbounded cell
    d5 = build_cm(5)
    assert interior_vertex_count(face_of_cycle(PlaneCycle(d5, (1, 2, 3, 4)), "unbounded"), d5) == 1


def test_arrangement_examples():
    sq = unit_square()
    af = arrangement_faces(PlaneSubgraph.of(sq, sq.edges))
    assert sorted(af.sizes) == [4, 4] and sum(af.sizes) == 8
    assert not af.cells[af.outer].region.bounded
    d = build_cm(4)
    af = arrangement_faces(PlaneSubgraph.of(d, [(1, 2), (2, 3), (3, 4), (1, 4), (1, 3)]))
    assert sorted(af.sizes) == [3, 3, 4]
    assert af.cells[af.outer].size == 4
    with pytest.raises(NotBiconnected):
        arrangement_faces(PlaneSubgraph.of(d, [(1, 2), (2, 3), (3, 4)]))


@given(st.integers(0, 10**6), st.integers(3, 9), st.floats(0.1, 0.9))
def test_biconnectivity_matches_networkx(seed, n, density):
    rng = random.Random(seed)
    edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < density]
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    assert is_biconnected(range(n), edges) == nx.is_biconnected(g)


def _random_plane_spanning(d, rng):
    from topoface.extremal import augment_to_spanning_biconnected

    seed_edges = rng.sample(sorted(d.edges), 1)
    return augment_to_spanning_biconnected(d, PlaneSubgraph.of(d, seed_edges))


@given(st.integers(0, 10**6), st.integers(4, 9))
def test_arrangement_identities(seed, n):
    d = random_straight_line(n, seed)
    h = _random_plane_spanning(d, random.Random(seed))
    af = arrangement_faces(h)
    assert 2 * len(h.edges) == sum(af.sizes)
    assert 3 * len(h.vertices) - 6 >= len(h.edges)
    assert sum(c.size + c.interior for c in af.cells) >= n
    assert sum(not c.region.bounded for c in af.cells) == 1
    # bounded cells tile the bounded side of the outer boundary
    bounded = [c.region for c in af.cells if c.region.bounded]
    assert sum(face_area(f) for f in bounded) == face_area(af.cells[af.outer].region.complement())
    for a, b in itertools.combinations(bounded, 2):
        assert faces_disjoint(a, b)


@given(st.integers(0, 10**6), st.integers(4, 7), st.data())
def test_sides_partition_the_plane(seed, n, data):
    d = random_straight_line(n, seed)
    cycles = enumerate_plane_cycles(d, 4)
    c = data.draw(st.sampled_from(cycles))
    q = point(data.draw(st.fractions(-1, 2, max_denominator=50)), data.draw(st.fractions(-1, 2, max_denominator=50)))
    inner, outer = face_of_cycle(c), face_of_cycle(c, "unbounded")
    states = {inner.locate(q), outer.locate(q)}
    if point_in_polygon(q, c.polygon) is Location.BOUNDARY:
        assert states == {Location.BOUNDARY}
    else:
        assert states == {Location.INSIDE, Location.OUTSIDE}


@given(st.integers(0, 10**6), st.integers(5, 7), st.data())
def test_disjointness_symmetric_and_matches_kernel(seed, n, data):
    d = random_straight_line(n, seed)
    cycles = enumerate_plane_cycles(d, 4)
    a, b = data.draw(st.sampled_from(cycles)), data.draw(st.sampled_from(cycles))
    fa, fb = face_of_cycle(a), face_of_cycle(b)
    assert faces_disjoint(fa, fb) == faces_disjoint(fb, fa)
    assert faces_disjoint(fa, fb) == interiors_disjoint(a.polygon, b.polygon)
    assert not faces_disjoint(fa, fa)
    ua, ub = face_of_cycle(a, "unbounded"), face_of_cycle(b, "unbounded")
    assert not faces_disjoint(ua, ub)
    # bounded against unbounded: disjoint exactly when the bounded face sits inside the other's disk
    assert faces_disjoint(fa, ub) == region_within(fa, fb)
    if region_within(fa, fb):
        assert not faces_disjoint(fa, fb)


def test_within_filter():
    d = build_dn(6)[0]
    outer = face_of_cycle(PlaneCycle(d, (1, 2, 3, 4, 5, 6)))
    inside = enumerate_plane_cycles(d, 4, within=outer)
    assert inside and all(region_within(face_of_cycle(c), outer) for c in inside)


def test_face_json():
    d = build_cm(5)
    f = face_of_cycle(PlaneCycle(d, (1, 2, 3, 4)), "unbounded")
    assert f.to_json() == {"cycle": [1, 2, 3, 4], "boundedSide": False, "area": None, "interior_vertices": [5]}
    assert isinstance(FaceRegion(f.cycle).to_json()["area"], str)
