import itertools
from fractions import Fraction as F

import networkx as nx
import pytest

from topoface.constructions import (
    build_cm,
    build_dn,
    build_tm,
    convex_crossing_predicate,
    random_straight_line,
    twisted_crossing_predicate,
)
from topoface.drawing import Drawing, PlaneSubgraph, crossing_pattern, is_plane, validate_simple
from topoface.errors import IterationCapExceeded, NoPlane4Cycle, NotFound, NotMutable
from topoface.extremal import (
    FourCell,
    augment_to_spanning_biconnected,
    cycle_plane_by_predicate,
    disjoint_4faces,
    disjoint_kfaces_convex,
    disjoint_kfaces_twisted,
    find_4face_in_face,
    find_convex_or_twisted_subset,
    find_mutable_triples,
    frv_noncrossing_edges,
    triangle_mutation,
    twisted_cycle,
    twisted_separation,
)
from topoface.faces import (
    FaceRegion,
    PlaneCycle,
    enumerate_plane_cycles,
    face_area,
    face_of_cycle,
    faces_disjoint,
    interior_vertex_count,
    region_within,
)
from topoface.geometry import Polyline, interiors_disjoint, point
from topoface.oracles import max_disjoint_4faces_exact, naive_crossing_check


def straight(verts, pairs=None):
    vs = {i: point(*c) for i, c in verts.items()}
    pairs = list(itertools.combinations(sorted(vs), 2)) if pairs is None else pairs
    return Drawing(vs, {e: Polyline((vs[e[0]], vs[e[1]])) for e in pairs}, complete=len(pairs) == len(vs) * (len(vs) - 1) // 2)


def graph(h):
    g = nx.Graph()
    g.add_nodes_from(h.vertices)
    g.add_edges_from(h.edges)
    return g


# -- non-crossing edges from an outside vertex ------------------------------

def test_frv_examples():
    k3 = straight({1: (0, 0), 2: (1, 0), 3: (0, 1)})
    assert frv_noncrossing_edges(k3, PlaneSubgraph.of(k3, [(1, 2)]), 3) == [(1, 3), (2, 3)]
    k4 = build_cm(4)
    assert frv_noncrossing_edges(k4, PlaneSubgraph.of(k4, [(1, 2), (2, 3)]), 4) == [(1, 4), (2, 4), (3, 4)]
    d5 = build_dn(5)[0]
    h = PlaneSubgraph.of(d5, [(1, 2), (2, 3), (1, 3)])
    got = frv_noncrossing_edges(d5, h, 4)
    # brute-force check of all three candidates through the naive oracle
    naive = naive_crossing_check(d5)
    expected = [(w, 4) for w in (1, 2, 3) if not any(naive.cross((w, 4), f) for f in h.edges)]
    assert got == expected and len(got) >= 2


def test_frv_preconditions():
    d = build_cm(5)
    with pytest.raises(ValueError):
        frv_noncrossing_edges(d, PlaneSubgraph.of(d, [(1, 2)]), 1)
    with pytest.raises(ValueError):
        frv_noncrossing_edges(d, PlaneSubgraph.of(d, [(1, 2), (3, 4)]), 5)


# -- augmentation ------------------------------------------------------------

def test_augment_examples():
    d = build_cm(5)
    full = augment_to_spanning_biconnected(d, PlaneSubgraph.of(d, [(1, 2)]))
    assert augment_to_spanning_biconnected(d, full) is full
    k3 = straight({1: (0, 0), 2: (1, 0), 3: (0, 1)})
    tri = augment_to_spanning_biconnected(k3, PlaneSubgraph.of(k3, [], [1]))
    assert tri.edges == {(1, 2), (1, 3), (2, 3)}
    d8 = build_dn(8)[0]
    c = enumerate_plane_cycles(d8, 4)[0]
    h = augment_to_spanning_biconnected(d8, PlaneSubgraph.of(d8, c.edges))
    assert h.vertices == set(d8.vertices) and set(c.edges) <= h.edges
    assert is_plane(d8, h.edges)
    assert nx.is_biconnected(graph(h))


@pytest.mark.parametrize("seed", range(6))
def test_augment_random_subsets(seed):
    d = random_straight_line(8, seed)
    c = enumerate_plane_cycles(d, 4)[seed]
    h = augment_to_spanning_biconnected(d, PlaneSubgraph.of(d, c.edges), vertices=[1, 2, 3, 4, 5, 6, 7, 8])
    assert nx.is_biconnected(graph(h)) and is_plane(d, h.edges)
    on_cycle = augment_to_spanning_biconnected(d, PlaneSubgraph.of(d, c.edges), vertices=c.vertices)
    assert on_cycle.vertices == set(c.vertices)


# -- a 4-cell inside a face --------------------------------------------------

@pytest.mark.parametrize("strategy", ["recursive", "exhaustive"])
def test_triangle_with_one_interior_vertex(strategy):
    d = straight({1: (0, 0), 2: (4, 0), 3: (0, 4), 4: (1, 1)})
    target = PlaneCycle(d, (1, 2, 3))
    cell = find_4face_in_face(d, target, strategy)
    assert cell.bounded and 4 in cell.cycle.vertices
    assert region_within(cell, face_of_cycle(target))


def test_empty_quadrilateral_has_no_inner_cell():
    d = build_cm(4)
    with pytest.raises(NotFound):
        find_4face_in_face(d, PlaneCycle(d, (1, 2, 3, 4)), "exhaustive")


def test_crowded_face_in_dn12():
    d = build_dn(12)[0]
    cycles = enumerate_plane_cycles(d, 4)
    # the vertices are collinear, so bounded 4-faces are empty; the crowded side is the outside
    assert all(interior_vertex_count(face_of_cycle(c), d) == 0 for c in cycles)
    hull = max(cycles, key=lambda c: (face_area(face_of_cycle(c)), c.vertices))
    target = face_of_cycle(hull, "unbounded")
    assert interior_vertex_count(target, d) == 8
    for strategy in ("recursive", "exhaustive"):
        cell = find_4face_in_face(d, target, strategy, candidates=cycles)
        assert region_within(cell, target)
        assert not cell.same_cell(target)
        assert faces_disjoint(cell, face_of_cycle(hull))


def test_unbounded_target():
    d = build_cm(8)
    outer = face_of_cycle(PlaneCycle(d, (3, 4, 5, 6)), "unbounded")
    cell = find_4face_in_face(d, outer)
    assert region_within(cell, outer)


# -- the improvement loop ----------------------------------------------------

def test_disjoint_4faces_examples():
    cells, cert = disjoint_4faces(build_cm(4))
    assert [c.cycle.vertices for c in cells.cells] == [(1, 2, 3, 4)]
    cells, cert = disjoint_4faces(build_cm(8))
    assert len(cells.bounded) >= 2
    assert len(cells.bounded) <= max_disjoint_4faces_exact(build_cm(8)).value
    cells, cert = disjoint_4faces(build_dn(12)[0])
    assert cert.problems() == [] and cells.problems() == []
    assert all(inner < 6 * size for size, inner in cert.per_face)
    assert 4 * len(cells) >= len(cert.h.vertices)


def test_disjoint_4faces_errors():
    with pytest.raises(NoPlane4Cycle):
        disjoint_4faces(build_cm(3))
    with pytest.raises(IterationCapExceeded):
        disjoint_4faces(build_cm(8), max_iterations=1)


@pytest.mark.parametrize("seed", range(5))
def test_replacement_steps_keep_collection_disjoint(seed):
    d = random_straight_line(10, seed)
    cycles = enumerate_plane_cycles(d, 4)
    crowded = max(cycles, key=lambda c: (interior_vertex_count(face_of_cycle(c), d), c.vertices))
    start = FourCell(crowded, True)
    cells, cert = disjoint_4faces(d, factor=F(1, 4), initial=[start])
    assert cells.problems() == []
    assert cert.iterations >= 1
    assert all(not c.same_cell(start) for c in cells.cells)


def test_certificate_json():
    _, cert = disjoint_4faces(build_tm(6)[0])
    doc = cert.to_json()
    assert doc["counts"]["e_H_prime"] * 2 == sum(f["size"] for f in doc["faces"])
    assert sum(f["outer"] for f in doc["faces"]) == 1


# -- rerouting ---------------------------------------------------------------

def three_segments(extra=None):
    verts = {1: (0, 0), 2: (10, 1), 3: (1, 5), 4: (9, -1), 5: (4, -2), 6: (6, 8)}
    if extra:
        verts[7] = extra
    return straight(verts, [(1, 2), (3, 4), (5, 6)])


def test_mutation_minimal_example():
    d = three_segments()
    assert len(crossing_pattern(d).crosses) == 3
    m = triangle_mutation(d, (1, 2), (3, 4), (5, 6))
    assert validate_simple(m).passed
    assert crossing_pattern(m).crosses == crossing_pattern(d).crosses
    assert crossing_pattern(m).order[(1, 2)] == crossing_pattern(d).order[(1, 2)][::-1]
    back = triangle_mutation(m, (1, 2), (3, 4), (5, 6))
    assert dict(crossing_pattern(back).order) == dict(crossing_pattern(d).order)


def test_mutation_blocked_by_vertex():
    d = three_segments()
    p = crossing_pattern(d)
    from topoface.drawing import crossing_points

    pts = list(crossing_points(d).values())
    centroid = (sum(q.x for q in pts) / 3, sum(q.y for q in pts) / 3)
    blocked = three_segments(centroid)
    with pytest.raises(NotMutable) as err:
        triangle_mutation(blocked, (1, 2), (3, 4), (5, 6))
    assert "vertex 7" in err.value.condition
    assert p.crosses == crossing_pattern(blocked).crosses


def test_mutation_needs_pairwise_crossings():
    with pytest.raises(NotMutable) as err:
        triangle_mutation(build_cm(6), (1, 2), (3, 4), (5, 6))
    assert "do not cross" in err.value.condition


@pytest.mark.parametrize("d", [build_cm(6), build_tm(6)[0], random_straight_line(7, 3)], ids=["cm6", "tm6", "r7"])
def test_mutation_on_families(d):
    triples = find_mutable_triples(d)
    assert triples
    before = crossing_pattern(d)
    for e1, e2, e3 in triples[:6]:
        m = triangle_mutation(d, e1, e2, e3)
        after = crossing_pattern(m)
        assert after.crosses == before.crosses
        changed = {e for e in before.order if after.order[e] != before.order[e]}
        assert changed == {e1, e2, e3}


# -- disjoint k-faces ----------------------------------------------------------

def test_kfaces_convex_examples():
    (only,) = disjoint_kfaces_convex(4, 4)
    assert only.cycle.vertices == (1, 2, 3, 4)
    two = disjoint_kfaces_convex(8, 4)
    spans = [(min(p.x for p in f.boundary.vertices), max(p.x for p in f.boundary.vertices)) for f in two]
    assert spans[0][1] < spans[1][0]
    assert len(disjoint_kfaces_convex(13, 6)) == 2


def test_kfaces_twisted_examples():
    assert twisted_cycle(1, 4) == (1, 3, 4, 2)
    (only,) = disjoint_kfaces_twisted(4, 4)
    assert only.cycle.vertices == PlaneCycle(build_tm(4)[0], (1, 3, 4, 2)).vertices
    f1, f2 = disjoint_kfaces_twisted(8, 4)
    assert interiors_disjoint(f1.boundary, f2.boundary)
    seq = twisted_cycle(1, 6)
    assert seq == (1, 4, 6, 3, 5, 2)
    edges = [tuple(sorted((seq[i], seq[(i + 1) % 6]))) for i in range(6)]
    for e, f in itertools.combinations(edges, 2):
        if not set(e) & set(f):
            assert not twisted_crossing_predicate(*e, *f)
    assert cycle_plane_by_predicate(seq, twisted_crossing_predicate)
    assert not cycle_plane_by_predicate(seq, convex_crossing_predicate)


def test_twisted_separation_mechanism():
    d = build_tm(12)[0]
    faces = disjoint_kfaces_twisted(12, 4, d)
    checks = twisted_separation(d, faces, 4)
    assert len(checks) == 3
    assert all(c.inner_inside and c.outer_apart for c in checks)


def test_kfaces_argument_checks():
    with pytest.raises(ValueError):
        disjoint_kfaces_convex(8, 5)
    with pytest.raises(ValueError):
        disjoint_kfaces_twisted(3, 4)


# -- convex or twisted sub-drawings ------------------------------------------

def test_subset_search_examples():
    subset, kind, _ = find_convex_or_twisted_subset(build_cm(8), 5)
    assert kind == "convex" and subset == (1, 2, 3, 4, 5)
    subset, kind, _ = find_convex_or_twisted_subset(build_tm(8)[0], 5)
    assert kind == "twisted"
    # every 4-subset of a simple complete drawing with one crossing is both; the first wins
    subset, kind, labelling = find_convex_or_twisted_subset(build_dn(6)[0], 4)
    assert (subset, kind) == ((1, 2, 3, 4), "convex")
    assert sorted(labelling.values()) == [1, 2, 3, 4]


def test_subset_search_limits():
    with pytest.raises(ValueError):
        find_convex_or_twisted_subset(build_cm(8), 7)
    assert find_convex_or_twisted_subset(build_cm(3), 4) is None
