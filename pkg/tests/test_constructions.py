import itertools
from fractions import Fraction as F

import pytest

from topoface.constructions import (
    build_cm,
    build_dn,
    build_tm,
    convex_crossing_predicate,
    dn_crossing_predicate,
    pattern_mismatches,
    predicate_crosses,
    twisted_crossing_predicate,
)
from topoface.drawing import crossing_pattern, crossing_points
from topoface.errors import SharedEndpoint
from topoface.geometry import Point


def test_predicate_examples():
    assert convex_crossing_predicate(1, 3, 2, 4)
    assert not twisted_crossing_predicate(1, 3, 2, 4)
    assert twisted_crossing_predicate(1, 4, 2, 3)
    assert not dn_crossing_predicate(1, 2, 3, 4)
    with pytest.raises(SharedEndpoint):
        convex_crossing_predicate(1, 2, 2, 3)


def test_dn_small_cases():
    d, _ = build_dn(1)
    assert d.n == 1 and not d.edges
    d, _ = build_dn(2)
    assert list(d.edges) == [(1, 2)]
    assert d.vertices[1] == Point(F(1, 6), F(1, 2))
    assert d.vertices[2] == Point(F(1, 2) + F(2, 6), F(1, 2))
    assert not crossing_pattern(d).crosses


def test_dn5_crossings_are_the_interleaving_quadruples():
    d, _ = build_dn(5)
    assert len(d.edges) == 10
    expected = {
        ((a, c), (b, e))
        for a, b, c, e in itertools.combinations(range(1, 6), 4)
    }
    assert crossing_pattern(d).crosses == expected
    assert len(expected) == 5


@pytest.mark.parametrize("n", range(1, 11))
def test_dn_layout_invariants(n):
    d, layout = build_dn(n)
    assert layout.check() == []
    assert pattern_mismatches(crossing_pattern(d), dn_crossing_predicate) == []
    assert all(0 <= c <= 1 for p in d.vertices.values() for c in p)
    assert all(0 <= c <= 1 for ln in d.edges.values() for p in ln.points for c in p)
    # crossings only happen on the lower U-shaped parts
    assert all(p.y < F(1, 2) for p in crossing_points(d).values())


def test_dn_edge_is_concatenation_of_its_parts():
    d, layout = build_dn(6)
    for i1, i2 in itertools.combinations(range(1, 7), 2):
        j1, j2 = layout.targets(i1, i2)
        pts = d.edges[(i1, i2)].points
        up1, low, up2 = layout.upper[(i1, j1)].points, layout.lower[(i1, i2)].points, layout.upper[(i2, j2)].points
        assert pts[: len(up1)] == up1
        assert pts[len(up1) - 1: len(up1) - 1 + len(low)] == low
        assert pts[-len(up2):] == up2[::-1]


def test_cm_examples():
    assert not crossing_pattern(build_cm(3)).crosses
    assert crossing_pattern(build_cm(4)).crosses == {((1, 3), (2, 4))}
    assert len(crossing_pattern(build_cm(6)).crosses) == 15


def test_tm_examples():
    assert not crossing_pattern(build_tm(3)[0]).crosses
    assert crossing_pattern(build_tm(4)[0]).crosses == {((1, 4), (2, 3))}
    assert len(crossing_pattern(build_tm(6)[0]).crosses) == 15


@pytest.mark.parametrize("m", range(1, 11))
def test_cm_tm_patterns(m):
    assert pattern_mismatches(crossing_pattern(build_cm(m)), convex_crossing_predicate) == []
    d, layout = build_tm(m)
    assert layout.check() == []
    assert pattern_mismatches(crossing_pattern(d), twisted_crossing_predicate) == []


def test_predicate_counts():
    for m in range(4, 9):
        total = len(list(itertools.combinations(range(m), 4)))
        for pred in (convex_crossing_predicate, twisted_crossing_predicate, dn_crossing_predicate):
            assert len(predicate_crosses(m, pred)) == total
