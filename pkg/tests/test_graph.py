import itertools
from fractions import Fraction

import pytest

from poeq.core import E1, E3F, E5, parse_instance
from poeq.geometry import CENTER
from poeq.graph import (
    CENSUS_TABLE,
    FaceClass,
    build_graph,
    classify_vertex,
    composites,
    face_allocation_census,
    par_allocation,
)

from conftest import FACE_FIXTURE_POINTS, Q, build_from_points, pt


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def brute_census(values):
    """Hull labels without a hull: extreme-point and supporting-line tests only."""
    pts = [(v[0], v[1]) for v in values]
    distinct = sorted(set(pts))

    def in_triangle(p, a, b, c):
        d = [_cross(a, b, p), _cross(b, c, p), _cross(c, a, p)]
        return not (min(d) < 0 < max(d))

    def on_seg(p, a, b):
        return _cross(a, b, p) == 0 and min(a, b) <= p <= max(a, b)

    def extreme(p):
        others = [q for q in distinct if q != p]
        if any(on_seg(p, a, b) for a, b in itertools.combinations(others, 2)):
            return False
        return not any(in_triangle(p, a, b, c) and _cross(a, b, c) != 0
                       for a, b, c in itertools.combinations(others, 3))

    def boundary(p):
        for r in distinct:
            if r == p:
                continue
            side = [_cross(p, r, x) for x in distinct]
            if min(side) >= 0 or max(side) <= 0:
                return True
        return False

    kinds = []
    for p in pts:
        kinds.append("v" if extreme(p) else "e" if boundary(p) else "i")
    return (len(pts), kinds.count("v"), kinds.count("e"), kinds.count("i"))


def test_e1_six_cycle():
    g = build_graph(E1)
    assert len(g.vertices) == 6
    assert g.class_histogram() == {"F1": 3, "F2": 3}
    assert all(len(g.neighbors(i)) == 2 for i in range(6))
    # connected single cycle
    seen, cur, prev = [0], 0, None
    while True:
        nxt = [n for n in g.neighbors(cur) if n != prev][0]
        if nxt == 0:
            break
        seen.append(nxt)
        prev, cur = cur, nxt
    assert sorted(seen) == list(range(6))


def test_e1_crossings_positions():
    g = build_graph(E1)
    crossings = {v.location for v in g.vertices if v.face_class is FaceClass.F2}
    # (4/5,1/10,1/10) toward II meets (1/10,4/5,1/10) toward I at (8,8,1)/17
    assert pt("8/17", "8/17", "1/17") in crossings


def test_e5_path_graph():
    g = build_graph(E5)
    assert len(g.vertices) == 3
    qv = g.vertex_at(Q)
    assert qv is not None and qv.face_class is FaceClass.F2
    assert sorted(g.neighbors(qv.index)) == [0, 1]
    assert g.closest_to_center() is qv


def test_e3f_star():
    g = build_graph(E3F)
    c = g.vertex_at(CENTER)
    assert c.face_class is FaceClass.F3
    assert sorted(g.neighbors(c.index)) == [0, 1, 2]
    assert [len(g.neighbors(i)) for i in range(3)] == [1, 1, 1]


def test_single_item_graph():
    g = build_graph(parse_instance([[1], [1], [1]]))
    assert len(g.vertices) == 1 and g.arcs == []
    assert g.vertices[0].face_class is FaceClass.F1


def test_classify_vertex_matches_stored():
    for inst in (E1, E5, E3F):
        for v in build_graph(inst).vertices:
            assert classify_vertex(v) is v.face_class


def test_par_allocation_e5_at_q():
    par = par_allocation(E5, Q)
    assert par.fixed_owner == (None, None)
    assert [d.disputants for d in par.disputes] == [(0, 2), (1, 2)]
    assert par.fixed_value == (0, 0, 0)


def test_par_allocation_e1_center():
    par = par_allocation(E1, CENTER)
    assert par.fixed_owner == (0, 1, 2)
    assert par.fixed_value == (Fraction(4, 5),) * 3


def test_merged_composites_on_one_segment():
    # items 1 and 2 share a line through corner I; item 3's segment toward II crosses it
    inst = build_from_points([pt("1/5", "2/5", "2/5"), pt("1/10", "9/20", "9/20"), pt("3/5", "1/10", "3/10")])
    g = build_graph(inst)
    assert [str(v.face_class) for v in g.vertices] == ["F4", "F1", "F1", "F2"]
    v = g.vertices[3]
    assert v.segments_through == ((0, 0), (1, 0), (2, 1))
    comps = composites(inst, v.dispute_set)
    assert [(c.disputants, c.items) for c in comps] == [((1, 2), (0, 1)), ((0, 2), (2,))]
    assert face_allocation_census(inst, v).counts() == (4, 4, 0, 0)
    # item 1 sits on item 2's segment toward I, so its own vertex is a trapezoid face
    assert face_allocation_census(inst, g.vertices[0]).counts() == (6, 4, 2, 0)


@pytest.mark.parametrize("cls", ["F1", "F2", "F3"])
def test_census_small_classes(cls):
    inst = {"F1": E5, "F2": E5, "F3": E3F}[cls]
    for v in build_graph(inst).vertices:
        if str(v.face_class) == cls:
            c = face_allocation_census(inst, v)
            assert c.counts() == CENSUS_TABLE[v.face_class]
            assert brute_census([p.value for p in c.points]) == c.counts()


def test_e3f_interior_census_points():
    g = build_graph(E3F)
    c = face_allocation_census(E3F, g.vertex_at(CENTER))
    interior = [p.value for p in c.points if p.kind == "interior"]
    assert interior == [(Fraction(2, 5),) * 3] * 2


@pytest.mark.parametrize("cls", ["F4", "F5", "F6"])
def test_census_large_classes(cls):
    inst = build_from_points(FACE_FIXTURE_POINTS[cls])
    g = build_graph(inst)
    target = [v for v in g.vertices if str(v.face_class) == cls]
    assert len(target) == 1
    c = face_allocation_census(inst, target[0])
    assert c.counts() == CENSUS_TABLE[target[0].face_class]
    assert brute_census([p.value for p in c.points]) == c.counts()


def test_census_table_is_the_six_shapes():
    assert CENSUS_TABLE[FaceClass.F5] == (12, 5, 4, 3)
    assert CENSUS_TABLE[FaceClass.F6] == (24, 6, 6, 12)
