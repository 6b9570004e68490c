import random
from fractions import Fraction

import pytest

from poeq.core import E1, E3F, E5
from poeq.geometry import (
    CENTER,
    OVERLAP,
    BoundaryPoint,
    DisputeRecord,
    ZeroSum,
    corner,
    disputants_at,
    geometric_disputants,
    item_point,
    normalize_point,
    on_segment,
    rd_map,
    s_independent,
    segment_intersection,
    support_segment,
)

from conftest import Q, pt


def test_item_points_of_e5():
    # columns divided by their sums: (0.7,0.4,0.5)/1.6 and (0.3,0.6,0.5)/1.4
    assert item_point(E5, 0) == pt("7/16", "4/16", "5/16")
    assert item_point(E5, 1) == pt("3/14", "6/14", "5/14")


def test_rd_map_is_an_involution_on_samples():
    rng = random.Random(3)
    for _ in range(200):
        x = normalize_point([Fraction(rng.randint(1, 50)) for _ in range(3)])
        assert rd_map(rd_map(x)) == x


def test_rd_map_of_q():
    assert rd_map(Q) == pt("30/107", "35/107", "42/107")


def test_rd_map_rejects_boundary():
    with pytest.raises(BoundaryPoint):
        rd_map(pt(0, "1/2", "1/2"))


def test_normalize_zero():
    with pytest.raises(ZeroSum):
        normalize_point([0, 0, 0])


def test_e5_crossing_is_q():
    s = support_segment(E5, 0, 1)
    t = support_segment(E5, 1, 0)
    assert segment_intersection(s, t) == Q


def test_e5_other_pairs_miss():
    hits = []
    for v in range(3):
        for w in range(3):
            r = segment_intersection(support_segment(E5, 0, v), support_segment(E5, 1, w))
            if r is not None:
                hits.append((v, w, r))
    assert hits == [(1, 0, Q)]


def test_same_corner_collinear_segments_overlap():
    inst = E3F
    # items on a common line through corner I: (1/5,2/5,2/5) and the center direction
    s = support_segment(inst, 0, 0)
    p = pt("1/2", "1/4", "1/4")
    from poeq.geometry import SupportSegment
    t = SupportSegment(9, 0, p)
    assert segment_intersection(s, t) is OVERLAP


def test_on_segment_excludes_corner_and_beyond():
    p = item_point(E3F, 0).b
    assert on_segment(CENTER.b, p, 0)
    assert on_segment(p, p, 0)
    assert not on_segment(corner(0).b, p, 0)
    # beyond the item, away from the corner
    assert not on_segment(pt("1/10", "9/20", "9/20").b, p, 0)


def test_s_independence():
    assert s_independent(E5, 0, 1)
    assert s_independent(E1, 0, 2)


def test_e3f_center_disputes():
    assert disputants_at(E3F, CENTER, 0) == DisputeRecord(0, (1, 2))
    assert disputants_at(E3F, CENTER, 2) == DisputeRecord(2, (0, 1))
    p = item_point(E3F, 1)
    assert disputants_at(E3F, p, 1) == DisputeRecord(1, (0, 1, 2))


def test_geometric_and_weighted_owners_agree_on_random_points():
    rng = random.Random(11)
    for _ in range(300):
        beta = normalize_point([Fraction(rng.randint(1, 40)) for _ in range(3)])
        for inst in (E1, E5, E3F):
            for j in range(inst.m):
                w = disputants_at(inst, beta, j)
                w = (w,) if isinstance(w, int) else w.disputants
                assert geometric_disputants(inst, beta, j) == w


def test_dispute_record_size():
    with pytest.raises(ValueError):
        DisputeRecord(0, (1,))
