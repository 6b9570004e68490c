from fractions import Fraction

import pytest

from poeq.core import E1, E3F, E5, CapExceeded, allocation_value, parse_instance
from poeq.geometry import CENTER, corner, item_point
from poeq.generate import generate_instance
from poeq.graph import FaceClass, build_graph, face_allocation_census
from poeq.oracles import (
    Infeasible,
    Unbounded,
    grid_min_g,
    hyperplane_support_check,
    instance_from_rns_points,
    linprog_max,
    maxmin_lp,
    projective_instance,
)

from conftest import E3F_POINTS, Q, pt

F = Fraction


def test_linprog_small():
    # max x + y st x + 2y + s1 = 4, 3x + y + s2 = 6
    val, x, _ = linprog_max([1, 1, 0, 0], [[1, 2, 1, 0], [3, 1, 0, 1]], [4, 6])
    assert val == F(14, 5) and x[:2] == [F(8, 5), F(6, 5)]


def test_linprog_infeasible_and_unbounded():
    with pytest.raises(Infeasible):
        linprog_max([1], [[1]], [-1])
    with pytest.raises(Unbounded):
        linprog_max([1, 0], [[1, -1]], [0])


def test_maxmin_fixtures():
    assert maxmin_lp(E5).value == F(42, 107)
    assert maxmin_lp(E1).value == F(4, 5)
    assert maxmin_lp(E3F).value == F(2, 5)
    assert maxmin_lp(parse_instance([[1], [1], [1]])).value == F(1, 3)


def test_maxmin_allocation_attains_value():
    sol = maxmin_lp(E5)
    assert min(allocation_value(E5, sol.allocation)) == sol.value


def test_grid_e5_exact_on_grid():
    gamma, val = grid_min_g(E5, 321)
    assert val == F(42, 107)
    assert gamma == pt("90/321", "105/321", "126/321")


def test_grid_e5_coarse():
    _, val = grid_min_g(E5, 300)
    assert F(42, 107) <= val <= F(42, 107) + F(1, 100)


def test_grid_e1_center():
    assert grid_min_g(E1, 3) == (CENTER, F(4, 5))


def test_grid_rejects_small_resolution():
    with pytest.raises(ValueError):
        grid_min_g(E1, 2)


def test_support_e5_optimum_has_four_maximizers():
    val, who = hyperplane_support_check(E5, pt("30/107", "35/107", "42/107"))
    assert val == F(42, 107)
    assert who == [(0, 1), (0, 2), (2, 1), (2, 2)]


def test_support_e1_center_unique():
    assert hyperplane_support_check(E1, CENTER) == (F(4, 5), [(0, 1, 2)])


def test_support_corner():
    assert hyperplane_support_check(E5, corner(0))[0] == 1


def test_support_cap():
    inst = generate_instance(5, 0)
    with pytest.raises(CapExceeded):
        hyperplane_support_check(inst, CENTER, cap=4)


def test_rebuild_e3f():
    assert instance_from_rns_points(E3F_POINTS) == E3F


def test_three_centers_merge():
    inst = instance_from_rns_points([CENTER] * 3)
    g = build_graph(inst)
    assert len(g.vertices) == 1 and g.vertices[0].face_class is FaceClass.F1
    assert face_allocation_census(inst, g.vertices[0]).counts() == (3, 3, 0, 0)


def test_e5_points_plus_q_have_no_positive_masses():
    # the unique masses are (8/5, 7/5, 0): q would carry no value at all
    with pytest.raises(Infeasible):
        instance_from_rns_points([item_point(E5, 0), item_point(E5, 1), Q])


def test_projective_fallback_keeps_f5():
    inst = projective_instance([item_point(E5, 0), item_point(E5, 1), Q])
    g = build_graph(inst)
    assert [str(v.face_class) for v in g.vertices] == ["F1", "F1", "F5"]
    assert face_allocation_census(inst, g.vertices[2]).counts() == (12, 5, 4, 3)


def test_too_few_points():
    with pytest.raises(ValueError):
        instance_from_rns_points([CENTER, Q])
