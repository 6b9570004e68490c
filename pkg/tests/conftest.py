from fractions import Fraction

import pytest

from poeq.core import E1, E3F, E5
from poeq.geometry import CENTER, SimplexPoint
from poeq.oracles import Infeasible, instance_from_rns_points, projective_instance


def pt(*xs) -> SimplexPoint:
    return SimplexPoint.of(*(Fraction(x) for x in xs))


Q = pt("7/18", "6/18", "5/18")
E3F_POINTS = [pt("1/5", "2/5", "2/5"), pt("2/5", "1/5", "2/5"), pt("2/5", "2/5", "1/5")]


def build_from_points(points):
    """Exact masses when possible, otherwise the corner-fixing projective rescale."""
    try:
        return instance_from_rns_points(points)
    except Infeasible:
        return projective_instance(points)


FACE_FIXTURE_POINTS = {
    # center as an item, plus one item whose segment toward I meets it
    "F4": [CENTER, E3F_POINTS[0], pt("3/5", "3/10", "1/10")],
    "F5": [CENTER, E3F_POINTS[0], E3F_POINTS[1]],
    "F6": [CENTER] + E3F_POINTS,
}


@pytest.fixture
def e1():
    return E1


@pytest.fixture
def e5():
    return E5


@pytest.fixture
def e3f():
    return E3F


#: one "PASS/FAIL [n] ..." line per acceptance criterion, filled as tests run
ACCEPTANCE_LINES = []


def record_acceptance(number: int, ok: bool, text: str) -> bool:
    line = f"{'PASS' if ok else 'FAIL'} [{number:2d}] {text}"
    print(line)
    ACCEPTANCE_LINES.append((number, line))
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
