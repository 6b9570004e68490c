"""The support function g, descent over the face graph, and equitable extraction.

``g(gamma) = sum_j max_i gamma_i a_ij`` is the value of the supporting
hyperplane with normal ``gamma``.  Pulled back through ``rd_map`` it becomes
``g_tilde`` on the simplex of item points, and its minimum over the graph
vertices picks out the Pareto face met by the egalitarian ray.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .core import PLAYERS, AllocationMatrix, Instance, allocation_value
from .geometry import BoundaryPoint, SimplexPoint, other_players, rd_map
from .graph import FaceVertex, RnsGraph, build_graph, composites, par_allocation


class EmptyGraph(ValueError):
    pass


class NoEquitablePointOnFace(RuntimeError):
    pass


class SplitPattern(enum.Enum):
    NO_SPLIT = "NoSplit"
    ONE_ITEM = "OneItemUpTo3Players"
    TWO_ITEMS = "TwoItemsTwoPlayersEach"

    def __str__(self) -> str:
        return self.value


def g_value(inst: Instance, gamma: SimplexPoint) -> Fraction:
    total = Fraction(0)
    for j in range(inst.m):
        total += max(gamma[i] * inst.values[i][j] for i in PLAYERS)
    return total


def g_tilde(inst: Instance, beta: SimplexPoint) -> Fraction:
    return g_value(inst, rd_map(beta))


def _require_interior(c: SimplexPoint) -> None:
    if not c.interior:
        raise BoundaryPoint(f"{c} is on the simplex boundary")


def delta_prime(c: SimplexPoint, toward: int = 0) -> Fraction:
    """Rate at which the weights move when ``c`` slides toward corner ``toward``.

    The slide adds ``eps`` to ``c[toward]`` and shrinks the other two
    coordinates in proportion.
    """
    _require_interior(c)
    a, b = other_players(toward)
    ca, cb, cv = c[a], c[b], c[toward]
    s, p = ca + cb, ca * cb
    return p / (s * (p + cv * s) ** 2)


@dataclass(frozen=True)
class ShiftVector:
    s: Tuple[Fraction, Fraction, Fraction]
    toward: bool
    corner: int

    def __post_init__(self):
        if sum(self.s) != 0:
            raise ValueError("shift components must sum to zero")

    def __getitem__(self, i: int) -> Fraction:
        return self.s[i]


def shift_direction(c: SimplexPoint, toward: int, away: bool = False) -> ShiftVector:
    """Derivative of ``rd_map`` when ``c`` moves toward (or away from) a corner.

    Toward corner I this is ``delta_prime(c) * (-(c2 + c3), c3, c2)``; the
    other corners follow by exchanging roles.
    """
    d = delta_prime(c, toward)
    a, b = other_players(toward)
    s = [Fraction(0)] * 3
    s[toward] = -(c[a] + c[b]) * d
    s[a] = c[b] * d
    s[b] = c[a] * d
    if away:
        s = [-x for x in s]
    return ShiftVector(tuple(s), not away, toward)


def slide(c: SimplexPoint, toward: int, eps: Fraction) -> SimplexPoint:
    """The point reached from ``c`` after moving ``eps`` along the line to a corner."""
    a, b = other_players(toward)
    rest = c[a] + c[b]
    x = [Fraction(0)] * 3
    x[toward] = c[toward] + eps
    x[a] = c[a] - eps * c[a] / rest
    x[b] = c[b] - eps * c[b] / rest
    return SimplexPoint(tuple(x))


def directional_derivative(inst: Instance, c: SimplexPoint, s: ShiftVector) -> Fraction:
    """One-sided derivative of ``g_tilde`` at ``c`` along the shift ``s``."""
    par = par_allocation(inst, c)
    total = sum((s[i] * par.fixed_value[i] for i in PLAYERS), Fraction(0))
    for d in par.disputes:
        total += max(s[i] * inst.values[i][d.item] for i in d.disputants)
    return total


def arc_shift(graph: RnsGraph, u: int, v: int) -> ShiftVector:
    """Shift of the weights when leaving vertex ``u`` along the arc to ``v``."""
    _, corner_ = graph.arc_between(u, v).carrier
    here, there = graph.vertices[u].location, graph.vertices[v].location
    return shift_direction(here, corner_, away=there[corner_] < here[corner_])


@dataclass(frozen=True)
class EquitableSolution:
    allocation: AllocationMatrix
    split_count: int
    split_pattern: SplitPattern
    value: Fraction
    splits: Tuple[Tuple[int, Dict[int, Fraction]], ...]


@dataclass
class SolveReport:
    path: List[FaceVertex]
    optimal_vertex: FaceVertex
    gamma_star: SimplexPoint
    value: Optional[Fraction]
    allocation: Optional[AllocationMatrix]
    splits: Tuple[Tuple[int, Dict[int, Fraction]], ...]
    split_pattern: Optional[SplitPattern]
    iterations: int
    algorithm: str
    graph: RnsGraph = field(repr=False)
    path_values: List[Fraction] = field(default_factory=list)


class _Cache:
    def __init__(self, inst: Instance, graph: RnsGraph):
        self.inst, self.graph = inst, graph
        self._g: Dict[int, Fraction] = {}

    def g(self, i: int) -> Fraction:
        if i not in self._g:
            self._g[i] = g_tilde(self.inst, self.graph.vertices[i].location)
        return self._g[i]


def _start(graph: RnsGraph, start) -> FaceVertex:
    if not graph.vertices:
        raise EmptyGraph("graph has no vertices")
    if start is None:
        return graph.closest_to_center()
    if isinstance(start, int):
        return graph.vertices[start]
    return start


def is_local_minimum(inst: Instance, graph: RnsGraph, i: int, cache: Optional[_Cache] = None) -> bool:
    cache = cache or _Cache(inst, graph)
    return all(cache.g(i) <= cache.g(n) for n in graph.neighbors(i))


def _report(inst, graph, path, cache, algorithm) -> SolveReport:
    last = path[-1]
    return SolveReport(
        path=[graph.vertices[i] for i in path],
        optimal_vertex=graph.vertices[last],
        gamma_star=rd_map(graph.vertices[last].location),
        value=None, allocation=None, splits=(), split_pattern=None,
        iterations=len(path) - 1,
        algorithm=algorithm,
        graph=graph,
        path_values=[cache.g(i) for i in path],
    )


def simple_descent(inst: Instance, graph: RnsGraph, start=None) -> SolveReport:
    """Move to the best neighbor while it strictly improves ``g_tilde``."""
    cache = _Cache(inst, graph)
    cur = _start(graph, start).index
    path = [cur]
    while True:
        best = min(graph.neighbors(cur), key=lambda n: (cache.g(n), n), default=None)
        if best is None or cache.g(best) >= cache.g(cur):
            break
        cur = best
        path.append(cur)
    return _report(inst, graph, path, cache, "simple")


def steepest_descent(inst: Instance, graph: RnsGraph, start=None) -> SolveReport:
    """Follow the arc with the most negative derivative until none remains."""
    cache = _Cache(inst, graph)
    cur = _start(graph, start).index
    path = [cur]
    while True:
        slopes = [(directional_derivative(inst, graph.vertices[cur].location, arc_shift(graph, cur, n)), n)
                  for n in graph.neighbors(cur)]
        if not slopes or min(slopes)[0] >= 0:
            break
        cur = min(slopes)[1]
        path.append(cur)
    if not is_local_minimum(inst, graph, cur, cache):
        raise AssertionError(f"steepest descent stopped at v{cur}, which is not a local minimum")
    return _report(inst, graph, path, cache, "steepest")


def _solve_exact(rows: List[List[Fraction]], rhs: List[Fraction], n: int) -> Optional[List[Fraction]]:
    """Unique solution of a small linear system, or None if singular or inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    r = 0
    for col in range(n):
        piv = next((k for k in range(r, len(aug)) if aug[k][col] != 0), None)
        if piv is None:
            return None
        aug[r], aug[piv] = aug[piv], aug[r]
        f = aug[r][col]
        aug[r] = [x / f for x in aug[r]]
        for k in range(len(aug)):
            if k != r and aug[k][col] != 0:
                g = aug[k][col]
                aug[k] = [x - g * y for x, y in zip(aug[k], aug[r])]
        r += 1
    if any(row[n] != 0 for row in aug[r:]):
        return None
    return [aug[k][n] for k in range(n)]


def _rank(rows: List[List[Fraction]]) -> int:
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((k for k in range(rank, len(m)) if m[k][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for k in range(rank + 1, len(m)):
            f = m[k][col] / m[rank][col]
            m[k] = [x - f * y for x, y in zip(m[k], m[rank])]
        rank += 1
    return rank


def _expand(inst: Instance, comp, shares: Dict[int, Fraction], x: List[List[Fraction]]) -> None:
    """Hand out a composite's items in index order, cutting where a share runs out."""
    mass = [inst.values[comp.disputants[0]][j] for j in comp.items]
    total = sum(mass)
    players = [i for i in comp.disputants if shares[i] > 0]
    quota = {i: shares[i] * total for i in players}
    k = 0
    for j, w in zip(comp.items, mass):
        left = w
        while left > 0:
            i = players[k]
            take = min(left, quota[i])
            x[i][j] += take / w
            quota[i] -= take
            left -= take
            if quota[i] == 0 and k + 1 < len(players):
                k += 1


def classify_splits(alloc: AllocationMatrix) -> SplitPattern:
    split = alloc.split_items()
    if not split:
        return SplitPattern.NO_SPLIT
    if len(split) == 1:
        return SplitPattern.ONE_ITEM
    if len(split) == 2 and all(sum(1 for x in alloc.column(j) if x > 0) == 2 for j in split):
        return SplitPattern.TWO_ITEMS
    raise AssertionError(f"split pattern outside the theorem's cases: items {split}")


def extract_equitable(inst: Instance, v: FaceVertex) -> EquitableSolution:
    """Equal-value allocation inside the face at ``v``, compatible with its disputes.

    Each composite carries one share per disputant, the first one fixed by
    the others.  Pinning shares to zero, in item order and with the
    highest-index player first, visits the vertices of the feasible region;
    the first one that meets both equal-value equations wins.
    """
    par = par_allocation(inst, v.location)
    comps = composites(inst, par.disputes)

    # unknowns: every disputant share except the first of each composite
    unknowns = [(c, i) for c, comp in enumerate(comps) for i in comp.disputants[1:]]
    n = len(unknowns)
    pos = {u: k for k, u in enumerate(unknowns)}

    def share_form(c: int, i: int) -> Tuple[List[Fraction], Fraction]:
        """Share of player i in composite c as (coefficients, constant)."""
        coef = [Fraction(0)] * n
        comp = comps[c]
        if i == comp.disputants[0]:
            for o in comp.disputants[1:]:
                coef[pos[(c, o)]] = Fraction(-1)
            return coef, Fraction(1)
        coef[pos[(c, i)]] = Fraction(1)
        return coef, Fraction(0)

    def value_form(i: int) -> Tuple[List[Fraction], Fraction]:
        coef = [Fraction(0)] * n
        const = par.fixed_value[i]
        for c, comp in enumerate(comps):
            if i in comp.disputants:
                sc, s0 = share_form(c, i)
                t = comp.totals[i]
                coef = [a + t * b for a, b in zip(coef, sc)]
                const += t * s0
        return coef, const

    vals = [value_form(i) for i in PLAYERS]
    eq_rows, eq_rhs = [], []
    for i in (0, 1):
        (a, a0), (b, b0) = vals[i], vals[i + 1]
        eq_rows.append([x - y for x, y in zip(a, b)])
        eq_rhs.append(b0 - a0)

    pins = [(c, i) for c, comp in enumerate(comps) for i in sorted(comp.disputants, reverse=True)]

    def feasible(y: List[Fraction]) -> bool:
        for c, i in pins:
            sc, s0 = share_form(c, i)
            if s0 + sum(a * b for a, b in zip(sc, y)) < 0:
                return False
        return True

    solution: Optional[List[Fraction]] = None
    if n == 0:
        if eq_rhs == [0, 0]:
            solution = []
    else:
        rank = _rank(eq_rows)
        for size in range(max(n - rank, 0), n + 1):
            for combo in itertools.combinations(pins, size):
                rows = eq_rows + [share_form(c, i)[0] for c, i in combo]
                rhs = eq_rhs + [-share_form(c, i)[1] for c, i in combo]
                y = _solve_exact(rows, rhs, n)
                if y is not None and feasible(y):
                    solution = y
                    break
            if solution is not None:
                break
    if solution is None:
        raise NoEquitablePointOnFace(f"no equal-value allocation on the face at {v}")

    x = [[Fraction(0)] * inst.m for _ in PLAYERS]
    for j, owner in enumerate(par.fixed_owner):
        if owner is not None:
            x[owner][j] = Fraction(1)
    for c, comp in enumerate(comps):
        shares = {}
        for i in comp.disputants:
            sc, s0 = share_form(c, i)
            shares[i] = s0 + sum(a * b for a, b in zip(sc, solution))
        _expand(inst, comp, shares, x)
    alloc = AllocationMatrix(tuple(tuple(r) for r in x))
    value = allocation_value(inst, alloc)
    if not value[0] == value[1] == value[2]:
        raise AssertionError(f"extraction produced unequal values {value}")
    pattern = classify_splits(alloc)
    splits = tuple(
        (j, {i: alloc.shares[i][j] for i in PLAYERS if alloc.shares[i][j] > 0})
        for j in alloc.split_items()
    )
    return EquitableSolution(alloc, len(splits), pattern, value[0], splits)


ALGORITHMS = {"simple": simple_descent, "steepest": steepest_descent}


def solve(inst: Instance, algorithm: str = "steepest", graph: Optional[RnsGraph] = None,
          start=None) -> SolveReport:
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    graph = graph if graph is not None else build_graph(inst)
    report = ALGORITHMS[algorithm](inst, graph, start)
    eq = extract_equitable(inst, report.optimal_vertex)
    report.value = eq.value
    report.allocation = eq.allocation
    report.splits = eq.splits
    report.split_pattern = eq.split_pattern
    return report
