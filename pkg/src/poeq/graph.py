"""The vertex/arc graph over the arrangement of supporting segments.

Vertices are item points and crossings of supporting segments; each one
stands for a Pareto face and carries its face class.  Arcs join vertices
that are consecutive along a supporting segment, which is exactly the
adjacency of the corresponding faces.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, List, Optional, Sequence, Set, Tuple

from . import hull
from .core import PLAYERS, Instance, ValueVector
from .geometry import (
    CENTER,
    DisputeRecord,
    SimplexPoint,
    other_players,
    cross_point,
    rd_map,
    weighted_argmax,
)

Segment = Tuple[int, int]  # (item, corner it runs toward)
Key = Tuple[int, int, int]


class DegenerateFace(ValueError):
    pass


class FaceClass(enum.Enum):
    F1 = "F1"
    F2 = "F2"
    F3 = "F3"
    F4 = "F4"
    F5 = "F5"
    F6 = "F6"
    DEGENERATE = "Degenerate"

    def __str__(self) -> str:
        return self.value


_CLASS_TABLE = {
    (1, 0): FaceClass.F1,
    (0, 2): FaceClass.F2,
    (0, 3): FaceClass.F3,
    (1, 1): FaceClass.F4,
    (1, 2): FaceClass.F5,
    (1, 3): FaceClass.F6,
}

#: (allocations, hull vertices, edge points, interior points) per face class
CENSUS_TABLE = {
    FaceClass.F1: (3, 3, 0, 0),
    FaceClass.F2: (4, 4, 0, 0),
    FaceClass.F3: (8, 6, 0, 2),
    FaceClass.F4: (6, 4, 2, 0),
    FaceClass.F5: (12, 5, 4, 3),
    FaceClass.F6: (24, 6, 6, 12),
}


def _class_of(items_here: Sequence[int], segments_through: Sequence[Segment]) -> FaceClass:
    p = 1 if items_here else 0
    # several items on one disputing segment act as a single merged good
    q = len({c for _, c in segments_through})
    return _CLASS_TABLE.get((p, q), FaceClass.DEGENERATE)


@dataclass(frozen=True)
class FaceVertex:
    index: int
    location: SimplexPoint
    items_here: Tuple[int, ...]
    segments_through: Tuple[Segment, ...]
    face_class: FaceClass
    dispute_set: Tuple[DisputeRecord, ...]
    key: Key

    def __str__(self) -> str:
        return f"v{self.index}{self.location}[{self.face_class}]"


@dataclass(frozen=True)
class Arc:
    u: int
    v: int
    carrier: Segment


@dataclass
class RnsGraph:
    instance: Instance
    vertices: List[FaceVertex]
    arcs: List[Arc]
    adjacency: List[List[Tuple[int, int]]]  # vertex -> [(neighbor, arc index)]

    def neighbors(self, i: int) -> List[int]:
        return [n for n, _ in self.adjacency[i]]

    def arc_between(self, i: int, j: int) -> Arc:
        for n, a in self.adjacency[i]:
            if n == j:
                return self.arcs[a]
        raise KeyError(f"no arc between v{i} and v{j}")

    def class_histogram(self) -> Dict[str, int]:
        hist: Dict[str, int] = {}
        for v in self.vertices:
            hist[str(v.face_class)] = hist.get(str(v.face_class), 0) + 1
        return dict(sorted(hist.items()))

    def vertex_at(self, point: SimplexPoint) -> Optional[FaceVertex]:
        for v in self.vertices:
            if v.location == point:
                return v
        return None

    def closest_to_center(self) -> FaceVertex:
        def d2(v: FaceVertex):
            return sum((x - c) ** 2 for x, c in zip(v.location, CENTER))
        return min(self.vertices, key=lambda v: (d2(v), v.index))


def _reduce(x: Sequence[int]) -> Key:
    g = gcd(gcd(x[0], x[1]), x[2])
    return (x[0] // g, x[1] // g, x[2] // g)


def int_column(col: Sequence[Fraction]) -> Key:
    """A positive triple scaled to coprime integers; same point of the simplex."""
    den = lcm(*(c.denominator for c in col))
    return _reduce([c.numerator * (den // c.denominator) for c in col])


def build_graph(inst: Instance) -> RnsGraph:
    m = inst.m
    cols = [int_column(inst.column(j)) for j in range(m)]

    items_at: Dict[Key, List[int]] = {}
    for j, c in enumerate(cols):
        items_at.setdefault(c, []).append(j)

    through: Dict[Key, Set[Segment]] = {}
    on_segment: Dict[Segment, Set[Key]] = {(j, v): {cols[j]} for j in range(m) for v in PLAYERS}
    pairs = [(v, w) for v in PLAYERS for w in PLAYERS if v != w]
    for j in range(m):
        p = cols[j]
        for k in range(j + 1, m):
            q = cols[k]
            # same-corner pairs only meet at the corner or overlap; neither adds a vertex
            for v, w in pairs:
                x = cross_point(p, v, q, w)
                if x is None:
                    continue
                key = _reduce(x)
                segs = through.setdefault(key, set())
                segs.add((j, v))
                segs.add((k, w))
                on_segment[(j, v)].add(key)
                on_segment[(k, w)].add(key)

    item_keys = list(dict.fromkeys(cols))
    location = {key: SimplexPoint.from_ints(key) for key in set(item_keys) | set(through)}
    rest = sorted((k for k in through if k not in items_at), key=lambda k: location[k].b)
    order = item_keys + rest

    vertices: List[FaceVertex] = []
    index_of: Dict[Key, int] = {}
    for idx, key in enumerate(order):
        here = tuple(items_at.get(key, ()))
        segs = tuple(sorted(s for s in through.get(key, ()) if s[0] not in here))
        disputes = [DisputeRecord(j, PLAYERS) for j in here]
        disputes += [DisputeRecord(j, other_players(c)) for j, c in segs]
        disputes.sort(key=lambda d: d.item)
        if len({d.item for d in disputes}) != len(disputes):
            raise AssertionError(f"item disputed twice at {location[key]}")
        vertices.append(FaceVertex(idx, location[key], here, segs,
                                   _class_of(here, segs), tuple(disputes), key))
        index_of[key] = idx

    arcs: List[Arc] = []
    adjacency: List[List[Tuple[int, int]]] = [[] for _ in vertices]
    seen: Set[Tuple[int, int]] = set()
    for (j, c), keys in sorted(on_segment.items()):
        # move from the item end toward the corner: coordinate c grows
        ordered = sorted(keys, key=lambda k: Fraction(k[c], k[0] + k[1] + k[2]))
        for a, b in zip(ordered, ordered[1:]):
            u, v = index_of[a], index_of[b]
            pair = (min(u, v), max(u, v))
            if pair in seen:
                continue
            seen.add(pair)
            adjacency[u].append((v, len(arcs)))
            adjacency[v].append((u, len(arcs)))
            arcs.append(Arc(u, v, (j, c)))
    for adj in adjacency:
        adj.sort()
    return RnsGraph(inst, vertices, arcs, adjacency)


def classify_vertex(v: FaceVertex) -> FaceClass:
    return _class_of(v.items_here, v.segments_through)


@dataclass(frozen=True)
class ParResult:
    fixed_owner: Tuple[Optional[int], ...]
    disputes: Tuple[DisputeRecord, ...]
    fixed_value: ValueVector


def par_allocation(inst: Instance, beta: SimplexPoint) -> ParResult:
    """Assign every item by the weights ``rd_map(beta)``; ties become disputes."""
    gamma = rd_map(beta).b
    owners: List[Optional[int]] = []
    disputes: List[DisputeRecord] = []
    fixed = [Fraction(0)] * 3
    for j in range(inst.m):
        col = inst.column(j)
        best = weighted_argmax(gamma, col)
        if len(best) == 1:
            owners.append(best[0])
            fixed[best[0]] += col[best[0]]
        else:
            owners.append(None)
            disputes.append(DisputeRecord(j, best))
    return ParResult(tuple(owners), tuple(disputes), tuple(fixed))


@dataclass(frozen=True)
class Composite:
    """Disputed goods sharing one set of disputants, merged by summing values."""

    disputants: Tuple[int, ...]
    items: Tuple[int, ...]
    totals: ValueVector


def composites(inst: Instance, disputes: Sequence[DisputeRecord]) -> List[Composite]:
    groups: Dict[Tuple[int, ...], List[int]] = {}
    for d in disputes:
        groups.setdefault(d.disputants, []).append(d.item)
    out = []
    for who, items in groups.items():
        totals = tuple(sum((inst.a(i, j) for j in items), Fraction(0)) for i in PLAYERS)
        out.append(Composite(who, tuple(items), totals))
    out.sort(key=lambda c: c.items[0])
    return out


@dataclass(frozen=True)
class CensusPoint:
    assignment: Tuple[int, ...]  # receiving player per composite
    value: ValueVector
    kind: str  # hull.VERTEX / hull.EDGE / hull.INTERIOR


@dataclass(frozen=True)
class Census:
    allocations: int
    hull_vertices: int
    on_edge: int
    interior: int
    composites: Tuple[Composite, ...]
    points: Tuple[CensusPoint, ...]

    def counts(self) -> Tuple[int, int, int, int]:
        return (self.allocations, self.hull_vertices, self.on_edge, self.interior)


def face_allocation_census(inst: Instance, v: FaceVertex) -> Census:
    """Enumerate the whole-composite allocations spanning the face at ``v``.

    All such value vectors lie on one supporting plane with positive
    normal, so dropping the third coordinate is a faithful 2D chart.
    """
    if v.face_class is FaceClass.DEGENERATE:
        raise DegenerateFace(f"{v} is outside the six face classes")
    par = par_allocation(inst, v.location)
    comps = composites(inst, v.dispute_set)
    values = []
    choices = list(itertools.product(*(c.disputants for c in comps)))
    for choice in choices:
        val = list(par.fixed_value)
        for comp, who in zip(comps, choice):
            val[who] += comp.totals[who]
        values.append(tuple(val))
    kinds = hull.classify_points([(x[0], x[1]) for x in values])
    points = tuple(CensusPoint(c, val, k) for c, val, k in zip(choices, values, kinds))
    return Census(
        allocations=len(points),
        hull_vertices=kinds.count(hull.VERTEX),
        on_edge=kinds.count(hull.EDGE),
        interior=kinds.count(hull.INTERIOR),
        composites=tuple(comps),
        points=points,
    )
