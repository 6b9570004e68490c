"""Exact geometry on the 2-simplex of normalized item valuations.

A point is a barycentric triple whose coordinates sum to one.  Each item
sits at its normalized value column; its three supporting segments join it
to the simplex corners.  All predicates are exact.

Lines through a corner have a convenient description: the segment from
``p`` toward corner ``v`` is the set of points whose two non-``v``
coordinates keep the ratio they have at ``p``.  Intersections therefore
reduce to products of coordinates and never need a general line solver.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence, Tuple, Union

from .core import PLAYERS, Instance, player_name


class ZeroSum(ValueError):
    pass


class BoundaryPoint(ValueError):
    pass


def other_players(v: int) -> Tuple[int, int]:
    return tuple(i for i in PLAYERS if i != v)


@dataclass(frozen=True)
class SimplexPoint:
    b: Tuple[Fraction, Fraction, Fraction]

    def __post_init__(self):
        if len(self.b) != 3:
            raise ValueError("simplex points have three coordinates")
        if any(x < 0 for x in self.b):
            raise ValueError(f"negative barycentric coordinate in {self}")
        if sum(self.b) != 1:
            raise ValueError(f"coordinates of {self} do not sum to 1")

    @classmethod
    def of(cls, b1, b2, b3) -> "SimplexPoint":
        return cls((Fraction(b1), Fraction(b2), Fraction(b3)))

    @classmethod
    def from_ints(cls, x: Sequence[int]) -> "SimplexPoint":
        s = x[0] + x[1] + x[2]
        return cls((Fraction(x[0], s), Fraction(x[1], s), Fraction(x[2], s)))

    def __getitem__(self, i: int) -> Fraction:
        return self.b[i]

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.b)

    @property
    def interior(self) -> bool:
        return all(x > 0 for x in self.b)

    def __str__(self) -> str:
        return "(" + ", ".join(str(x) for x in self.b) + ")"


CENTER = SimplexPoint.of(Fraction(1, 3), Fraction(1, 3), Fraction(1, 3))


def corner(v: int) -> SimplexPoint:
    return SimplexPoint(tuple(Fraction(int(i == v)) for i in PLAYERS))


@dataclass(frozen=True)
class SupportSegment:
    """Closed at the item end; the corner end never counts as a crossing."""

    item: int
    toward: int
    start: SimplexPoint

    @property
    def end(self) -> SimplexPoint:
        return corner(self.toward)

    def __str__(self) -> str:
        return f"[item {self.item + 1} -> {player_name(self.toward)}]"


@dataclass(frozen=True)
class DisputeRecord:
    item: int
    disputants: Tuple[int, ...]

    def __post_init__(self):
        if len(self.disputants) not in (2, 3):
            raise ValueError("a dispute involves two or three players")

    def __str__(self) -> str:
        who = ",".join(player_name(i) for i in self.disputants)
        return f"{self.item + 1}:{{{who}}}"


class _Overlap:
    def __repr__(self) -> str:
        return "OVERLAP"


#: Result of :func:`segment_intersection` for collinear overlapping segments.
OVERLAP = _Overlap()


def normalize_point(x: Sequence) -> SimplexPoint:
    x = [Fraction(c) for c in x]
    if any(c < 0 for c in x):
        raise ValueError("normalize_point needs a nonnegative triple")
    s = x[0] + x[1] + x[2]
    if s == 0:
        raise ZeroSum("cannot normalize the zero vector")
    return SimplexPoint((x[0] / s, x[1] / s, x[2] / s))


def rd_map(x: SimplexPoint) -> SimplexPoint:
    """N(1/x1, 1/x2, 1/x3); an involution on the open simplex."""
    b1, b2, b3 = x.b
    if b1 <= 0 or b2 <= 0 or b3 <= 0:
        raise BoundaryPoint(f"{x} is on the simplex boundary")
    # N(1/x) == N(x2*x3, x1*x3, x1*x2), which avoids three divisions
    return normalize_point((b2 * b3, b1 * b3, b1 * b2))


def item_point(inst: Instance, j: int) -> SimplexPoint:
    if not 0 <= j < inst.m:
        raise IndexError(f"item {j} out of range")
    return normalize_point(inst.column(j))


def support_segment(inst: Instance, j: int, toward: int) -> SupportSegment:
    return SupportSegment(j, toward, item_point(inst, j))


def on_segment(x: Sequence, p: Sequence, v: int) -> bool:
    """True iff ``x`` lies on the closed-at-``p`` segment from ``p`` to corner ``v``.

    Both arguments may be unnormalized positive triples.  The test is
    collinearity with the corner (the two other coordinates in the same
    ratio) plus betweenness (``x`` is no farther from ``v`` than ``p``).
    The corner itself is excluded.
    """
    w, u = other_players(v)
    if x[w] * p[u] != x[u] * p[w]:
        return False
    sx, sp = x[0] + x[1] + x[2], p[0] + p[1] + p[2]
    # normalized x_w <= normalized p_w, with x_w > 0 to exclude the corner
    return x[w] > 0 and x[w] * sp <= p[w] * sx


def cross_point(p: Sequence, v: int, q: Sequence, w: int):
    """Crossing of segment (p -> corner v) with (q -> corner w), v != w.

    Returns the unnormalized point (same number type as the inputs) or
    ``None``.  The two lines always meet inside the open simplex; only the
    segment bounds decide.
    """
    u = 3 - v - w
    # q sees p's segment from the correct side, and vice versa
    if q[u] * p[v] > q[v] * p[u] or p[u] * q[w] > p[w] * q[u]:
        return None
    x = [None, None, None]
    x[v] = q[v] * p[u]
    x[w] = p[w] * q[u]
    x[u] = p[u] * q[u]
    return x


def segment_intersection(s: SupportSegment, t: SupportSegment
                         ) -> Union[SimplexPoint, _Overlap, None]:
    if s.item == t.item:
        raise ValueError("segments must belong to distinct items")
    p, q = s.start.b, t.start.b
    if s.toward == t.toward:
        w, u = other_players(s.toward)
        # same corner: either the same line (overlap) or they only meet at the corner
        return OVERLAP if p[w] * q[u] == p[u] * q[w] else None
    x = cross_point(p, s.toward, q, t.toward)
    return None if x is None else normalize_point(x)


def s_independent(inst: Instance, j: int, k: int) -> bool:
    if j == k:
        raise ValueError("s-independence relates two distinct items")
    p, q = inst.column(j), inst.column(k)
    return not any(on_segment(q, p, v) or on_segment(p, q, v) for v in PLAYERS)


def weighted_argmax(gamma: Sequence[Fraction], column: Sequence[Fraction]) -> Tuple[int, ...]:
    w = [gamma[i] * column[i] for i in PLAYERS]
    top = max(w)
    return tuple(i for i in PLAYERS if w[i] == top)


def disputants_at(inst: Instance, beta: SimplexPoint, j: int) -> Union[int, DisputeRecord]:
    """Unique owner of item ``j`` under the rule at ``beta``, or its dispute."""
    gamma = rd_map(beta)
    owners = weighted_argmax(gamma.b, inst.column(j))
    if len(owners) == 1:
        return owners[0]
    return DisputeRecord(j, owners)


def geometric_disputants(inst: Instance, beta: SimplexPoint, j: int) -> Tuple[int, ...]:
    """Owners of item ``j`` read off the picture instead of the weights.

    The disputing segments of ``beta`` cut the simplex into three
    neighborhoods.  Item ``j`` is contested by all players if it sits at
    ``beta``, by the pair other than ``v`` if it lies on the disputing
    segment opposite corner ``v``, and otherwise belongs to the player whose
    neighborhood contains it.
    """
    p = item_point(inst, j)
    if p == beta:
        return PLAYERS
    for v in PLAYERS:
        # p on the disputing segment opposite v <=> beta on p's segment toward v
        if on_segment(beta.b, p.b, v):
            return other_players(v)
    # Neighborhood of vertex i: the region beyond both disputing lines through
    # beta that border it.  Comparing p_i/beta_i picks it out directly, but to
    # keep this path independent we locate p by orientation tests instead.
    for i in PLAYERS:
        a, c = other_players(i)
        if _same_side(p.b, corner(i).b, beta.b, a) and _same_side(p.b, corner(i).b, beta.b, c):
            return (i,)
    raise AssertionError("point fell through every neighborhood")


def _orient(o, a, b) -> Fraction:
    # sign of the determinant of barycentric rows; equals planar orientation
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _same_side(p, r, beta, k: int) -> bool:
    """``p`` and ``r`` strictly on the same side of the line through beta and corner k."""
    e = corner(k).b
    return _orient(beta, e, p) * _orient(beta, e, r) > 0
