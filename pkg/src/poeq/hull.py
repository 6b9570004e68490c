"""Exact planar convex hull with vertex / edge / interior classification."""

from __future__ import annotations

from typing import List, Sequence, Tuple

Point = Tuple  # (x, y) with exact coordinates

VERTEX = "vertex"
EDGE = "edge"
INTERIOR = "interior"


def cross(o: Point, a: Point, b: Point):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: Sequence[Point]) -> List[Point]:
    """Strict hull vertices in counter-clockwise order (Andrew's monotone chain).

    Collinear boundary points are dropped, so only true corners remain.
    """
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def chain(seq):
        out: List[Point] = []
        for p in seq:
            while len(out) >= 2 and cross(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    return lower[:-1] + upper[:-1]


def _on_closed_segment(p: Point, a: Point, b: Point) -> bool:
    if cross(a, b, p) != 0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def classify_points(points: Sequence[Point]) -> List[str]:
    """Label each input point (duplicates included) against the hull of all of them."""
    hull = convex_hull(points)
    corners = set(hull)
    if len(hull) <= 2:
        edges = [(hull[0], hull[-1])] if hull else []
    else:
        edges = list(zip(hull, hull[1:] + hull[:1]))
    labels = []
    for p in points:
        if p in corners:
            labels.append(VERTEX)
        elif any(_on_closed_segment(p, a, b) for a, b in edges):
            labels.append(EDGE)
        else:
            labels.append(INTERIOR)
    return labels
