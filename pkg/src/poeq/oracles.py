"""Independent checks on the geometric solver.

Nothing here touches the face graph: the maxmin value comes from an exact
simplex method, the minimum of g from a grid sweep, and the support
property from enumerating whole-item allocations.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .core import (
    DEFAULT_ENUMERATION_CAP,
    PLAYERS,
    AllocationMatrix,
    Instance,
    enumerate_integer_allocations,
    integer_value,
)
from .geometry import SimplexPoint


class Infeasible(ValueError):
    pass


class Unbounded(ValueError):
    pass


def _pivot(T: List[List[Fraction]], r: int, c: int) -> None:
    f = T[r][c]
    T[r] = [x / f for x in T[r]]
    pr = T[r]
    for k, row in enumerate(T):
        if k != r and row[c] != 0:
            g = row[c]
            T[k] = [x - g * y for x, y in zip(row, pr)]


def _run(T: List[List[Fraction]], basis: List[int], allowed: int) -> None:
    """Pivot to optimality on tableau ``T`` (last row is the reduced-cost row).

    Bland's rule: the lowest-index improving column enters and ties in the
    ratio test go to the lowest basic index.
    """
    rows = len(T) - 1
    while True:
        obj = T[-1]
        col = next((j for j in range(allowed) if obj[j] < 0), None)
        if col is None:
            return
        best = None
        for r in range(rows):
            if T[r][col] > 0:
                ratio = T[r][-1] / T[r][col]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[r] < basis[best[1]]):
                    best = (ratio, r)
        if best is None:
            raise Unbounded("objective is unbounded")
        _pivot(T, best[1], col)
        basis[best[1]] = col


def linprog_max(c: Sequence[Fraction], A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]
                ) -> Tuple[Fraction, List[Fraction], List[int]]:
    """Maximize ``c.x`` over ``A x = b, x >= 0`` exactly (two-phase tableau).

    Returns the optimal value, a basic optimal solution and its basis.
    """
    m, n = len(A), len(c)
    A = [[Fraction(x) for x in row] for row in A]
    b = [Fraction(x) for x in b]
    for r in range(m):
        if b[r] < 0:
            A[r] = [-x for x in A[r]]
            b[r] = -b[r]
    # phase 1: one artificial per row
    T = [A[r] + [Fraction(int(k == r)) for k in range(m)] + [b[r]] for r in range(m)]
    T.append([-sum(A[r][j] for r in range(m)) for j in range(n)] + [Fraction(0)] * m + [-sum(b)])
    basis = [n + r for r in range(m)]
    _run(T, basis, n + m)
    if T[-1][-1] != 0:
        raise Infeasible("constraints have no nonnegative solution")
    # drive any artificial still in the basis (at level zero) out, or drop its row
    for r in range(m - 1, -1, -1):
        if basis[r] >= n:
            col = next((j for j in range(n) if T[r][j] != 0), None)
            if col is None:
                del T[r]
                del basis[r]
            else:
                _pivot(T, r, col)
                basis[r] = col
    T = [row[:n] + [row[-1]] for row in T[:-1]]
    # phase 2
    obj = [-Fraction(x) for x in c] + [Fraction(0)]
    for r, j in enumerate(basis):
        if obj[j] != 0:
            g = obj[j]
            obj = [x - g * y for x, y in zip(obj, T[r])]
    T.append(obj)
    _run(T, basis, n)
    x = [Fraction(0)] * n
    for r, j in enumerate(basis):
        x[j] = T[r][-1]
    return T[-1][-1], x, basis


@dataclass(frozen=True)
class LpSolution:
    value: Fraction
    allocation: AllocationMatrix
    basis: Tuple[int, ...]


def maxmin_lp(inst: Instance) -> LpSolution:
    """max t  s.t.  sum_j a_ij x_ij >= t,  sum_i x_ij = 1,  x >= 0."""
    m = inst.m
    nx = 3 * m
    # variables: x_ij at i*m + j, then t, then one surplus per player
    n = nx + 1 + 3
    A, b = [], []
    for i in PLAYERS:
        row = [Fraction(0)] * n
        for j in range(m):
            row[i * m + j] = inst.values[i][j]
        row[nx] = Fraction(-1)
        row[nx + 1 + i] = Fraction(-1)
        A.append(row)
        b.append(Fraction(0))
    for j in range(m):
        row = [Fraction(0)] * n
        for i in PLAYERS:
            row[i * m + j] = Fraction(1)
        A.append(row)
        b.append(Fraction(1))
    c = [Fraction(0)] * n
    c[nx] = Fraction(1)
    value, x, basis = linprog_max(c, A, b)
    shares = tuple(tuple(x[i * m + j] for j in range(m)) for i in PLAYERS)
    return LpSolution(value, AllocationMatrix(shares), tuple(basis))


def g_values_float(A: np.ndarray, gammas: np.ndarray) -> np.ndarray:
    """g for many weight vectors at once; ``gammas`` has shape (P, 3)."""
    return (gammas[:, :, None] * A[None, :, :]).max(axis=1).sum(axis=1)


def _g_exact(inst: Instance, gamma: Sequence[Fraction]) -> Fraction:
    return sum((max(gamma[i] * inst.values[i][j] for i in PLAYERS) for j in range(inst.m)), Fraction(0))


def grid_min_g(inst: Instance, n: int, tol: float = 1e-9) -> Tuple[SimplexPoint, Fraction]:
    """Minimum of g over the grid points (i, j, k) / n with every index >= 1.

    The sweep runs in floating point; every grid point within ``tol`` of the
    float minimum is then re-evaluated exactly and the smallest wins (ties
    by lexicographic grid index).
    """
    if n < 3:
        raise ValueError("grid resolution must be at least 3")
    A = np.array([[float(a) for a in row] for row in inst.values])
    ii, jj = np.meshgrid(np.arange(1, n - 1), np.arange(1, n - 1), indexing="ij")
    keep = ii + jj <= n - 1
    ii, jj = ii[keep], jj[keep]
    kk = n - ii - jj
    gammas = np.stack([ii, jj, kk], axis=1) / n
    g = g_values_float(A, gammas)
    cand = np.nonzero(g <= g.min() + tol)[0]
    best = None
    for idx in cand:
        gamma = (Fraction(int(ii[idx]), n), Fraction(int(jj[idx]), n), Fraction(int(kk[idx]), n))
        val = _g_exact(inst, gamma)
        if best is None or val < best[1]:
            best = (gamma, val)
    return SimplexPoint(best[0]), best[1]


@functools.lru_cache(maxsize=32)
def _integer_values(inst: Instance, cap: int) -> Tuple[Tuple[Tuple[int, ...], Tuple[Fraction, ...]], ...]:
    return tuple((owners, integer_value(inst, owners))
                 for owners in enumerate_integer_allocations(inst.m, cap))


def hyperplane_support_check(inst: Instance, gamma: SimplexPoint, cap: int = DEFAULT_ENUMERATION_CAP
                             ) -> Tuple[Fraction, List[Tuple[int, ...]]]:
    """Largest ``sum_i gamma_i a_i(X)`` over whole-item allocations, and who attains it."""
    best: Optional[Fraction] = None
    winners: List[Tuple[int, ...]] = []
    for owners, v in _integer_values(inst, cap):
        s = gamma[0] * v[0] + gamma[1] * v[1] + gamma[2] * v[2]
        if best is None or s > best:
            best, winners = s, [owners]
        elif s == best:
            winners.append(owners)
    return best, winners


def instance_from_rns_points(points: Sequence[SimplexPoint], fallback: bool = False) -> Instance:
    """An instance whose item points are exactly ``points``.

    Column j is ``w_j * points[j]`` with masses chosen so that every row sums
    to one.  Among all such masses the LP picks one maximizing the smallest
    mass, and fails unless that smallest mass is positive.  With ``fallback``
    a failure returns :func:`projective_instance` instead, which keeps every
    incidence but not the exact positions.
    """
    if len(points) < 3:
        raise ValueError("need at least three points")
    m = len(points)
    # variables: tau, then slack u_j with w_j = tau + u_j
    A = [[sum(p[i] for p in points)] + [p[i] for p in points] for i in PLAYERS]
    c = [Fraction(1)] + [Fraction(0)] * m
    try:
        tau, x, _ = linprog_max(c, A, [1, 1, 1])
    except Infeasible:
        if fallback:
            return projective_instance(points)
        raise Infeasible("no nonnegative column masses reproduce these points") from None
    if tau <= 0:
        if fallback:
            return projective_instance(points)
        raise Infeasible(f"best column masses leave a zero mass (min mass {tau})")
    w = [tau + u for u in x[1:]]
    values = tuple(tuple(w[j] * points[j][i] for j in range(m)) for i in PLAYERS)
    return Instance(values)


def projective_instance(points: Sequence[SimplexPoint]) -> Instance:
    """Unit column masses followed by row normalization.

    This moves the item points by a projective map of the simplex that
    fixes the three corners, so collinearities with corners, crossings and
    coincidences all survive while only the positions change.  It is the
    fallback when :func:`instance_from_rns_points` is infeasible.
    """
    sums = [sum(p[i] for p in points) for i in PLAYERS]
    return Instance(tuple(tuple(p[i] / sums[i] for p in points) for i in PLAYERS))
