"""Seeded random instances, optionally in exact general position."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .core import PLAYERS, Instance
from .geometry import cross_point, s_independent
from .graph import int_column


class RetriesExhausted(RuntimeError):
    pass


def random_instance(m: int, rng: random.Random, grid: int = 1000) -> Instance:
    """Numerators uniform on 1..grid, then each row divided by its sum."""
    rows = []
    for _ in PLAYERS:
        nums = [rng.randint(1, grid) for _ in range(m)]
        s = sum(nums)
        rows.append(tuple(Fraction(a, s) for a in nums))
    return Instance(tuple(rows))


def crossings(p, q) -> list:
    """All crossings between the segments of two item columns (reduced keys)."""
    out = []
    for v, w in itertools.permutations(PLAYERS, 2):
        x = cross_point(p, v, q, w)
        if x is not None:
            out.append(tuple(x))
    return out


def in_general_position(inst: Instance) -> bool:
    """Distinct items, pairwise s-independent, exactly one crossing per pair, no concurrences."""
    cols = [int_column(inst.column(j)) for j in range(inst.m)]
    if len(set(cols)) != len(cols):
        return False
    seen = set(cols)
    for j, k in itertools.combinations(range(inst.m), 2):
        if not s_independent(inst, j, k):
            return False
        xs = crossings(cols[j], cols[k])
        if len(xs) != 1:
            return False
        key = int_column([Fraction(c) for c in xs[0]])
        if key in seen:
            return False
        seen.add(key)
    return True


def generate_instance(m: int, seed: int, general_position: bool = False,
                      retries: int = 100, grid: int = 1000) -> Instance:
    if m < 1:
        raise ValueError("m must be at least 1")
    rng = random.Random(seed)
    for _ in range(max(retries, 1)):
        inst = random_instance(m, rng, grid)
        if not general_position or in_general_position(inst):
            return inst
    raise RetriesExhausted(f"no general-position instance with m={m} after {retries} draws")
