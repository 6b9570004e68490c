"""Instances, allocations and value vectors for three-player division.

Every quantity is a :class:`fractions.Fraction`; nothing in this module
touches floating point.  Players are indexed 0, 1, 2 internally and shown
as I, II, III.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence, Tuple

Scalar = Fraction
ValueVector = Tuple[Fraction, Fraction, Fraction]
IntegerAllocation = Tuple[int, ...]

PLAYERS = (0, 1, 2)
PLAYER_NAMES = ("I", "II", "III")
DEFAULT_ENUMERATION_CAP = 12


class InstanceError(ValueError):
    """Base class for malformed instance input."""


class NonPositiveEntry(InstanceError):
    pass


class RowSumMismatch(InstanceError):
    pass


class EmptyInstance(InstanceError):
    pass


class DimensionMismatch(ValueError):
    pass


class CapExceeded(ValueError):
    pass


def to_fraction(x) -> Fraction:
    """Exact conversion: ``"0.1"`` and ``0.1`` both become 1/10.

    Floats go through ``repr`` so that the literal the user typed is kept,
    not its binary approximation.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InstanceError(f"not a number: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InstanceError(f"cannot parse {x!r} as a rational") from exc
    raise InstanceError(f"not a number: {x!r}")


def player_name(i: int) -> str:
    return PLAYER_NAMES[i]


@dataclass(frozen=True)
class Instance:
    """A 3 x m evaluation matrix with positive entries and unit row sums."""

    values: Tuple[Tuple[Fraction, ...], ...]
    player_labels: Tuple[str, ...] = PLAYER_NAMES
    item_labels: Tuple[str, ...] = ()

    def __post_init__(self):
        if len(self.values) != 3:
            raise DimensionMismatch(f"expected 3 rows, got {len(self.values)}")
        m = len(self.values[0])
        if m == 0:
            raise EmptyInstance("instance has no items")
        for i, row in enumerate(self.values):
            if len(row) != m:
                raise DimensionMismatch(f"row {i} has {len(row)} entries, expected {m}")
            for j, a in enumerate(row):
                if a <= 0:
                    raise NonPositiveEntry(
                        f"entry ({player_name(i)}, item {j + 1}) = {a} is not positive"
                    )
            if sum(row) != 1:
                raise RowSumMismatch(f"row {player_name(i)} sums to {sum(row)}, not 1")
        if len(self.player_labels) != 3:
            raise DimensionMismatch("need exactly three player labels")
        if not self.item_labels:
            object.__setattr__(self, "item_labels", tuple(str(j + 1) for j in range(m)))
        elif len(self.item_labels) != m:
            raise DimensionMismatch(f"{len(self.item_labels)} item labels for {m} items")

    @property
    def m(self) -> int:
        return len(self.values[0])

    def column(self, j: int) -> Tuple[Fraction, Fraction, Fraction]:
        return (self.values[0][j], self.values[1][j], self.values[2][j])

    def a(self, i: int, j: int) -> Fraction:
        return self.values[i][j]


def parse_instance(raw: Sequence[Sequence], normalize: bool = False,
                   player_labels: Sequence[str] | None = None,
                   item_labels: Sequence[str] | None = None) -> Instance:
    """Build an :class:`Instance` from numbers or fraction strings.

    With ``normalize`` each row is divided by its sum; otherwise rows must
    already sum to exactly 1.  Positivity is checked before rescaling so the
    error names the offending raw entry.
    """
    if raw is None or len(raw) == 0:
        raise EmptyInstance("no rows given")
    if len(raw) != 3:
        raise DimensionMismatch(f"expected 3 rows, got {len(raw)}")
    rows = [[to_fraction(x) for x in row] for row in raw]
    if any(len(r) == 0 for r in rows):
        raise EmptyInstance("instance has no items")
    for i, row in enumerate(rows):
        for j, a in enumerate(row):
            if a <= 0:
                raise NonPositiveEntry(
                    f"entry ({player_name(i)}, item {j + 1}) = {a} is not positive"
                )
    if normalize:
        rows = [[a / sum(row) for a in row] for row in rows]
    return Instance(
        values=tuple(tuple(r) for r in rows),
        player_labels=tuple(player_labels) if player_labels else PLAYER_NAMES,
        item_labels=tuple(item_labels) if item_labels else (),
    )


@dataclass(frozen=True)
class AllocationMatrix:
    """Fractional shares x[i][j] of item j held by player i."""

    shares: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.shares) != 3:
            raise DimensionMismatch("allocation needs 3 rows")
        m = len(self.shares[0])
        for row in self.shares:
            if len(row) != m:
                raise DimensionMismatch("ragged allocation matrix")
            for x in row:
                if x < 0 or x > 1:
                    raise ValueError(f"share {x} outside [0, 1]")
        for j in range(m):
            if self.shares[0][j] + self.shares[1][j] + self.shares[2][j] != 1:
                raise ValueError(f"shares of item {j + 1} do not sum to 1")

    @property
    def m(self) -> int:
        return len(self.shares[0])

    @classmethod
    def from_owners(cls, owners: Sequence[int]) -> "AllocationMatrix":
        rows = [[Fraction(int(o == i)) for o in owners] for i in PLAYERS]
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def uniform(cls, m: int) -> "AllocationMatrix":
        third = Fraction(1, 3)
        return cls(tuple(tuple(third for _ in range(m)) for _ in PLAYERS))

    def column(self, j: int) -> Tuple[Fraction, Fraction, Fraction]:
        return (self.shares[0][j], self.shares[1][j], self.shares[2][j])

    def split_items(self) -> list[int]:
        """Indices of items held by more than one player."""
        return [j for j in range(self.m) if sum(1 for x in self.column(j) if x > 0) > 1]


def allocation_value(inst: Instance, alloc: AllocationMatrix) -> ValueVector:
    if alloc.m != inst.m:
        raise DimensionMismatch(f"allocation has {alloc.m} items, instance {inst.m}")
    return tuple(
        sum((a * x for a, x in zip(inst.values[i], alloc.shares[i])), Fraction(0))
        for i in PLAYERS
    )


def integer_value(inst: Instance, owners: Sequence[int]) -> ValueVector:
    v = [Fraction(0)] * 3
    for j, o in enumerate(owners):
        v[o] += inst.values[o][j]
    return tuple(v)


def enumerate_integer_allocations(m: int, cap: int = DEFAULT_ENUMERATION_CAP
                                  ) -> Iterator[IntegerAllocation]:
    """All 3**m whole-item assignments in lexicographic order."""
    if m > cap:
        raise CapExceeded(f"3^{m} integer allocations exceed the cap m <= {cap}")
    return itertools.product(PLAYERS, repeat=m)


def _fixture(rows) -> Instance:
    return parse_instance(rows)


E1 = _fixture([["0.8", "0.1", "0.1"], ["0.1", "0.8", "0.1"], ["0.1", "0.1", "0.8"]])
E5 = _fixture([["0.7", "0.3"], ["0.4", "0.6"], ["0.5", "0.5"]])
E3F = _fixture([["1/5", "2/5", "2/5"], ["2/5", "1/5", "2/5"], ["2/5", "2/5", "1/5"]])
FIXTURES = {"E1": E1, "E5": E5, "E3f": E3F}
