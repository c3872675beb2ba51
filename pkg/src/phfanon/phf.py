"""Perfect hash family arrays: validation and per-row symbol occupancy.

Participants, rows and symbols are all 1-based, so ``array.symbol(r, c)``
is the symbol in row ``r`` and column ``c`` exactly as printed.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Optional, Sequence, Tuple

Group = Tuple[int, ...]

DEFAULT_MAX_GROUPS = 10**7


class PhfError(ValueError):
    """Structurally malformed array or invalid argument."""


class DegenerateStructureError(PhfError):
    """Some symbol never occurs in some row, i.e. f(r, j) = 0."""


class TooLargeError(PhfError):
    """Enumeration would exceed the configured group cap."""


class KeyId(NamedTuple):
    """Key ``K(row x symbols)``; ordering is row-major then tuple."""

    row: int
    symbols: Tuple[int, ...]

    def label(self) -> str:
        return f"K({self.row}x{','.join(map(str, self.symbols))})"


class ComponentSet(NamedTuple):
    row: int
    symbol: int
    indices: Tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.indices)


class ValidationReport(NamedTuple):
    is_phf: bool
    witness: Optional[Group]


@dataclass(frozen=True)
class PhfArray:
    """An ``l x n`` array over symbols ``1..m`` used with threshold ``t``.

    Construction checks shape and symbol range only; whether the array is
    actually a PHF is answered by :func:`validate_phf`.
    """

    cells: Tuple[Tuple[int, ...], ...]
    m: int
    t: int

    def __post_init__(self):
        cells = tuple(tuple(int(x) for x in row) for row in self.cells)
        object.__setattr__(self, "cells", cells)
        if not cells or not cells[0]:
            raise PhfError("array must have at least one row and one column")
        n = len(cells[0])
        for r, row in enumerate(cells, start=1):
            if len(row) != n:
                raise PhfError(f"row {r} has {len(row)} entries, expected {n}")
        if self.t < 2:
            raise PhfError(f"threshold t={self.t} must be at least 2")
        if self.m < self.t:
            raise PhfError(f"need m >= t, got m={self.m}, t={self.t}")
        if n < self.t:
            raise PhfError(f"need n >= t, got n={n}, t={self.t}")
        for r, row in enumerate(cells, start=1):
            for c, x in enumerate(row, start=1):
                if not 1 <= x <= self.m:
                    raise PhfError(f"cell ({r}, {c}) = {x} outside 1..{self.m}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], t: int, m: Optional[int] = None) -> "PhfArray":
        """Build from nested rows; ``m`` defaults to the largest symbol present."""
        if m is None:
            m = max(max(row) for row in rows)
        return cls(tuple(tuple(row) for row in rows), m, t)

    @property
    def l(self) -> int:  # noqa: E743
        return len(self.cells)

    @property
    def n(self) -> int:
        return len(self.cells[0])

    def symbol(self, r: int, c: int) -> int:
        return self.cells[r - 1][c - 1]

    def column(self, c: int) -> Tuple[int, ...]:
        return tuple(row[c - 1] for row in self.cells)

    def groups(self) -> Iterator[Group]:
        """All t-subsets of participants in lexicographic order."""
        return itertools.combinations(range(1, self.n + 1), self.t)

    def group_count(self) -> int:
        return math.comb(self.n, self.t)

    def check_group(self, group: Sequence[int]) -> Group:
        g = tuple(group)
        if len(g) != self.t:
            raise PhfError(f"group {g} must have exactly t={self.t} members")
        if any(a >= b for a, b in zip(g, g[1:])):
            raise PhfError(f"group {g} must be strictly increasing")
        if g[0] < 1 or g[-1] > self.n:
            raise PhfError(f"group {g} has members outside 1..{self.n}")
        return g

    def check_key(self, key: KeyId) -> KeyId:
        row, symbols = key
        if not 1 <= row <= self.l:
            raise PhfError(f"key row {row} outside 1..{self.l}")
        if len(symbols) != self.t or any(a >= b for a, b in zip(symbols, symbols[1:])):
            raise PhfError(f"key symbols {symbols} must be {self.t} increasing values")
        if symbols[0] < 1 or symbols[-1] > self.m:
            raise PhfError(f"key symbols {symbols} outside 1..{self.m}")
        return KeyId(row, tuple(symbols))


def check_group_cap(count: int, max_groups: Optional[int]) -> None:
    if max_groups is not None and count > max_groups:
        raise TooLargeError(f"{count} groups exceed the cap of {max_groups}")


def _separates(row: Sequence[int], group: Group) -> bool:
    seen = {row[c - 1] for c in group}
    return len(seen) == len(group)


def validate_phf(array: PhfArray, t: Optional[int] = None, max_groups: Optional[int] = DEFAULT_MAX_GROUPS) -> ValidationReport:
    """Check that every t-column subarray has a row with t distinct symbols.

    On failure the witness is the lexicographically smallest unseparated group.
    """
    t = array.t if t is None else t
    if not 2 <= t <= array.m:
        raise PhfError(f"need 2 <= t <= m, got t={t}, m={array.m}")
    check_group_cap(math.comb(array.n, t), max_groups)
    for group in itertools.combinations(range(1, array.n + 1), t):
        if not any(_separates(row, group) for row in array.cells):
            return ValidationReport(False, group)
    return ValidationReport(True, None)


def occupancy(array: PhfArray) -> Tuple[Tuple[int, ...], ...]:
    """Counts ``f(r, j)``; entry ``[r-1][j-1]``."""
    return tuple(tuple(row.count(j) for j in range(1, array.m + 1)) for row in array.cells)


def is_balanced(array: PhfArray) -> bool:
    if array.n % array.m:
        return False
    share = array.n // array.m
    return all(f == share for row in occupancy(array) for f in row)


def component_set(array: PhfArray, r: int, j: int) -> ComponentSet:
    """Participants holding key component ``(r, j)``."""
    if not 1 <= r <= array.l or not 1 <= j <= array.m:
        raise PhfError(f"component ({r}, {j}) outside the array")
    indices = tuple(c for c, x in enumerate(array.cells[r - 1], start=1) if x == j)
    if not indices:
        raise DegenerateStructureError(f"symbol {j} never occurs in row {r}")
    return ComponentSet(r, j, indices)


def require_nondegenerate(array: PhfArray) -> None:
    for r, row in enumerate(occupancy(array), start=1):
        for j, f in enumerate(row, start=1):
            if f == 0:
                raise DegenerateStructureError(f"symbol {j} never occurs in row {r}")


def separating_rows(array: PhfArray, group: Sequence[int]) -> list[KeyId]:
    """Keys recoverable by ``group``: one per row of its subarray with distinct symbols."""
    g = array.check_group(group)
    keys = []
    for r, row in enumerate(array.cells, start=1):
        if _separates(row, g):
            keys.append(KeyId(r, tuple(sorted(row[c - 1] for c in g))))
    return keys


def rank_group(group: Sequence[int]) -> int:
    """Colex rank of a 1-based group among all t-subsets."""
    return sum(math.comb(c - 1, i + 1) for i, c in enumerate(group))


def unrank_group(rank: int, n: int, t: int) -> Group:
    """Inverse of :func:`rank_group` via the combinatorial number system."""
    if not 0 <= rank < math.comb(n, t):
        raise PhfError(f"rank {rank} outside 0..C({n},{t})-1")
    out = [0] * t
    c = n
    for k in range(t, 0, -1):
        c -= 1
        while math.comb(c, k) > rank:
            c -= 1
        rank -= math.comb(c, k)
        out[k - 1] = c + 1
    return tuple(out)
