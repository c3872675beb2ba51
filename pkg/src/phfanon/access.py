"""Threshold access structure derived from a perfect hash family.

Every row ``r`` and symbol ``j`` gives a key component ``(r, j)``; a key
``K(r x J)`` is the set of components ``(r, j)`` for ``j`` in a t-tuple
``J``; participant ``c`` receives the components named by column ``c``.
"""

from __future__ import annotations

import itertools
import math
import threading
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .phf import (
    DEFAULT_MAX_GROUPS,
    Group,
    KeyId,
    PhfArray,
    check_group_cap,
    component_set,
    occupancy,
    require_nondegenerate,
    separating_rows,
)


class KeyComponent(NamedTuple):
    row: int
    symbol: int


class RecoverySet(NamedTuple):
    key: KeyId
    groups: Tuple[Group, ...]

    @property
    def q(self) -> int:
        return len(self.groups)


Assignment = Dict[int, Tuple[KeyComponent, ...]]


def key_components(array: PhfArray) -> List[KeyComponent]:
    return [KeyComponent(r, j) for r in range(1, array.l + 1) for j in range(1, array.m + 1)]


def all_keys(array: PhfArray) -> List[KeyId]:
    """The ``l * C(m, t)`` keys in row-major, then lexicographic tuple order."""
    return [
        KeyId(r, J)
        for r in range(1, array.l + 1)
        for J in itertools.combinations(range(1, array.m + 1), array.t)
    ]


def derive_assignment(array: PhfArray) -> Assignment:
    return {
        c: tuple(KeyComponent(r, x) for r, x in enumerate(array.column(c), start=1))
        for c in range(1, array.n + 1)
    }


def recoverable_keys(array: PhfArray, group: Sequence[int]) -> List[KeyId]:
    return separating_rows(array, group)


def recovery_set(array: PhfArray, key: KeyId) -> RecoverySet:
    """All groups taking exactly one holder of each component of ``key``.

    Component sets within a row are disjoint, so the product never repeats
    a participant and needs no deduplication.
    """
    key = array.check_key(key)
    row = array.cells[key.row - 1]
    holders = [[c for c, x in enumerate(row, start=1) if x == j] for j in key.symbols]
    groups = sorted(tuple(sorted(choice)) for choice in itertools.product(*holders))
    return RecoverySet(key, tuple(groups))


def q_product(array: PhfArray, key: KeyId) -> int:
    key = array.check_key(key)
    return math.prod(component_set(array, key.row, j).size for j in key.symbols)


def recovery_set_brute_force(array: PhfArray, key: KeyId) -> RecoverySet:
    """Reference filter over all of Gamma; used only to cross-check :func:`recovery_set`."""
    key = array.check_key(key)
    row = array.cells[key.row - 1]
    groups = tuple(g for g in array.groups() if sorted(row[c - 1] for c in g) == list(key.symbols))
    return RecoverySet(key, groups)


def threshold_soundness(array: PhfArray) -> bool:
    """No ``t - 1`` participants jointly hold all components of any key.

    A coalition holds key ``K(r x J)`` iff its row-``r`` symbols include all
    of ``J``; with fewer than ``t`` members that is impossible, but the check
    is done explicitly over every (t-1)-subset rather than assumed.
    """
    for coalition in itertools.combinations(range(1, array.n + 1), array.t - 1):
        for row in array.cells:
            held = {row[c - 1] for c in coalition}
            if len(held) >= array.t:
                return False
    return True


class AccessStructure:
    """Derived incidence between groups and keys for one PHF, cached per key.

    Recovery sets are built lazily on first request; the cache is guarded so
    concurrent readers see each set initialised exactly once.
    """

    def __init__(self, array: PhfArray, max_groups: Optional[int] = DEFAULT_MAX_GROUPS):
        require_nondegenerate(array)
        check_group_cap(array.group_count(), max_groups)
        self.array = array
        self.keys: List[KeyId] = all_keys(array)
        self.f: Tuple[Tuple[int, ...], ...] = occupancy(array)
        self._recovery: Dict[KeyId, RecoverySet] = {}
        self._lock = threading.Lock()
        self._s: Optional[Dict[Group, int]] = None

    @property
    def n(self) -> int:
        return self.array.n

    @property
    def t(self) -> int:
        return self.array.t

    def recovery_set(self, key: KeyId) -> RecoverySet:
        cached = self._recovery.get(key)
        if cached is None:
            with self._lock:
                cached = self._recovery.get(key)
                if cached is None:
                    cached = recovery_set(self.array, key)
                    self._recovery[key] = cached
        return cached

    @property
    def s(self) -> Dict[Group, int]:
        """Number of keys each group can recover, in lexicographic group order."""
        if self._s is None:
            counts = {g: 0 for g in self.array.groups()}
            for key in self.keys:
                for g in self.recovery_set(key).groups:
                    counts[g] += 1
            self._s = counts
        return self._s

    @property
    def s0(self) -> int:
        return sum(self.s.values())

    def f_of(self, r: int, j: int) -> int:
        return self.f[r - 1][j - 1]

    def holders(self, r: int, j: int) -> Tuple[int, ...]:
        return component_set(self.array, r, j).indices
