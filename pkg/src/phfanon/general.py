"""Threshold schemes beyond PHFs: arbitrary component holdings and key sets.

A setup has components ``1..p``, participants ``1..n`` each holding a set of
components, and keys ``K_1..K_v`` that are component sets covering ``1..p``.
A coalition recovers ``K_i`` when the union of its holdings contains ``K_i``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .access import RecoverySet, all_keys
from .anonymity import AnonymityReport, ConsistencyError, Scheme, measures
from .phf import DEFAULT_MAX_GROUPS, Group, KeyId, PhfArray, PhfError, check_group_cap

GeneralReport = AnonymityReport


class ThresholdViolationError(PhfError):
    """Some t-group recovers no key, or a smaller coalition recovers one."""


def _mask(components: Iterable[int]) -> int:
    out = 0
    for x in components:
        out |= 1 << x
    return out


@dataclass(frozen=True)
class GeneralSetup:
    p: int
    n: int
    t: int
    holdings: Tuple[FrozenSet[int], ...]
    keys: Tuple[FrozenSet[int], ...]

    def __post_init__(self):
        holdings = tuple(frozenset(h) for h in self.holdings)
        keys = tuple(frozenset(k) for k in self.keys)
        object.__setattr__(self, "holdings", holdings)
        object.__setattr__(self, "keys", keys)
        if self.p < 1 or self.n < 1:
            raise PhfError("need p >= 1 and n >= 1")
        if not 1 <= self.t <= self.n:
            raise PhfError(f"threshold t={self.t} outside 1..{self.n}")
        if len(holdings) != self.n:
            raise PhfError(f"{len(holdings)} holdings given for n={self.n} participants")
        if not keys:
            raise PhfError("need at least one key")
        universe = set(range(1, self.p + 1))
        for c, h in enumerate(holdings, start=1):
            if not h <= universe:
                raise PhfError(f"participant {c} holds components outside 1..{self.p}")
        for i, k in enumerate(keys, start=1):
            if not k:
                raise PhfError(f"key {i} is empty")
            if not k <= universe:
                raise PhfError(f"key {i} has components outside 1..{self.p}")
        if set().union(*keys) != universe:
            raise PhfError(f"keys do not cover components 1..{self.p}")
        held = set().union(*holdings)
        if held != universe:
            missing = min(universe - held)
            raise PhfError(f"component {missing} is held by nobody")

    @property
    def v(self) -> int:
        return len(self.keys)

    def groups(self) -> Iterable[Group]:
        return itertools.combinations(range(1, self.n + 1), self.t)


def recovers(setup: GeneralSetup, group: Sequence[int], key_index: int) -> bool:
    if not 1 <= key_index <= setup.v:
        raise PhfError(f"key index {key_index} outside 1..{setup.v}")
    pooled = set().union(*(setup.holdings[c - 1] for c in group))
    return setup.keys[key_index - 1] <= pooled


def validate_threshold(setup: GeneralSetup, max_groups: Optional[int] = DEFAULT_MAX_GROUPS) -> bool:
    """Every t-group recovers some key and no (t-1)-coalition recovers any.

    Recovery is monotone under adding members, so coalitions of exactly
    ``t - 1`` cover all smaller ones.
    """
    check_group_cap(math.comb(setup.n, setup.t), max_groups)
    held = [_mask(h) for h in setup.holdings]
    keys = [_mask(k) for k in setup.keys]

    def any_key(coalition) -> bool:
        pooled = 0
        for c in coalition:
            pooled |= held[c - 1]
        return any(k & pooled == k for k in keys)

    people = range(1, setup.n + 1)
    if not all(any_key(g) for g in itertools.combinations(people, setup.t)):
        return False
    return not any(any_key(g) for g in itertools.combinations(people, setup.t - 1))


class GeneralStructure:
    """Group/key incidence for a general setup; keys are the indices ``1..v``."""

    def __init__(self, setup: GeneralSetup, max_groups: Optional[int] = DEFAULT_MAX_GROUPS):
        check_group_cap(math.comb(setup.n, setup.t), max_groups)
        self.setup = setup
        self.keys: List[int] = list(range(1, setup.v + 1))
        held = [_mask(h) for h in setup.holdings]
        key_masks = [_mask(k) for k in setup.keys]
        members: Dict[int, List[Group]] = {i: [] for i in self.keys}
        self.s: Dict[Group, int] = {}
        for g in setup.groups():
            pooled = 0
            for c in g:
                pooled |= held[c - 1]
            count = 0
            for i, k in enumerate(key_masks, start=1):
                if k & pooled == k:
                    members[i].append(g)
                    count += 1
            self.s[g] = count
        self._recovery = {i: RecoverySet(i, tuple(gs)) for i, gs in members.items()}

    @property
    def n(self) -> int:
        return self.setup.n

    @property
    def t(self) -> int:
        return self.setup.t

    @property
    def s0(self) -> int:
        return sum(self.s.values())

    def recovery_set(self, key_index: int) -> RecoverySet:
        return self._recovery[key_index]


def _min_positive_q(st: GeneralStructure) -> int:
    # a key no t-group can recover is never used and has no posterior
    return min(q for q in (st.recovery_set(i).q for i in st.keys) if q)


def closed_form_mu_proportional(setup: GeneralSetup) -> Fraction:
    return 1 - Fraction(1, _min_positive_q(GeneralStructure(setup)))


def general_measures(setup: GeneralSetup, scheme: Scheme, max_groups: Optional[int] = DEFAULT_MAX_GROUPS) -> GeneralReport:
    st = GeneralStructure(setup, max_groups=max_groups)
    dead = [g for g, s in st.s.items() if s == 0]
    if dead:
        raise ThresholdViolationError(f"group {dead[0]} recovers no key")
    report = measures(st, scheme)
    if Scheme(scheme) is Scheme.PROPORTIONAL:
        if report.mu != 1 - Fraction(1, _min_positive_q(st)):
            raise ConsistencyError("proportional mu disagrees with 1 - 1/min q")
    return report


def phf_to_general(array: PhfArray) -> Tuple[GeneralSetup, List[KeyId]]:
    """Relabel component ``(r, j)`` as ``(r - 1) * m + j``; key ``i`` is the i-th key in order."""
    label = lambda r, j: (r - 1) * array.m + j  # noqa: E731
    holdings = tuple(
        frozenset(label(r, x) for r, x in enumerate(array.column(c), start=1))
        for c in range(1, array.n + 1)
    )
    order = all_keys(array)
    keys = tuple(frozenset(label(k.row, j) for j in k.symbols) for k in order)
    return GeneralSetup(array.l * array.m, array.n, array.t, holdings, keys), order
