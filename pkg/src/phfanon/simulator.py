"""Seeded Monte Carlo run of the group/row activation algorithm.

Each trial activates a uniformly random group, then draws a uniformly random
row of the group's subarray. A separating row fixes the key. Otherwise the
trial restarts either from the group draw (``STEP1``, which realises the
proportional scheme) or from the row draw with the same group (``STEP2``,
the ZS scheme).

Randomness
----------
Every trial owns an independent SplitMix64 stream. The stream for trial
``i`` under seed ``s`` starts at state ``mix64(mix64(s) + i * GAMMA)`` and
its ``k``-th output (``k = 1, 2, ...``) is ``mix64(state + k * GAMMA)``.
A uniform draw below ``N`` takes ``u mod N`` from the next output ``u``,
rejecting ``u >= floor(2**64 / N) * N``. Results therefore depend only on
``(seed, trial index)``, never on how trials are batched.
"""

from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple

import numpy as np

from .anonymity import AnonymityReport, Scheme, as_structure
from .phf import Group, KeyId, PhfArray, PhfError, unrank_group

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB


class RestartVariant(str, enum.Enum):
    STEP1 = "step1"
    STEP2 = "step2"

    @property
    def scheme(self) -> Scheme:
        return Scheme.PROPORTIONAL if self is RestartVariant.STEP1 else Scheme.ZS


@dataclass(frozen=True)
class SimConfig:
    variant: RestartVariant
    trials: int
    seed: int
    max_cycles_per_trial: int = 10**6
    chunk_size: int = 1 << 16

    def __post_init__(self):
        object.__setattr__(self, "variant", RestartVariant(self.variant))
        if self.trials < 1:
            raise PhfError("trials must be at least 1")
        if self.max_cycles_per_trial < 1:
            raise PhfError("max_cycles_per_trial must be at least 1")
        if not 0 <= self.seed <= MASK64:
            raise PhfError("seed must be an unsigned 64-bit integer")
        if self.chunk_size < 1:
            raise PhfError("chunk_size must be positive")


@dataclass
class SimResult:
    variant: RestartVariant
    group_use_counts: Dict[Group, int]
    key_use_counts: Dict[KeyId, int]
    pair_counts: Dict[Tuple[Group, KeyId], int]
    trials_completed: int
    cycles_total: int
    trials_aborted: int = 0


@dataclass
class DeviationSummary:
    group_max: float
    key_max: float
    conditional_max: float
    tolerance: float
    cells_exceeding: int
    cells_checked: int
    worst: Dict[str, str] = field(default_factory=dict)

    @property
    def max_deviation(self) -> float:
        return max(self.group_max, self.key_max, self.conditional_max)

    @property
    def within_tolerance(self) -> bool:
        return self.cells_exceeding == 0


# -- scalar reference generator -------------------------------------------------


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def trial_state(seed: int, trial: int) -> int:
    return mix64((mix64(seed) + trial * GAMMA) & MASK64)


class TrialStream:
    """Pure-Python stream for one trial; the vectorised engine must agree with it."""

    def __init__(self, seed: int, trial: int):
        self.state = trial_state(seed, trial)
        self.counter = 0

    def next64(self) -> int:
        self.counter += 1
        return mix64(self.state + self.counter * GAMMA)

    def below(self, bound: int) -> int:
        limit = ((1 << 64) // bound) * bound
        while True:
            u = self.next64()
            if u < limit:
                return u % bound


def run_trial(array: PhfArray, variant: RestartVariant, seed: int, trial: int,
              max_cycles: int = 10**6) -> Tuple[Optional[Group], Optional[KeyId], int]:
    """One trial, step by step; returns ``(group, key, cycles)`` or ``(None, None, cycles)`` if capped."""
    variant = RestartVariant(variant)
    stream = TrialStream(seed, trial)
    total = math.comb(array.n, array.t)
    group = None
    for cycle in range(1, max_cycles + 1):
        if group is None or variant is RestartVariant.STEP1:
            group = unrank_group(stream.below(total), array.n, array.t)
        r = stream.below(array.l) + 1
        symbols = [array.symbol(r, c) for c in group]
        if len(set(symbols)) == array.t:
            return group, KeyId(r, tuple(sorted(symbols))), cycle
    return None, None, max_cycles


# -- vectorised engine ----------------------------------------------------------


def _mix64_np(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
    return z ^ (z >> np.uint64(31))


class _Draws:
    """Per-lane counters over the SplitMix64 streams of a batch of trials."""

    def __init__(self, seed: int, trials: np.ndarray):
        base = np.uint64(mix64(seed))
        self.state = _mix64_np(base + trials.astype(np.uint64) * np.uint64(GAMMA))
        self.counter = np.zeros(len(trials), dtype=np.uint64)

    def below(self, lanes: np.ndarray, bound: int) -> np.ndarray:
        limit = ((1 << 64) // bound) * bound
        out = np.empty(len(lanes), dtype=np.uint64)
        todo = np.arange(len(lanes))
        while len(todo):
            idx = lanes[todo]
            self.counter[idx] += np.uint64(1)
            u = _mix64_np(self.state[idx] + self.counter[idx] * np.uint64(GAMMA))
            if limit > MASK64:
                ok = np.ones(len(u), dtype=bool)
            else:
                ok = u < np.uint64(limit)
            out[todo[ok]] = u[ok] % np.uint64(bound)
            todo = todo[~ok]
        return out


def _comb_tables(n: int, t: int) -> list:
    return [np.array([math.comb(c, k) for c in range(n)], dtype=np.uint64) for k in range(t + 1)]


def _unrank_np(ranks: np.ndarray, n: int, t: int, tables: list) -> np.ndarray:
    """Vectorised colex unranking; returns 0-based columns, shape ``(len(ranks), t)``."""
    out = np.empty((len(ranks), t), dtype=np.int64)
    rest = ranks.copy()
    for k in range(t, 0, -1):
        c = np.searchsorted(tables[k], rest, side="right") - 1
        out[:, k - 1] = c
        rest = rest - tables[k][c]
    return out


def _run_chunk(cells: np.ndarray, n: int, t: int, variant: RestartVariant, seed: int,
               trials: np.ndarray, cap: int, tables: list):
    total = math.comb(n, t)
    l = cells.shape[0]
    draws = _Draws(seed, trials)
    size = len(trials)
    rank = np.zeros(size, dtype=np.uint64)
    row = np.zeros(size, dtype=np.int64)
    cycles = np.zeros(size, dtype=np.int64)
    done = np.zeros(size, dtype=bool)
    live = np.arange(size)
    need_group = np.ones(size, dtype=bool)
    while len(live):
        fresh = live[need_group[live]]
        if len(fresh):
            rank[fresh] = draws.below(fresh, total)
            need_group[fresh] = False
        row[live] = draws.below(live, l).astype(np.int64)
        cycles[live] += 1
        cols = _unrank_np(rank[live], n, t, tables)
        symbols = np.sort(cells[row[live][:, None], cols], axis=1)
        sep = np.all(np.diff(symbols, axis=1) != 0, axis=1)
        done[live[sep]] = True
        failed = live[~sep]
        if variant is RestartVariant.STEP1:
            need_group[failed] = True
        live = failed[cycles[failed] < cap]
    return rank, row, cycles, done


def run(array: PhfArray, config: SimConfig) -> SimResult:
    """Simulate ``config.trials`` independent trials; deterministic in ``config.seed``."""
    as_structure(array)
    n, t = array.n, array.t
    if math.comb(n, t) >= 1 << 63:
        raise PhfError("too many groups for 64-bit rank sampling")
    cells = np.asarray(array.cells, dtype=np.int64)
    tables = _comb_tables(n, t)
    pair_codes: Counter = Counter()
    cycles_total = 0
    aborted = 0
    with np.errstate(over="ignore"):
        for start in range(0, config.trials, config.chunk_size):
            idx = np.arange(start, min(start + config.chunk_size, config.trials), dtype=np.uint64)
            rank, row, cycles, done = _run_chunk(
                cells, n, t, config.variant, config.seed, idx, config.max_cycles_per_trial, tables
            )
            cycles_total += int(cycles.sum())
            aborted += int((~done).sum())
            codes = rank[done].astype(np.int64) * array.l + row[done]
            values, counts = np.unique(codes, return_counts=True)
            pair_codes.update(dict(zip(values.tolist(), counts.tolist())))

    groups: Counter = Counter()
    keys: Counter = Counter()
    pairs: Dict[Tuple[Group, KeyId], int] = {}
    for code in sorted(pair_codes):
        g_rank, r = divmod(code, array.l)
        group = unrank_group(g_rank, n, t)
        key = KeyId(r + 1, tuple(sorted(array.symbol(r + 1, c) for c in group)))
        count = pair_codes[code]
        pairs[(group, key)] = pairs.get((group, key), 0) + count
        groups[group] += count
        keys[key] += count
    return SimResult(
        variant=config.variant,
        group_use_counts=dict(sorted(groups.items())),
        key_use_counts=dict(sorted(keys.items())),
        pair_counts=dict(sorted(pairs.items())),
        trials_completed=config.trials - aborted,
        cycles_total=cycles_total,
        trials_aborted=aborted,
    )


def default_tolerance(trials: int) -> float:
    """Ten binomial standard errors at the worst case ``p = 1/2``."""
    return 10 * 0.5 / math.sqrt(trials)


def compare_to_exact(result: SimResult, report: AnonymityReport, array: PhfArray,
                     tolerance: Optional[float] = None) -> DeviationSummary:
    """Largest absolute gaps between empirical and exact group, key and key-given-group frequencies."""
    if result.variant.scheme is not report.scheme:
        raise PhfError(f"variant {result.variant.value} does not simulate scheme {report.scheme.value}")
    if result.trials_completed < 1:
        raise PhfError("no completed trials to compare")
    st = as_structure(array)
    tol = default_tolerance(result.trials_completed) if tolerance is None else tolerance
    total = result.trials_completed
    checked = exceeding = 0
    worst: Dict[str, str] = {}

    def track(category: str, label: str, observed: float, exact: Fraction, current: float) -> float:
        nonlocal checked, exceeding
        gap = abs(observed - float(exact))
        checked += 1
        if gap > tol:
            exceeding += 1
        if gap > current or category not in worst:
            worst[category] = label
        return max(current, gap)

    group_max = key_max = cond_max = 0.0
    prior = {g: (Fraction(s, st.s0) if report.scheme is Scheme.PROPORTIONAL
                 else Fraction(1, math.comb(st.n, st.t))) for g, s in st.s.items()}
    for g, p in prior.items():
        group_max = track("group", f"A{g}", result.group_use_counts.get(g, 0) / total, p, group_max)
    for key, p in report.key_marginals.items():
        key_max = track("key", key.label(), result.key_use_counts.get(key, 0) / total, p, key_max)
    for key in st.keys:
        for g in st.recovery_set(key).groups:
            used = result.group_use_counts.get(g, 0)
            if not used:
                continue
            observed = result.pair_counts.get((g, key), 0) / used
            cond_max = track("conditional", f"{key.label()}|A{g}", observed, Fraction(1, st.s[g]), cond_max)
    return DeviationSummary(group_max, key_max, cond_max, tol, exceeding, checked, worst)
