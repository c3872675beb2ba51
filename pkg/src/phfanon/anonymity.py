"""Exact posteriors and worst-case anonymity measures for key-selection schemes.

Two schemes are supported. Under ``ZS`` every group is equally likely to
act; under ``PROPORTIONAL`` a group acts with probability proportional to
the number of keys it can recover. In both, an acting group picks one of its
keys uniformly. Posteriors follow from Bayes' rule and are kept as
:class:`fractions.Fraction` throughout.

Functions accept either a :class:`PhfArray` or an already-derived structure
(:class:`AccessStructure` or a general structure from :mod:`phfanon.general`);
pass the structure when calling repeatedly to reuse its caches.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Hashable, Optional, Tuple

from .access import AccessStructure, all_keys, q_product
from .phf import (
    DEFAULT_MAX_GROUPS,
    Group,
    KeyId,
    PhfArray,
    PhfError,
    occupancy,
    require_nondegenerate,
    validate_phf,
)


class Scheme(str, enum.Enum):
    ZS = "zs"
    PROPORTIONAL = "proportional"


class ConsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagreed."""


@dataclass(frozen=True)
class AnonymityReport:
    """Full posterior picture for one scheme.

    ``group_posteriors[key]`` lists only groups able to recover ``key``;
    every other group has posterior zero. Witnesses name the lexicographically
    smallest arg-max behind ``mu``, ``rho`` and each ``rho_per_participant``.
    """

    scheme: Scheme
    group_posteriors: Dict[Hashable, Dict[Group, Fraction]]
    participant_posteriors: Dict[Hashable, Tuple[Fraction, ...]]
    key_marginals: Dict[Hashable, Fraction]
    mu: Fraction
    rho: Fraction
    rho_per_participant: Tuple[Fraction, ...]
    s0: int
    mu_witness: Tuple[Hashable, Group]
    rho_witness: Tuple[Hashable, int]
    rho_per_participant_witness: Tuple[Hashable, ...]


def as_structure(obj: Any, max_groups: Optional[int] = DEFAULT_MAX_GROUPS):
    """Derive an :class:`AccessStructure` from a validated PHF, or pass a structure through."""
    if isinstance(obj, PhfArray):
        require_nondegenerate(obj)
        report = validate_phf(obj, max_groups=max_groups)
        if not report.is_phf:
            raise PhfError(f"not a PHF: group {report.witness} has no separating row")
        return AccessStructure(obj, max_groups=max_groups)
    return obj


def group_prior(structure, scheme: Scheme, group: Group) -> Fraction:
    st = as_structure(structure)
    if Scheme(scheme) is Scheme.ZS:
        return Fraction(1, math.comb(st.n, st.t))
    return Fraction(st.s[tuple(group)], st.s0)


def key_given_group(structure, group: Group, key: Hashable) -> Fraction:
    st = as_structure(structure)
    g = tuple(group)
    if g in st.recovery_set(key).groups:
        return Fraction(1, st.s[g])
    return Fraction(0)


def key_marginal(structure, scheme: Scheme, key: Hashable) -> Fraction:
    st = as_structure(structure)
    if Scheme(scheme) is Scheme.ZS:
        inv = sum(Fraction(1, st.s[g]) for g in st.recovery_set(key).groups)
        return inv / math.comb(st.n, st.t)
    return Fraction(st.recovery_set(key).q, st.s0)


def group_posterior(structure, scheme: Scheme, key: Hashable) -> Dict[Group, Fraction]:
    """``Pr[A | key]`` for every group in the key's recovery set, via Bayes' rule."""
    st = as_structure(structure)
    marginal = key_marginal(st, scheme, key)
    return {
        g: group_prior(st, scheme, g) * Fraction(1, st.s[g]) / marginal
        for g in st.recovery_set(key).groups
    }


def _sum_participant_posterior(n: int, posterior: Dict[Group, Fraction]) -> Tuple[Fraction, ...]:
    out = [Fraction(0)] * (n + 1)
    for g, p in posterior.items():
        for c in g:
            out[c] += p
    return tuple(out[1:])


def participant_posterior_closed_form(structure, key: KeyId) -> Tuple[Fraction, ...]:
    """Proportional-scheme ``Pr[P_c | key]``: ``1/f(r, j)`` for holders of a key component."""
    st = as_structure(structure)
    out = [Fraction(0)] * st.n
    for j in key.symbols:
        share = Fraction(1, st.f_of(key.row, j))
        for c in st.holders(key.row, j):
            out[c - 1] = share
    return tuple(out)


def participant_posterior(structure, scheme: Scheme, key: Hashable) -> Tuple[Fraction, ...]:
    """``Pr[P_c | key]`` for ``c = 1..n`` by summing group posteriors over members.

    For the proportional scheme on a PHF the sum is also checked against the
    closed form ``1/f(r, j)``.
    """
    st = as_structure(structure)
    summed = _sum_participant_posterior(st.n, group_posterior(st, scheme, key))
    if Scheme(scheme) is Scheme.PROPORTIONAL and isinstance(st, AccessStructure):
        closed = participant_posterior_closed_form(st, key)
        if closed != summed:
            raise ConsistencyError(f"participant posterior mismatch for {key}")
    return summed


def measures(structure, scheme: Scheme) -> AnonymityReport:
    st = as_structure(structure)
    scheme = Scheme(scheme)
    group_post: Dict[Hashable, Dict[Group, Fraction]] = {}
    part_post: Dict[Hashable, Tuple[Fraction, ...]] = {}
    marginals: Dict[Hashable, Fraction] = {}

    best_group = (Fraction(-1), None)
    best_part = (Fraction(-1), None)
    best_each = [(Fraction(-1), None)] * st.n
    for key in st.keys:
        marginals[key] = key_marginal(st, scheme, key)
        posterior = group_posterior(st, scheme, key)
        group_post[key] = posterior
        for g, p in posterior.items():
            if p > best_group[0]:
                best_group = (p, (key, g))
        probs = participant_posterior(st, scheme, key)
        part_post[key] = probs
        for c, p in enumerate(probs, start=1):
            if p > best_part[0]:
                best_part = (p, (key, c))
            if p > best_each[c - 1][0]:
                best_each[c - 1] = (p, key)

    return AnonymityReport(
        scheme=scheme,
        group_posteriors=group_post,
        participant_posteriors=part_post,
        key_marginals=marginals,
        mu=1 - best_group[0],
        rho=1 - best_part[0],
        rho_per_participant=tuple(1 - p for p, _ in best_each),
        s0=st.s0,
        mu_witness=best_group[1],
        rho_witness=best_part[1],
        rho_per_participant_witness=tuple(k for _, k in best_each),
    )


def _min_q(array: PhfArray) -> int:
    return min(q_product(array, key) for key in all_keys(array))


def _min_f(array: PhfArray) -> int:
    require_nondegenerate(array)
    return min(min(row) for row in occupancy(array))


def closed_form_measures_proportional(array: PhfArray) -> Tuple[Fraction, Fraction]:
    """``(mu, rho)`` for the proportional scheme from occupancy counts alone."""
    return 1 - Fraction(1, _min_q(array)), 1 - Fraction(1, _min_f(array))


def bounds_zs(array: PhfArray) -> Tuple[Fraction, Fraction]:
    """Upper bounds ``(mu, rho)`` for the ZS scheme.

    The mean posterior over a key's recovery set is ``1/q``, so the maximum
    is at least that; likewise for each component's holders with ``1/f``.
    The resulting ceilings coincide with the proportional scheme's exact
    values, which is why that scheme never does worse.
    """
    return 1 - Fraction(1, _min_q(array)), 1 - Fraction(1, _min_f(array))
