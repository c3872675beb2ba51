"""Invariants of the posterior machinery on bundled and randomly generated PHFs."""

from fractions import Fraction

import pytest
from hypothesis import given, settings

from phfanon.access import AccessStructure, q_product
from phfanon.anonymity import (
    Scheme,
    bounds_zs,
    closed_form_measures_proportional,
    group_posterior,
    group_prior,
    key_given_group,
    key_marginal,
    measures,
    participant_posterior,
)
from phfanon.fixtures import example4_candidates
from phfanon.general import GeneralStructure, general_measures, phf_to_general, validate_threshold
from phfanon.phf import is_balanced

from conftest import small_phfs

SETTINGS = settings(max_examples=60, deadline=None)


def check_all(array):
    """Every PHF-level invariant; returns nothing, asserts everything."""
    st = AccessStructure(array)
    reports = {s: measures(st, s) for s in Scheme}
    for scheme, report in reports.items():
        assert sum(report.key_marginals.values()) == 1
        for key in st.keys:
            gp = group_posterior(st, scheme, key)
            pp = participant_posterior(st, scheme, key)
            assert sum(gp.values()) == 1
            assert sum(pp) == array.t
            for j in key.symbols:
                assert sum(pp[c - 1] for c in st.holders(key.row, j)) == 1
            assert len(gp) == q_product(array, key)
            marginal = key_marginal(st, scheme, key)
            for g in array.groups():
                post = gp.get(g, Fraction(0))
                assert post * marginal == key_given_group(st, g, key) * group_prior(st, scheme, g)

    zs, prop = reports[Scheme.ZS], reports[Scheme.PROPORTIONAL]
    # proportional scheme is never worse
    assert prop.mu >= zs.mu and prop.rho >= zs.rho
    # ZS lower bounds per key, hence ceilings on its measures
    for key in st.keys:
        q = st.recovery_set(key).q
        assert max(zs.group_posteriors[key].values()) >= Fraction(1, q)
        for j in key.symbols:
            holders = st.holders(key.row, j)
            assert max(zs.participant_posteriors[key][c - 1] for c in holders) >= Fraction(1, len(holders))
    mu_up, rho_up = bounds_zs(array)
    assert zs.mu <= mu_up and zs.rho <= rho_up
    # proportional uniformity on each recovery set
    for key in st.keys:
        assert set(prop.group_posteriors[key].values()) == {Fraction(1, st.recovery_set(key).q)}
    # closed forms equal enumeration
    assert closed_form_measures_proportional(array) == (prop.mu, prop.rho)
    # ceilings in terms of m/n and t/n
    ratio, tr = Fraction(array.m, array.n), Fraction(array.t, array.n)
    assert prop.mu <= 1 - ratio**array.t <= 1 - tr**array.t
    assert prop.rho <= 1 - ratio <= 1 - tr
    if is_balanced(array):
        assert prop.mu == 1 - ratio**array.t
        assert prop.rho == 1 - ratio
        assert set(prop.rho_per_participant) == {1 - ratio}
        best = {}
        for post in prop.group_posteriors.values():
            for g, p in post.items():
                best[g] = max(best.get(g, 0), p)
        assert set(best.values()) == {ratio**array.t}
    else:
        assert prop.mu < 1 - ratio**array.t and prop.rho < 1 - ratio
    # embedding into the general setup reproduces everything
    setup, order = phf_to_general(array)
    assert validate_threshold(setup)
    assert GeneralStructure(setup).s0 == st.s0
    for scheme, report in reports.items():
        general = general_measures(setup, scheme)
        assert (general.mu, general.rho, general.rho_per_participant) == (
            report.mu, report.rho, report.rho_per_participant)
        for i, key in enumerate(order, start=1):
            assert general.group_posteriors[i] == report.group_posteriors[key]
            assert general.participant_posteriors[i] == report.participant_posteriors[key]
            assert general.key_marginals[i] == report.key_marginals[key]


@pytest.mark.parametrize("name", ["ex1", "ex2", "ex3", "ex5"])
def test_bundled_fixtures(request, name):
    check_all(request.getfixturevalue(name))


def test_example4_candidates():
    for cand in example4_candidates():
        check_all(cand.array)


@SETTINGS
@given(small_phfs())
def test_random_phfs(array):
    check_all(array)


@SETTINGS
@given(small_phfs(balanced=True))
def test_random_balanced_phfs(array):
    assert is_balanced(array)
    check_all(array)
