import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from phfanon.phf import (
    ComponentSet,
    DegenerateStructureError,
    KeyId,
    PhfArray,
    PhfError,
    TooLargeError,
    component_set,
    is_balanced,
    occupancy,
    rank_group,
    separating_rows,
    unrank_group,
    validate_phf,
)

from conftest import small_phfs


class TestConstruction:
    def test_rejects_out_of_range_symbol(self):
        with pytest.raises(PhfError, match="outside 1..2"):
            PhfArray(((1, 3, 2),), 2, 2)

    def test_rejects_ragged_rows(self):
        with pytest.raises(PhfError, match="row 2"):
            PhfArray(((1, 2, 1), (1, 2)), 2, 2)

    @pytest.mark.parametrize("m,t", [(1, 2), (3, 1), (2, 3)])
    def test_rejects_bad_threshold(self, m, t):
        with pytest.raises(PhfError):
            PhfArray(((1, 1, 1, 1),), m, t)

    def test_degenerate_array_constructs_but_component_set_refuses(self):
        array = PhfArray(((1, 1),), 2, 2)
        with pytest.raises(DegenerateStructureError):
            component_set(array, 1, 2)


class TestValidate:
    def test_example1_is_phf(self, ex1):
        assert validate_phf(ex1) == (True, None)

    def test_example2_is_phf(self, ex2):
        assert validate_phf(ex2).is_phf

    def test_identical_columns_fail(self):
        report = validate_phf(PhfArray(((1, 1),), 2, 2))
        assert report == (False, (1, 2))

    def test_witness_is_lexicographically_smallest(self):
        # columns 2,3 and 3,4 collide in every row; (2, 3) comes first
        array = PhfArray(((1, 2, 2, 2), (1, 1, 1, 2)), 2, 2)
        assert validate_phf(array) == (False, (2, 3))

    def test_cap(self, ex2):
        with pytest.raises(TooLargeError):
            validate_phf(ex2, max_groups=100)

    def test_t_above_m_is_structural_error(self, ex1):
        with pytest.raises(PhfError):
            validate_phf(ex1, t=3)

    @settings(max_examples=40, deadline=None)
    @given(small_phfs())
    def test_matches_direct_definition(self, array):
        for group in itertools.combinations(range(1, array.n + 1), array.t):
            assert any(len({array.symbol(r, c) for c in group}) == array.t for r in range(1, array.l + 1))


class TestBalance:
    def test_example1(self, ex1):
        assert is_balanced(ex1)

    def test_example5_unbalanced(self, ex5):
        assert not is_balanced(ex5)
        for row in occupancy(ex5):
            assert sorted(row) == [2, 2, 2, 3, 3]

    def test_single_row_permutation(self):
        assert is_balanced(PhfArray(((3, 1, 4, 2),), 4, 2))

    def test_indivisible(self):
        assert not is_balanced(PhfArray(((1, 2, 1),), 2, 2))


class TestComponentSet:
    def test_example2_row1(self, ex2):
        assert component_set(ex2, 1, 1) == ComponentSet(1, 1, (1, 7, 11))
        assert component_set(ex2, 1, 3).indices == (3, 15, 16)

    def test_example1_row1_symbol2(self, ex1):
        cs = component_set(ex1, 1, 2)
        assert cs.indices == (4, 5, 6) and cs.size == 3

    def test_out_of_range(self, ex1):
        with pytest.raises(PhfError):
            component_set(ex1, 4, 1)

    @settings(max_examples=40, deadline=None)
    @given(small_phfs())
    def test_counts_sum_to_n(self, array):
        for row in occupancy(array):
            assert sum(row) == array.n


class TestSeparatingRows:
    def test_example1(self, ex1):
        assert separating_rows(ex1, (1, 2)) == [KeyId(3, (1, 2))]
        assert separating_rows(ex1, (1, 3)) == [KeyId(2, (1, 2)), KeyId(3, (1, 2))]

    def test_example2_single(self, ex2):
        assert len(separating_rows(ex2, (1, 4, 16))) == 1

    def test_rejects_unsorted_group(self, ex1):
        with pytest.raises(PhfError):
            separating_rows(ex1, (3, 1))

    @settings(max_examples=40, deadline=None)
    @given(small_phfs())
    def test_rows_are_exactly_the_distinct_ones(self, array):
        for group in array.groups():
            found = {k.row for k in separating_rows(array, group)}
            expected = {r for r in range(1, array.l + 1)
                        if len({array.symbol(r, c) for c in group}) == array.t}
            assert found == expected and found


class TestRanking:
    @pytest.mark.parametrize("n,t", [(6, 2), (9, 3), (12, 4), (5, 5)])
    def test_bijection(self, n, t):
        ranks = sorted(rank_group(g) for g in itertools.combinations(range(1, n + 1), t))
        assert ranks == list(range(math.comb(n, t)))
        for r in range(math.comb(n, t)):
            assert rank_group(unrank_group(r, n, t)) == r

    @given(st.integers(2, 60).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n))).flatmap(
        lambda nt: st.tuples(st.just(nt), st.integers(0, math.comb(*nt) - 1))))
    def test_roundtrip_large(self, args):
        (n, t), r = args
        g = unrank_group(r, n, t)
        assert len(g) == t and list(g) == sorted(set(g)) and 1 <= g[0] and g[-1] <= n
        assert rank_group(g) == r

    def test_out_of_range(self):
        with pytest.raises(PhfError):
            unrank_group(15, 6, 2)
