from fractions import Fraction
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, strategies as st

from strategies import type_vectors
from weakflip.code_model import TypeVector, canonicalize
from weakflip.constructions import bsc_optimal_type, fair_linear, fair_weak_flip, optimal_m3m4
from weakflip.distances import (
    distance_profile,
    fair_weak_flip_distance,
    match_array,
    mask_popcounts,
    min_rwise_distance,
    plotkin_bound,
    plotkin_bound_exact,
    rwise_distance,
    rwise_match,
    subset_mask,
    subset_sum_of_matches,
    weak_flip_count,
)

EXAMPLE_TYPE = TypeVector(4, (2, 0, 2, 0, 2, 1, 0))


def test_rwise_match_examples():
    assert rwise_match(EXAMPLE_TYPE, {1, 2, 3}) == 2
    assert rwise_distance(EXAMPLE_TYPE, {1, 2, 3}) == 7 - EXAMPLE_TYPE[1]
    assert rwise_match(EXAMPLE_TYPE, {1, 2, 3, 4}) == 0


@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_all_columns_once(m):
    t = TypeVector(m, (1,) * (2 ** (m - 1) - 1))
    for r in range(2, m + 1):
        for sub in combinations(range(1, m + 1), r):
            assert rwise_match(t, sub) == 2 ** (m - r) - 1
            assert rwise_distance(t, sub) == 2 ** (m - 1) - 2 ** (m - r)


def test_subset_size_checked():
    with pytest.raises(ValueError):
        rwise_match(EXAMPLE_TYPE, {1})
    with pytest.raises(ValueError):
        rwise_match(EXAMPLE_TYPE, {1, 5})


def test_repetition_distance():
    assert rwise_distance(TypeVector(2, (5,)), {1, 2}) == 5


def test_fair_weak_flip_m8_profile():
    t = fair_weak_flip(8, 35)
    assert rwise_distance(t, {1, 3, 5, 8}) == 34
    assert min_rwise_distance(t, 3) == 30
    assert distance_profile(t).min_rwise == (20, 30, 34)


def test_fair_linear_k3_distances():
    t = canonicalize(fair_linear(3, 7))
    assert min_rwise_distance(t, 2) == 4
    assert min_rwise_distance(t, 4) == 6


def test_pairwise_order_weak_m4():
    t = TypeVector.from_dict(4, {3: 4, 5: 2, 6: 1})
    n = 7
    assert distance_profile(t).pairwise == (n - 4, n - 2, n - 1, n - 1, n - 2, n - 4)


@pytest.mark.parametrize("k", [1, 2, 5])
def test_bec_optimal_m4_equidistant(k):
    assert distance_profile(optimal_m3m4(4, 3 * k)).pairwise == (2 * k,) * 6


@pytest.mark.parametrize("k", [1, 2, 4])
def test_bsc_optimal_pairwise(k):
    assert distance_profile(bsc_optimal_type(3, 3 * k)).pairwise == (2 * k - 1, 2 * k, 2 * k + 1)
    assert distance_profile(bsc_optimal_type(4, 3 * k)).pairwise == (
        2 * k - 1, 2 * k, 2 * k + 1, 2 * k + 1, 2 * k, 2 * k - 1)


def test_plotkin_examples():
    for n in (3, 6, 7, 30):
        assert plotkin_bound_exact(4, n, 2) == Fraction(2 * n, 3)
    assert plotkin_bound_exact(8, 35, 4) == 34
    assert plotkin_bound(4, 7, 2) == 4
    for m in (3, 6, 9):
        assert plotkin_bound_exact(m, 11, (m + 1) // 2 + 1) == 11


def test_fair_weak_flip_distance_examples():
    assert fair_weak_flip_distance(8, 35, 2) == 20
    assert fair_weak_flip_distance(8, 35, 5) == 35
    assert fair_weak_flip_distance(5, 10, 2) == 6
    with pytest.raises(ValueError):
        fair_weak_flip_distance(8, 34, 2)


def test_weak_flip_count():
    assert [weak_flip_count(m) for m in (2, 3, 4, 5, 6, 8, 16)] == [1, 3, 3, 10, 10, 35, 6435]


@given(type_vectors(m=st.integers(2, 6)))
def test_match_array_agrees_with_direct_count(t):
    a = match_array(t)
    for r in range(2, t.m + 1):
        for sub in combinations(range(1, t.m + 1), r):
            assert a[subset_mask(sub, t.m)] == rwise_match(t, sub)


@given(type_vectors(m=st.integers(2, 7)))
def test_min_rwise_nondecreasing(t):
    p = distance_profile(t, r_max=t.m)
    assert all(x <= y for x, y in zip(p.min_rwise, p.min_rwise[1:]))
    assert all(d <= t.n for d in p.min_rwise)


@given(type_vectors(m=st.integers(2, 7)))
def test_subset_sum_identity(t):
    a = match_array(t)
    pc = mask_popcounts(t.m)
    for r in range(2, (t.m + 1) // 2 + 1):
        assert a[pc == r].sum() == subset_sum_of_matches(t, r)


@given(type_vectors(m=st.integers(2, 7), zeros=False))
def test_prefix_subset_distance(t):
    # distance on messages {1..r} counts columns whose index is at least 2^(M-r)
    for r in range(2, t.m + 1):
        expect = sum(c for j, c in t.support().items() if j >= 2 ** (t.m - r))
        assert rwise_distance(t, range(1, r + 1)) == expect


@given(type_vectors(m=st.integers(3, 8), max_n=30))
def test_generalized_plotkin(t):
    for r in range(2, (t.m + 1) // 2 + 1):
        assert min_rwise_distance(t, r) <= plotkin_bound_exact(t.m, t.n, r)


@pytest.mark.parametrize("m", range(3, 9))
def test_fair_weak_flip_meets_plotkin(m):
    L = weak_flip_count(m)
    t = fair_weak_flip(m, L)
    for r in range(2, m + 1):
        assert min_rwise_distance(t, r) == fair_weak_flip_distance(m, L, r)
    for r in range(2, (m + 1) // 2 + 1):
        assert min_rwise_distance(t, r) == plotkin_bound_exact(m, L, r)


@pytest.mark.parametrize("m", range(3, 9))
def test_equidistance_cascade(m):
    # equidistant and bound-achieving at ceil(M/2) implies the same at every smaller s
    L = weak_flip_count(m)
    t = fair_weak_flip(m, 2 * L)
    a = match_array(t)
    pc = mask_popcounts(m)
    lbar = (m + 1) // 2
    assert len(set(a[pc == lbar])) == 1
    for s in range(2, lbar + 1):
        dists = set((t.n - a[pc == s]).tolist())
        assert dists == {plotkin_bound_exact(m, t.n, s)}


def test_profile_json():
    js = distance_profile(fair_weak_flip(8, 35)).to_json()
    assert js["min_rwise"] == {"2": 20, "3": 30, "4": 34}
    assert len(js["pairwise"]) == comb(8, 2)
