import numpy as np
import pytest

from weakflip.bec_exact import error_probability, error_probability_gap
from weakflip.code_model import TypeVector, canonicalize, is_weak_flip
from weakflip.constructions import (
    HADAMARD_BLOCKS_M8,
    bsc_optimal_type,
    conjectured_m5m6,
    fair_linear,
    fair_weak_flip,
    generalized_fair_weak_flip_m8,
    hadamard_code,
    linear_columns,
    optimal_m3m4,
    recursive_m3m4,
    weak_flip_columns,
)
from weakflip.distances import distance_profile, fair_weak_flip_distance, min_rwise_distance, weak_flip_count


def test_weak_flip_columns():
    assert weak_flip_columns(4).indices == (3, 5, 6)
    assert weak_flip_columns(5).indices == (3, 5, 6, 7, 9, 10, 11, 12, 13, 14)
    assert len(weak_flip_columns(8)) == 35
    assert len(weak_flip_columns(16)) == 6435
    for m in range(2, 11):
        assert len(weak_flip_columns(m)) == weak_flip_count(m)


def test_fair_weak_flip():
    assert fair_weak_flip(4, 3).support() == {3: 1, 5: 1, 6: 1}
    assert fair_weak_flip(5, 10).support() == {j: 1 for j in weak_flip_columns(5).indices}
    with pytest.raises(ValueError):
        fair_weak_flip(8, 36)


@pytest.mark.parametrize("m", range(3, 9))
@pytest.mark.parametrize("tau", [1, 2])
def test_fair_weak_flip_distances(m, tau):
    n = tau * weak_flip_count(m)
    t = fair_weak_flip(m, n)
    for r in range(2, m + 1):
        assert min_rwise_distance(t, r) == fair_weak_flip_distance(m, n, r)


def test_optimal_m3m4_examples():
    assert optimal_m3m4(4, 7).support() == {3: 3, 5: 2, 6: 2}
    assert optimal_m3m4(3, 9).counts == (3, 3, 3)
    assert optimal_m3m4(3, 4).counts == (2, 1, 1)


def test_recursive_construction():
    assert recursive_m3m4(4, 2).support() == {3: 1, 5: 1}
    assert recursive_m3m4(4, 3).support() == {3: 1, 5: 1, 6: 1}
    for m in (3, 4):
        for n in range(2, 31):
            assert recursive_m3m4(m, n) == optimal_m3m4(m, n)


@pytest.mark.parametrize("n", range(2, 20))
def test_dropping_last_codeword(n):
    from weakflip.code_model import codebook_from_type

    cb = codebook_from_type(optimal_m3m4(4, n)).delete_row(4)
    assert canonicalize(cb) == optimal_m3m4(3, n)


def test_bsc_optimal_type():
    assert bsc_optimal_type(3, 6).counts == (3, 2, 1)
    assert bsc_optimal_type(4, 7) == optimal_m3m4(4, 7)
    with pytest.raises(ValueError):
        bsc_optimal_type(3, 0)


def test_fair_linear_k3():
    cb = fair_linear(3, 7)
    assert cb.rows[0].sum() == 0
    assert canonicalize(cb).support() == {j: 1 for j in (85, 51, 102, 15, 90, 60, 105)}
    assert distance_profile(fair_linear(3, 35)).min_rwise == (20, 30, 30)
    with pytest.raises(ValueError):
        fair_linear(3, 8)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_linear_codes_are_weak_flip(k):
    K = 2**k - 1
    assert is_weak_flip(canonicalize(fair_linear(k, 2 * K)))
    assert len(linear_columns(k)) == K


def test_hadamard_families():
    h1 = hadamard_code("H1", 8)
    assert (h1.m, h1.n) == (8, 7)
    assert canonicalize(h1) == canonicalize(fair_linear(3, 7))
    h3 = hadamard_code("H3", 4)
    assert (h3.m, h3.n) == (8, 4) and distance_profile(h3).min_rwise[0] == 2
    h2 = hadamard_code("H2", 8)
    assert (h2.m, h2.n) == (16, 7) and distance_profile(h2, 2).min_rwise[0] == 3
    h1p = hadamard_code("H1'", 8)
    assert (h1p.m, h1p.n) == (4, 6) and distance_profile(h1p).min_rwise[0] == 4
    for v, orders in (("H1", (4, 8, 16)), ("H1'", (4, 8, 16)), ("H2", (4, 8)), ("H3", (4, 8))):
        for order in orders:
            assert is_weak_flip(canonicalize(hadamard_code(v, order)))
    with pytest.raises(ValueError):
        hadamard_code("H1", 12)


def test_conjectured_examples():
    assert conjectured_m5m6(5, 10) == fair_weak_flip(5, 10)
    assert conjectured_m5m6(6, 20) == fair_weak_flip(6, 20)
    t = conjectured_m5m6(6, 27)
    assert t.support() == {14: 2, 22: 2, 26: 2, 28: 2, 7: 3, 11: 3, 13: 3, 19: 3, 21: 3, 25: 3, 30: 1}
    assert conjectured_m5m6(5, 4).n == 4 and is_weak_flip(conjectured_m5m6(5, 4))


@pytest.mark.parametrize("m", [5, 6])
def test_conjectured_tables_consistent(m):
    for n in range(3, 60):
        t = conjectured_m5m6(m, n)
        assert t.n == n
        assert is_weak_flip(t) or (m == 6 and n % 10 == 7)


def test_m6_residue7_beats_best_weak_flip():
    from weakflip.search import exhaustive_search

    for d in (0.1, 0.3, 0.5, 0.9):
        weak = exhaustive_search(6, 7, d, "weak-flip")
        assert error_probability(conjectured_m5m6(6, 7), d).p_error < weak.best_p_error


def test_hadamard_blocks_m8():
    weak = set(weak_flip_columns(8).indices)
    for block in HADAMARD_BLOCKS_M8:
        t = TypeVector.from_dict(8, {j: 1 for j in block})
        assert set(block) <= weak
        assert set(distance_profile(t).pairwise) == {4}
    assert canonicalize(fair_linear(3, 7)).support() == {j: 1 for j in HADAMARD_BLOCKS_M8[0]}
    assert not set(HADAMARD_BLOCKS_M8[0]) & set(HADAMARD_BLOCKS_M8[1])


@pytest.mark.parametrize("n", [14, 21, 28, 35, 42, 49, 56, 63, 70])
def test_generalized_fair_weak_flip(n):
    t = generalized_fair_weak_flip_m8(n)
    kappa = n // 7
    assert t.n == n and is_weak_flip(t)
    prof = distance_profile(t)
    assert prof.min_rwise[0] == 4 * kappa and prof.min_rwise[1] == 6 * kappa
    for d in (0.1, 0.5, 0.9):
        assert error_probability_gap(fair_linear(3, n), t, d) > 0


def test_generalized_fair_weak_flip_reduces():
    assert generalized_fair_weak_flip_m8(35) == fair_weak_flip(8, 35)
    with pytest.raises(ValueError):
        generalized_fair_weak_flip_m8(7)
    with pytest.raises(ValueError):
        generalized_fair_weak_flip_m8(20)


@pytest.mark.parametrize("n,tau,eta", [(14, 0, 2), (42, 1, 1), (49, 1, 2), (77, 2, 1)])
def test_generalized_gap_formula(n, tau, eta):
    kappa = n // 7
    for d in np.linspace(0.1, 0.9, 5):
        expect = 14 * ((d**-kappa + 4) - (eta * d ** -(tau + 1) + (5 - eta) * d**-tau)) * d**n / 8
        gap = error_probability_gap(fair_linear(3, n), generalized_fair_weak_flip_m8(n), d)
        assert gap == pytest.approx(expect, rel=1e-9)
        assert gap > 0
