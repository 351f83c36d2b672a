import numpy as np
import pytest

from weakflip.bec_exact import error_probability
from weakflip.bounds import all_bounds, ppv_lower, ppv_upper, sgb_bounds
from weakflip.checks import random_type
from weakflip.constructions import optimal_m3m4


def test_sgb_examples():
    lo, hi = sgb_bounds(3, 3, 0.3)
    assert hi == pytest.approx(0.18, rel=1e-12)
    assert hi >= error_probability(optimal_m3m4(3, 3), 0.3).p_error
    for m in (3, 4):
        for n in (3, 6, 12):
            assert sgb_bounds(m, n, 0.4)[1] == pytest.approx((m - 1) * 0.4 ** (2 * n / 3), rel=1e-12)


def test_sgb_other_residues():
    # exponent (floor(n/3) + floor((n+1)/3)) / n, so the upper bound is (M-1) delta^(that * n)
    for n in (4, 5, 7, 8):
        expo = n // 3 + (n + 1) // 3
        assert sgb_bounds(4, n, 0.3)[1] == pytest.approx(3 * 0.3**expo, rel=1e-12)


def test_sgb_limits():
    lo, hi = sgb_bounds(4, 10, 1 - 1e-9)
    assert hi == pytest.approx(3, rel=1e-6) and lo < 1e-3
    with pytest.raises(ValueError):
        sgb_bounds(5, 10, 0.3)
    with pytest.raises(ValueError):
        sgb_bounds(3, 10, 0.0)


def test_ppv_upper_examples():
    assert ppv_upper(1, 5, 0.3) == 0.0
    assert ppv_upper(2, 1, 0.0) == pytest.approx(0.25, abs=1e-15)
    for m in (3, 4):
        for n in range(1, 31):
            assert ppv_upper(m, n, 0.3) >= error_probability(optimal_m3m4(m, n), 0.3).p_error


def test_ppv_lower_examples():
    assert ppv_lower(4, 2, 0.5) == pytest.approx(0.4375, abs=1e-15)
    assert ppv_lower(3, 7, 0.0) == 0.0


def test_ppv_lower_is_a_converse():
    rng = np.random.default_rng(3)
    for m in (3, 4):
        for n in range(1, 13):
            lb = ppv_lower(m, n, 0.3)
            assert lb <= error_probability(optimal_m3m4(m, n), 0.3).p_error + 1e-15
            for _ in range(20):
                assert lb <= error_probability(random_type(rng, m, n), 0.3).p_error + 1e-15


def test_ppv_lower_non_power_of_two():
    # floor(n - log2 3) + 1 = n - 1 for every n >= 2
    d = 0.25
    n = 6
    expect = 6 * d**5 * (1 - d) * (1 - 2 / 3) + d**6 * (1 - 1 / 3)
    assert ppv_lower(3, n, d) == pytest.approx(expect, rel=1e-12)


@pytest.mark.parametrize("m", [2, 3, 4, 5, 8])
@pytest.mark.parametrize("delta", [0.0, 0.1, 0.5, 0.99])
def test_bounds_in_unit_interval(m, delta):
    for n in (1, 5, 40, 120):
        b = all_bounds(m, n, delta)
        for v in (b.ppv_lower, b.ppv_upper, b.sgb_lower, b.sgb_upper):
            if v is not None and v is not b.sgb_upper:
                assert 0.0 <= v <= 1.0 and np.isfinite(v)
