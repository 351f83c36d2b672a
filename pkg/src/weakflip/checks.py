"""Named verification suites, shared by the CLI and the scripts."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bec_exact import append_gain, error_probability, oracle_error_probability
from .bounds import all_bounds
from .code_model import TypeVector, num_candidates
from .constructions import conjectured_m5m6, fair_weak_flip, optimal_m3m4
from .distances import (
    match_array,
    mask_popcounts,
    min_rwise_distance,
    plotkin_bound_exact,
    weak_flip_count,
)
from .search import all_values

DELTAS = (0.1, 0.3, 0.5, 0.9)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


def random_type(rng: np.random.Generator, m: int, n: int, weak_only: bool = False) -> TypeVector:
    """Uniformly random columns; a column may be all-zero unless weak_only."""
    if weak_only:
        from .constructions import weak_flip_columns

        pool = np.array(weak_flip_columns(m).indices)
    else:
        pool = np.arange(0, num_candidates(m) + 1)
    cols = rng.choice(pool, size=n)
    counts = np.bincount(cols, minlength=num_candidates(m) + 1)
    return TypeVector(m, tuple(counts[1:].tolist()), int(counts[0]))


def oracle_equivalence(seed: int = 2024, samples: int = 100) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for m in (2, 3, 4, 5):
        for _ in range(samples):
            t = random_type(rng, m, int(rng.integers(1, 7)))
            for d in DELTAS:
                worst = max(worst, abs(error_probability(t, d).p_error - oracle_error_probability(t, d).p_error))
    return CheckResult("oracle-equivalence", worst <= 1e-12, f"max |exact - oracle| = {worst:.3e}")


def optimality_m34() -> CheckResult:
    from .search import _allowed_columns

    worst = -math.inf
    for m, n_max in ((3, 20), (4, 9)):
        cols = _allowed_columns(m, "all")
        for n in range(1, n_max + 1):
            for d in DELTAS:
                best = all_values(m, n, d, cols).min()
                worst = max(worst, error_probability(optimal_m3m4(m, n), d).p_error - best)
    return CheckResult("optimality-m34", bool(worst <= 1e-14), f"max P_e(formula) - global min = {worst:.3e}")


def conjecture_m5() -> CheckResult:
    from .search import _allowed_columns

    worst = -math.inf
    for m, ns in ((5, (3, 4, 5, 6)), (6, (3, 4, 5))):
        cols = _allowed_columns(m, "all")
        for n in ns:
            for d in DELTAS:
                best = all_values(m, n, d, cols).min()
                worst = max(worst, error_probability(conjectured_m5m6(m, n), d).p_error - best)
    return CheckResult("conjecture-m5", bool(worst <= 1e-14), f"max P_e(conjectured) - global min = {worst:.3e}")


def plotkin(seed: int = 7, samples: int = 1000) -> CheckResult:
    rng = np.random.default_rng(seed)
    violations = 0
    for m in range(3, 9):
        pc = mask_popcounts(m)
        for _ in range(samples):
            n = int(rng.integers(1, 40))
            t = random_type(rng, m, n)
            a = match_array(t)
            for r in range(2, (m + 1) // 2 + 1):
                if t.n - a[pc == r].max() > plotkin_bound_exact(m, n, r):
                    violations += 1
    unequal = 0
    for m in range(3, 9):
        L = weak_flip_count(m)
        t = fair_weak_flip(m, L)
        for r in range(2, (m + 1) // 2 + 1):
            if min_rwise_distance(t, r) != plotkin_bound_exact(m, L, r):
                unequal += 1
    ok = violations == 0 and unequal == 0
    return CheckResult("plotkin", ok, f"{violations} bound violations, {unequal} fair-code equality failures")


def append_gain_forms(k: int, delta: float) -> dict[int, float]:
    """Closed-form append gains for the seed [k, k, k-1] on columns (3, 5, 6)."""
    d, n = delta, 3 * k
    low = (2 * d ** (2 * k - 1) + d ** (2 * k) - 2 * d ** (n - 1)) * (1 - d)
    mid = (2 * d ** (2 * k - 1) + 2 * d ** (2 * k) - 3 * d ** (n - 1)) * (1 - d)
    top = (4 * d ** (2 * k - 1) - 3 * d ** (n - 1)) * (1 - d)
    return {1: low, 2: low, 3: mid, 4: low, 5: mid, 6: top, 7: low}


def append_gain_suite() -> CheckResult:
    worst, argmax_ok = 0.0, True
    for k in (1, 2, 3):
        seed = TypeVector.from_dict(4, {3: k, 5: k, 6: k - 1})
        for d in DELTAS:
            forms = append_gain_forms(k, d)
            gains = {j: append_gain(seed, j, d) for j in range(1, 8)}
            worst = max(worst, max(abs(gains[j] - forms[j]) for j in gains))
            argmax_ok &= max(gains, key=gains.get) == 6
    return CheckResult("appendix-a", worst <= 1e-12 and argmax_ok, f"max gain error {worst:.3e}, argmax 6: {argmax_ok}")


def bounds_sandwich(delta: float = 0.3) -> CheckResult:
    bad = []
    for m in (3, 4):
        for n in range(2, 41):
            pe = error_probability(optimal_m3m4(m, n), delta).p_error
            b = all_bounds(m, n, delta)
            if not (b.ppv_lower <= pe <= min(b.ppv_upper, b.sgb_upper) and b.sgb_lower <= pe):
                bad.append((m, n))
    return CheckResult("bounds-sandwich", not bad, f"violations at {bad}" if bad else "all 78 cases hold")


SUITES = {
    "oracle-equivalence": oracle_equivalence,
    "plotkin": plotkin,
    "optimality-m34": optimality_m34,
    "conjecture-m5": conjecture_m5,
    "appendix-a": append_gain_suite,
    "bounds-sandwich": bounds_sandwich,
}
