"""r-wise Hamming matches and distances, minimum profiles, Plotkin-type bounds.

Subsets of messages are M-bit masks using the same bit layout as columns:
message i (1-based) is bit M - i. A column matches on a subset when
(column & mask) is 0 or mask.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np

from .code_model import TypeVector, as_type


def subset_mask(subset, m: int) -> int:
    mask = 0
    for i in subset:
        if not 1 <= i <= m:
            raise ValueError(f"message index {i} out of range for M={m}")
        mask |= 1 << (m - i)
    return mask


@lru_cache(maxsize=None)
def mask_popcounts(m: int) -> np.ndarray:
    pc = np.zeros(1 << m, dtype=np.int64)
    for b in range(m):
        pc[1 << b:1 << (b + 1)] = pc[:1 << b] + 1
    pc.flags.writeable = False
    return pc


def column_weights(m: int) -> np.ndarray:
    return mask_popcounts(m)


def match_array(t: TypeVector) -> np.ndarray:
    """a_I for every mask I in [0, 2^M).

    Uses a subset-sum transform: a column c is constant on I iff c is a
    subset of ~I or I is a subset of c, and the two cases are disjoint
    for nonempty I.
    """
    m = t.m
    size = 1 << m
    f = np.zeros(size, dtype=np.int64)
    f[1:len(t.counts) + 1] = t.counts
    f[0] = t.zero_columns
    down = f.copy()  # down[S] = sum over c subset of S
    up = f.copy()  # up[S] = sum over c superset of S
    for b in range(m):
        step = 1 << b
        d = down.reshape(-1, 2, step)
        d[:, 1, :] += d[:, 0, :]
        u = up.reshape(-1, 2, step)
        u[:, 0, :] += u[:, 1, :]
    full = size - 1
    a = down[full ^ np.arange(size)] + up
    a[0] = t.n
    return a


def rwise_match(code, subset) -> int:
    t = as_type(code)
    subset = set(subset)
    if not 2 <= len(subset) <= t.m:
        raise ValueError(f"subset size must be in [2, {t.m}], got {len(subset)}")
    mask = subset_mask(subset, t.m)
    total = t.zero_columns
    for j, c in t.support().items():
        x = j & mask
        if x == 0 or x == mask:
            total += c
    return total


def rwise_distance(code, subset) -> int:
    t = as_type(code)
    return t.n - rwise_match(t, subset)


def min_rwise_distance(code, r: int) -> int:
    t = as_type(code)
    if not 2 <= r <= t.m:
        raise ValueError(f"r must be in [2, {t.m}], got {r}")
    a = match_array(t)
    return int(t.n - a[mask_popcounts(t.m) == r].max())


def max_rwise_match(code, r: int) -> int:
    t = as_type(code)
    return t.n - min_rwise_distance(t, r)


def pair_order(m: int) -> list[tuple[int, int]]:
    """(1,2), (1,3), (2,3), (1,4), (2,4), (3,4), ..."""
    return [(i, j) for j in range(2, m + 1) for i in range(1, j)]


@dataclass(frozen=True)
class DistanceProfile:
    m: int
    n: int
    min_rwise: tuple[int, ...]  # r = 2..ceil(M/2)
    pairwise: tuple[int, ...]

    def d_min(self, r: int) -> int:
        return self.min_rwise[r - 2]

    def to_json(self) -> dict:
        return {
            "min_rwise": {str(r): d for r, d in enumerate(self.min_rwise, start=2)},
            "pairwise": list(self.pairwise),
        }


def distance_profile(code, r_max: int | None = None) -> DistanceProfile:
    t = as_type(code)
    m = t.m
    r_max = (m + 1) // 2 if r_max is None else r_max
    a = match_array(t)
    pc = mask_popcounts(m)
    mins = tuple(int(t.n - a[pc == r].max()) for r in range(2, max(r_max, 2) + 1))
    pairs = tuple(int(t.n - a[(1 << (m - i)) | (1 << (m - j))]) for i, j in pair_order(m))
    return DistanceProfile(m, t.n, mins, pairs)


def _lbar(m: int) -> int:
    return (m + 1) // 2


def weak_flip_count(m: int) -> int:
    """L = C(2*ceil(M/2) - 1, ceil(M/2))."""
    lb = _lbar(m)
    return comb(2 * lb - 1, lb)


def plotkin_bound_exact(m: int, n: int, r: int) -> Fraction:
    if not 2 <= r <= m:
        raise ValueError(f"r must be in [2, {m}], got {r}")
    lb = _lbar(m)
    if r > lb:
        return Fraction(n)
    return n * (1 - Fraction(comb(lb - 1, r - 1), comb(2 * lb - 1, r - 1)))


def plotkin_bound(m: int, n: int, r: int) -> int:
    """Integer upper bound on d_min;r; see plotkin_bound_exact for the real value."""
    b = plotkin_bound_exact(m, n, r)
    return b.numerator // b.denominator


def fair_weak_flip_distance(m: int, n: int, r: int) -> int:
    L = weak_flip_count(m)
    if n % L:
        raise ValueError(f"n={n} is not a multiple of L={L}")
    if not 2 <= r <= m:
        raise ValueError(f"r must be in [2, {m}], got {r}")
    lb = _lbar(m)
    return (n // L) * (L - comb(2 * lb - r, lb))


def subset_sum_of_matches(t: TypeVector, r: int) -> int:
    """Sum of a_I over all r-subsets, evaluated column by column."""
    m = t.m
    total = t.zero_columns * comb(m, r)
    for j, c in t.support().items():
        h = bin(j).count("1")
        total += c * (comb(h, r) + comb(m - h, r))
    return total
