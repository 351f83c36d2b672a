"""Finite-blocklength bounds on the BEC: SGB (M = 3, 4) and PPV upper/lower."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .bec_exact import _channel


@dataclass(frozen=True)
class BoundSet:
    m: int
    n: int
    delta: float
    ppv_upper: float
    ppv_lower: float
    sgb_lower: float | None = None
    sgb_upper: float | None = None


def min_discrepancy_exponent(n: int) -> float:
    """c such that D_min = -c log(delta) for the best M = 3, 4 codes."""
    if n % 3 == 0:
        return 2.0 / 3.0
    return (n // 3 + (n + 1) // 3) / n


def sgb_bounds(m: int, n: int, ch) -> tuple[float, float]:
    """(lower, upper); the lower bound is only meaningful for optimal codes."""
    if m not in (3, 4):
        raise ValueError(f"SGB discrepancy is only available for M=3,4, got M={m}")
    delta = _channel(ch).delta
    if delta <= 0:
        raise ValueError("SGB bounds need delta > 0")
    d_min = -min_discrepancy_exponent(n) * math.log(delta)
    p_min = min(delta, 1 - delta)
    lower = math.exp(-n * (d_min + math.sqrt(2 / n) * math.log(1 / p_min))) / (4 * m)
    upper = (m - 1) * math.exp(-n * d_min)
    return max(lower, 0.0), upper


def _log_binom(n, k):
    return gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)


def _xlogy(x, y):
    """x * log(y) with 0 * log(0) = 0."""
    x, y = np.broadcast_arrays(np.asarray(x, dtype=np.float64), np.asarray(y, dtype=np.float64))
    out = np.zeros(x.shape)
    nz = x != 0
    with np.errstate(divide="ignore"):
        out[nz] = x[nz] * np.log(y[nz])
    return out


def _binom_pmf(n: int, delta: float, erased: np.ndarray) -> np.ndarray:
    """P(exactly `erased` of n symbols erased)."""
    return np.exp(_log_binom(n, erased) + _xlogy(erased, delta) + _xlogy(n - erased, 1 - delta))


def ppv_upper(m: int, n: int, ch) -> float:
    """Random-coding achievability bound averaged over uniform codebooks."""
    if m < 1:
        raise ValueError("need at least one codeword")
    delta = _channel(ch).delta
    if m == 1:
        return 0.0
    j = np.arange(n + 1)  # unerased positions
    p_j = _binom_pmf(n, delta, n - j)
    k = np.arange(m)  # competitors tying with the sent codeword
    # P(k of the M-1 others agree on the unerased positions), won with prob 1/(k+1)
    log_q = _log_binom(m - 1, k)[None, :] - (j[:, None] * k[None, :]) * math.log(2)
    miss = -np.expm1(-j * math.log(2))  # 1 - 2^-j
    log_q = log_q + _xlogy((m - 1 - k)[None, :], miss[:, None])
    inner = (np.exp(log_q) / (k + 1)[None, :]).sum(axis=1)
    return float(min(max(1.0 - math.fsum((p_j * inner).tolist()), 0.0), 1.0))


def _first_erasure_count(m: int, n: int) -> int:
    """floor(n - log2 M) + 1, exact for powers of two."""
    if m & (m - 1) == 0:
        return n - (m.bit_length() - 1) + 1
    return math.floor(n - math.log2(m) - 1e-9) + 1


def ppv_lower(m: int, n: int, ch) -> float:
    """Converse: every (M, n) code has at least this error probability."""
    if m < 2:
        raise ValueError("need at least two codewords")
    delta = _channel(ch).delta
    start = max(_first_erasure_count(m, n), 0)
    e = np.arange(start, n + 1)
    if e.size == 0:
        return 0.0
    terms = _binom_pmf(n, delta, e) * (1.0 - np.power(2.0, n - e) / m)
    return float(min(max(math.fsum(terms.tolist()), 0.0), 1.0))


def all_bounds(m: int, n: int, ch) -> BoundSet:
    delta = _channel(ch).delta
    lo = hi = None
    if m in (3, 4) and delta > 0:
        lo, hi = sgb_bounds(m, n, delta)
    return BoundSet(m, n, delta, ppv_upper(m, n, delta), ppv_lower(m, n, delta), lo, hi)
