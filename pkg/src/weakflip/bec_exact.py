"""Exact ML error probability on the binary erasure channel.

The fast path sums (-1)^|I| delta^{d_I} over all subsets of at least two
messages. Signed subset counts are accumulated per distance as integers,
so the only rounding happens in the final compensated sum.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .code_model import Codebook, TypeVector, as_type, codebook_from_type
from .distances import mask_popcounts, match_array

ORACLE_MAX_N = 14


@dataclass(frozen=True)
class Channel:
    delta: float

    def __post_init__(self):
        if not 0.0 <= self.delta < 1.0:
            raise ValueError(f"erasure probability must be in [0, 1), got {self.delta}")


@dataclass(frozen=True)
class EvalResult:
    delta: float
    p_error: float
    per_message: tuple[float, ...] | None = None

    @property
    def p_success(self) -> float:
        return 1.0 - self.p_error

    def to_json(self) -> dict:
        out = {"delta": self.delta, "p_error": self.p_error}
        if self.per_message is not None:
            out["lambda"] = list(self.per_message)
        return out


class TieBreak(enum.Enum):
    LOWEST = "lowest"
    HIGHEST = "highest"
    ROUND_ROBIN = "round-robin"


def _channel(ch) -> Channel:
    return ch if isinstance(ch, Channel) else Channel(float(ch))


def signed_distance_counts(t: TypeVector) -> np.ndarray:
    """c[d] = sum over subsets I with |I| >= 2 and d_I = d of (-1)^|I|."""
    a = match_array(t)
    pc = mask_popcounts(t.m)
    keep = pc >= 2
    d = t.n - a[keep]
    sign = np.where(pc[keep] % 2 == 0, 1, -1)
    return np.bincount(d, weights=sign, minlength=t.n + 1).astype(np.int64)


def _sum_counts(counts: np.ndarray, delta: float) -> float:
    nz = np.nonzero(counts)[0]
    pw = np.power(float(delta), nz.astype(np.float64))
    return math.fsum((counts[nz].astype(np.float64) * pw).tolist())


def error_probability(code, ch) -> EvalResult:
    t = as_type(code)
    ch = _channel(ch)
    pe = _sum_counts(signed_distance_counts(t), ch.delta) / t.m
    return EvalResult(ch.delta, pe)


def _counts_diff(t1: TypeVector, t2: TypeVector) -> np.ndarray:
    c1, c2 = signed_distance_counts(t1), signed_distance_counts(t2)
    diff = np.zeros(max(len(c1), len(c2)), dtype=np.int64)
    diff[: len(c1)] += c1
    diff[: len(c2)] -= c2
    return diff


def error_probability_gap(code_a, code_b, ch) -> float:
    """P_e(a) - P_e(b), cancelling common subset terms exactly before rounding."""
    ta, tb = as_type(code_a), as_type(code_b)
    if ta.m != tb.m:
        raise ValueError("codes must have the same number of codewords")
    return _sum_counts(_counts_diff(ta, tb), _channel(ch).delta) / ta.m


def append_gain(code, j: int, ch) -> float:
    """M * (P_c after appending candidate column j - P_c before)."""
    t = as_type(code)
    if not 1 <= j <= t.J:
        raise ValueError(f"candidate index must be in [1, {t.J}], got {j}")
    return _sum_counts(_counts_diff(t, t.with_added(j)), _channel(ch).delta)


def oracle_error_probability(code, ch, tie_break: TieBreak | str = TieBreak.LOWEST) -> EvalResult:
    """Brute-force ML decoding over every channel output.

    Outputs are enumerated as (sent message, erasure pattern) pairs, which
    covers every y in {0,1,2}^n with positive probability. Round-robin
    picks maximizer number (base-3 index of y) mod k.
    """
    cb = code if isinstance(code, Codebook) else codebook_from_type(code)
    ch = _channel(ch)
    tie_break = TieBreak(tie_break)
    m, n = cb.m, cb.n
    if n > ORACLE_MAX_N:
        raise ValueError(f"oracle enumerates 3^n outputs; n={n} exceeds {ORACLE_MAX_N}")
    delta = ch.delta

    bitw = 1 << np.arange(n - 1, -1, -1, dtype=np.int64)
    words = cb.rows.astype(np.int64) @ bitw  # codeword as an n-bit integer
    erasures = np.arange(1 << n, dtype=np.int64)
    keep = ((1 << n) - 1) ^ erasures
    keys = words[None, :] & keep[:, None]  # (patterns, M)
    same = keys[:, :, None] == keys[:, None, :]  # maximizer sets per sent message

    idx = np.arange(m)
    if tie_break is TieBreak.LOWEST:
        decided = np.argmax(same, axis=2)
    elif tie_break is TieBreak.HIGHEST:
        decided = m - 1 - np.argmax(same[:, :, ::-1], axis=2)
    else:
        # base-3 index of the received word: digit 2 where erased, else the sent bit
        pos = np.arange(n - 1, -1, -1)
        pw3 = 3 ** np.arange(n - 1, -1, -1, dtype=np.int64)
        ebits = (erasures[:, None] >> pos) & 1
        wbits = (words[:, None] >> pos) & 1
        digits = np.where(ebits[:, None, :] == 1, 2, wbits[None, :, :])
        yidx = digits @ pw3
        k = same.sum(axis=2)
        rank = np.cumsum(same, axis=2) - 1
        choice = yidx % k
        decided = np.argmax(same & (rank == choice[:, :, None]), axis=2)
    wrong = decided != idx[None, :]

    ne = mask_popcounts(n)
    prob = np.power(delta, ne.astype(np.float64)) * np.power(1.0 - delta, (n - ne).astype(np.float64))
    lam = tuple(math.fsum(prob[wrong[:, i]].tolist()) for i in range(m))
    terms = np.broadcast_to(prob[:, None], wrong.shape)[wrong]
    pe = math.fsum(terms.tolist()) / m
    return EvalResult(delta, pe, lam)
