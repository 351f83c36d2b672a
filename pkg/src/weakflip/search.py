"""Exhaustive and randomized searches for codes with small error probability."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .bec_exact import Channel, _channel, error_probability
from .code_model import Codebook, TypeVector, as_type, num_candidates
from .constructions import fair_linear, linear_columns, weak_flip_columns
from .distances import DistanceProfile, distance_profile, mask_popcounts

MAX_COMPOSITIONS = 10**7
TIE_RTOL = 1e-12


@dataclass(frozen=True)
class SearchConfig:
    seed: int = 0
    t_start: float = 1.0
    t_freeze: float = 1e-4
    alpha: float = 0.95
    moves_per_temp: int | None = None  # None means 200 * n
    max_iterations: int = 10**8
    restarts: int = 8

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise ValueError("alpha must lie in (0, 1)")
        if not 0 < self.t_freeze < self.t_start:
            raise ValueError("need 0 < t_freeze < t_start")
        if self.restarts < 1 or self.max_iterations < 1:
            raise ValueError("restarts and max_iterations must be positive")


@dataclass(frozen=True)
class SearchReport:
    best: TypeVector | Codebook
    best_p_error: float
    profile: DistanceProfile
    iterations: int
    seed: int | None = None
    delta: float | None = None
    history: tuple[float, ...] = field(default=(), repr=False)

    @property
    def best_type(self) -> TypeVector:
        return as_type(self.best)

    def to_json(self) -> dict:
        out = {
            "code": self.best.to_json(),
            "p_error": self.best_p_error,
            "delta": self.delta,
            "profile": self.profile.to_json(),
            "iterations": self.iterations,
        }
        if self.seed is not None:
            out["seed"] = self.seed
        return out


def composition_count(n: int, parts: int) -> int:
    return math.comb(n + parts - 1, parts - 1)


def iter_compositions(n: int, parts: int, chunk: int = 200_000):
    """Yield arrays of compositions of n into `parts` nonnegative parts, in lexicographic order."""
    if parts == 1:
        yield np.array([[n]], dtype=np.int64)
        return
    k = parts - 1
    bars = itertools.combinations(range(n + k), k)
    while True:
        flat = np.fromiter(itertools.chain.from_iterable(itertools.islice(bars, chunk)), dtype=np.int64)
        if flat.size == 0:
            return
        b = flat.reshape(-1, k)
        edges = np.hstack([np.full((len(b), 1), -1), b, np.full((len(b), 1), n + k)])
        yield np.diff(edges, axis=1) - 1


def _colex_argmin(rows: np.ndarray) -> int:
    """Index of the colexicographically smallest row (compare last entries first)."""
    order = np.lexsort(rows.T)
    return int(order[0])


def match_patterns(m: int, columns) -> tuple[np.ndarray, np.ndarray]:
    """Group subsets of size >= 2 by which allowed columns are constant on them.

    Returns (patterns, weights): patterns is a bool (columns x groups)
    matrix, weights the summed signs (-1)^|I| of each group.
    """
    masks = np.arange(1 << m, dtype=np.int64)
    pc = mask_popcounts(m)
    masks, sizes = masks[pc >= 2], pc[pc >= 2]
    cols = np.asarray(columns, dtype=np.int64)
    x = cols[:, None] & masks[None, :]
    hit = (x == 0) | (x == masks[None, :])
    groups, inverse = np.unique(hit.T, axis=0, return_inverse=True)
    weights = np.bincount(inverse.ravel(), weights=np.where(sizes % 2 == 0, 1, -1), minlength=len(groups))
    keep = weights != 0
    return groups[keep].T.astype(np.int64), weights[keep].astype(np.float64)


def _allowed_columns(m: int, restrict: str) -> tuple[int, ...]:
    if restrict == "all":
        return tuple(range(1, num_candidates(m) + 1))
    if restrict in ("weak-flip", "weak"):
        return weak_flip_columns(m).indices
    raise ValueError(f"unknown restriction {restrict!r}")


def _exhaustive(m: int, n: int, ch: Channel, columns) -> tuple[TypeVector, int]:
    parts = len(columns)
    count = composition_count(n, parts)
    if count > MAX_COMPOSITIONS:
        raise ValueError(f"{count} compositions exceed the limit of {MAX_COMPOSITIONS}")
    patterns, weights = match_patterns(m, columns)
    pw = np.power(ch.delta, np.arange(n + 1, dtype=np.float64))
    best_val = math.inf
    near = []  # (value, composition) within tolerance of the running best
    for comp in iter_compositions(n, parts):
        vals = pw[n - comp @ patterns] @ weights
        cmin = vals.min()
        if cmin < best_val:
            best_val = cmin
            near = [(v, c) for v, c in near if v <= best_val + TIE_RTOL * abs(best_val)]
        sel = np.nonzero(vals <= best_val + TIE_RTOL * abs(best_val))[0]
        if len(sel):
            i = sel[_colex_argmin(comp[sel])]
            near.append((vals[i], comp[i].copy()))
    survivors = [c for v, c in near if v <= best_val + TIE_RTOL * abs(best_val)]
    winner = survivors[_colex_argmin(np.array(survivors))]
    counts = [0] * num_candidates(m)
    for j, c in zip(columns, winner):
        counts[j - 1] = int(c)
    return TypeVector(m, tuple(counts)), count


def _report(best, ch: Channel, iterations: int, seed=None, history=()) -> SearchReport:
    t = as_type(best)
    return SearchReport(
        best, error_probability(t, ch).p_error, distance_profile(t), iterations, seed, ch.delta, tuple(history)
    )


def exhaustive_search(m: int, n: int, ch, restrict: str = "all") -> SearchReport:
    """Global minimizer of P_e over all types on the allowed columns summing to n."""
    ch = _channel(ch)
    t, count = _exhaustive(m, n, ch, _allowed_columns(m, restrict))
    return _report(t, ch, count)


def exhaustive_linear_search(k: int, n: int, ch) -> SearchReport:
    ch = _channel(ch)
    t, count = _exhaustive(1 << k, n, ch, linear_columns(k))
    return _report(t, ch, count)


def all_values(m: int, n: int, ch, columns) -> np.ndarray:
    """P_e of every composition over `columns`, in lexicographic order."""
    ch = _channel(ch)
    parts = len(columns)
    if composition_count(n, parts) > MAX_COMPOSITIONS:
        raise ValueError("search space too large")
    patterns, weights = match_patterns(m, columns)
    pw = np.power(ch.delta, np.arange(n + 1, dtype=np.float64))
    return np.concatenate([pw[n - comp @ patterns] @ weights for comp in iter_compositions(n, parts)]) / m


# ---------------------------------------------------------------------------
# simulated annealing over a pool of candidate columns

import numba


@numba.njit(cache=True)
def _seed_numba(seed):
    np.random.seed(seed)


@numba.njit(cache=True)
def _energy(hist, pw):
    # Kahan summation of sum_d hist[d] * pw[d]
    s = 0.0
    c = 0.0
    for d in range(hist.shape[0]):
        y = hist[d] * pw[d] - c
        t = s + y
        c = (t - s) - y
        s = t
    return s


@numba.njit(cache=True)
def _shift(a, hist, sign, n, ptr, masks, cand, delta_a):
    for k in range(ptr[cand], ptr[cand + 1]):
        mk = masks[k]
        hist[n - a[mk]] -= sign[mk]
        a[mk] += delta_a
        hist[n - a[mk]] += sign[mk]


@numba.njit(cache=True)
def _anneal(seed, n, ptr, masks, sign, nmasks, limits, init_fill, pw,
            t_start, t_freeze, alpha, moves_per_temp, max_iterations, history):
    """One annealing run. Returns (best counts, best energy, iterations, history length)."""
    np.random.seed(seed)
    ncand = limits.shape[0]
    counts = np.zeros(ncand, dtype=np.int64)
    pos = np.empty(n, dtype=np.int64)
    if init_fill.shape[0] > 0:
        # limited pool: random n-subset of the multiset
        pool = init_fill.copy()
        np.random.shuffle(pool)
        for s in range(n):
            pos[s] = pool[s]
    else:
        for s in range(n):
            pos[s] = np.random.randint(0, ncand)
    for s in range(n):
        counts[pos[s]] += 1

    a = np.zeros(nmasks, dtype=np.int64)
    hist = np.zeros(n + 1, dtype=np.int64)
    for mk in range(nmasks):
        hist[n] += sign[mk]
    for s in range(n):
        _shift(a, hist, sign, n, ptr, masks, pos[s], 1)

    energy = _energy(hist, pw)
    best = counts.copy()
    best_e = energy
    nhist = 0
    history[nhist] = best_e
    nhist += 1

    temp = t_start
    it = 0
    while temp > t_freeze and it < max_iterations:
        accepted = 0
        for _ in range(moves_per_temp):
            if it >= max_iterations:
                break
            it += 1
            s = np.random.randint(0, n)
            old = pos[s]
            new = np.random.randint(0, ncand)
            if new == old or counts[new] >= limits[new]:
                continue
            before = hist.copy()
            _shift(a, hist, sign, n, ptr, masks, old, -1)
            _shift(a, hist, sign, n, ptr, masks, new, 1)
            de = 0.0
            for d in range(n + 1):
                if hist[d] != before[d]:
                    de += (hist[d] - before[d]) * pw[d]
            ok = de < 0.0
            if not ok and energy > 0.0:
                ok = np.random.random() < np.exp(-(de / energy) / temp)
            if ok:
                pos[s] = new
                counts[old] -= 1
                counts[new] += 1
                energy = _energy(hist, pw)
                accepted += 1
                if energy < best_e:
                    best_e = energy
                    best[:] = counts
                    if nhist < history.shape[0]:
                        history[nhist] = best_e
                        nhist += 1
            else:
                _shift(a, hist, sign, n, ptr, masks, new, -1)
                _shift(a, hist, sign, n, ptr, masks, old, 1)
        if accepted == 0:
            break
        temp *= alpha
    return best, best_e, it, nhist


def _match_lists(m: int, pool) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """CSR lists of the subsets (size >= 2) each pool column is constant on."""
    allm = np.arange(1 << m, dtype=np.int64)
    pc = mask_popcounts(m)
    sign = np.where(pc < 2, 0, np.where(pc % 2 == 0, 1, -1)).astype(np.int64)
    lists = []
    for c in pool:
        x = c & allm
        lists.append(allm[((x == 0) | (x == allm)) & (pc >= 2)])
    ptr = np.zeros(len(pool) + 1, dtype=np.int64)
    ptr[1:] = np.cumsum([len(l) for l in lists])
    return ptr, np.concatenate(lists), sign


def _restart_seeds(seed: int, restarts: int) -> list[int]:
    return [int(s.generate_state(1)[0]) for s in np.random.SeedSequence(seed).spawn(restarts)]


def anneal_pool(m: int, n: int, ch, cfg: SearchConfig, pool, limits=None) -> SearchReport:
    """Best-of-restarts annealing over multisets of n columns drawn from `pool`.

    With `limits`, column pool[i] may be used at most limits[i] times and
    the start is a random n-subset of that multiset.
    """
    ch = _channel(ch)
    pool = np.asarray(pool, dtype=np.int64)
    ptr, masks, sign = _match_lists(m, pool)
    if limits is None:
        lim = np.full(len(pool), n, dtype=np.int64)
        fill = np.zeros(0, dtype=np.int64)
    else:
        lim = np.asarray(limits, dtype=np.int64)
        if lim.sum() < n:
            raise ValueError("column pool is smaller than the blocklength")
        fill = np.repeat(np.arange(len(pool)), lim)
    pw = np.power(ch.delta, np.arange(n + 1, dtype=np.float64))
    moves = cfg.moves_per_temp or 200 * n
    best_counts, best_e, total, history = None, math.inf, 0, []
    budget = cfg.max_iterations
    for rs in _restart_seeds(cfg.seed, cfg.restarts):
        hist_buf = np.zeros(4096)
        counts, e, it, nh = _anneal(rs, n, ptr, masks, sign, 1 << m, lim, fill, pw,
                                    cfg.t_start, cfg.t_freeze, cfg.alpha, moves, budget, hist_buf)
        total += it
        history.extend(min(x, best_e) for x in hist_buf[:nh])
        if e < best_e:
            best_e, best_counts = e, counts
    entries = {}
    for c, k in zip(pool.tolist(), best_counts.tolist()):
        if k:
            entries[c] = entries.get(c, 0) + k
    t = TypeVector.from_dict(m, entries)
    # best-so-far trace across restarts
    trace = list(np.minimum.accumulate(np.array(history) / m)) if history else []
    return _report(t, ch, total, cfg.seed, trace)


def simulated_annealing(m: int, n: int, ch, cfg: SearchConfig | None = None) -> SearchReport:
    """Anneal over weak flip types: random start, single-column replacement moves."""
    cfg = cfg or SearchConfig()
    return anneal_pool(m, n, ch, cfg, weak_flip_columns(m).indices)


def deletion_annealing(code, n: int, ch, cfg: SearchConfig | None = None) -> SearchReport:
    """Keep n of the columns of `code` (shortening by deletion), annealed."""
    cfg = cfg or SearchConfig()
    t = as_type(code)
    sup = t.support()
    return anneal_pool(t.m, n, ch, cfg, list(sup), list(sup.values()))


def permuted_concatenation_search(k: int, kappa: int, ch, cfg: SearchConfig | None = None,
                                  trials: int | None = None) -> SearchReport:
    """Fair linear (2^k, 2^k - 1) block followed by kappa - 1 row-shuffled copies.

    The all-zero codeword stays in row 1 of every block, so every block
    keeps a zero top bit and the result is weak flip. The best of `trials`
    random draws (default cfg.max_iterations capped at 2000) is kept.
    """
    cfg = cfg or SearchConfig()
    ch = _channel(ch)
    if kappa < 2:
        raise ValueError("need at least two blocks")
    block = fair_linear(k, (1 << k) - 1)
    m = block.m
    trials = trials or min(cfg.max_iterations, 2000)
    rng = np.random.default_rng(cfg.seed)
    best, best_pe, history = None, math.inf, []
    for _ in range(trials):
        parts = [block.rows]
        for _ in range(kappa - 1):
            order = np.concatenate([[0], 1 + rng.permutation(m - 1)])
            parts.append(block.rows[order])
        cb = Codebook(m, block.n * kappa, np.hstack(parts))
        pe = error_probability(cb, ch).p_error
        if pe < best_pe:
            best, best_pe = cb, pe
        history.append(best_pe)
    return _report(best, ch, trials, cfg.seed, history)
