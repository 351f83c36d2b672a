"""Column numbering, type vectors and codebooks.

A column of an M-row codebook is stored as an M-bit integer with row 1 in
the most significant position, so column index j = sum_m b_m 2^(M-m).
Candidate columns have a zero top bit and are not all-zero; they are
numbered 1..J with J = 2^(M-1) - 1.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

MAX_M = 20


class FamilyTag(enum.Enum):
    WEAK_FLIP = "weak-flip"
    FAIR_WEAK_FLIP = "fair-weak-flip"
    LINEAR = "linear"
    FAIR_LINEAR = "fair-linear"
    HADAMARD = "hadamard"
    GENERAL = "general"


def _check_m(m: int) -> None:
    if not 2 <= m <= MAX_M:
        raise ValueError(f"codeword count must be in [2, {MAX_M}], got {m}")


def num_candidates(m: int) -> int:
    """J = 2^(M-1) - 1."""
    return (1 << (m - 1)) - 1


def popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class Column:
    m: int
    bits: tuple[int, ...]

    def __post_init__(self):
        _check_m(self.m)
        if len(self.bits) != self.m or any(b not in (0, 1) for b in self.bits):
            raise ValueError(f"expected {self.m} binary entries, got {self.bits}")

    @property
    def value(self) -> int:
        v = 0
        for b in self.bits:
            v = (v << 1) | b
        return v

    @classmethod
    def from_value(cls, value: int, m: int) -> "Column":
        _check_m(m)
        if not 0 <= value < (1 << m):
            raise ValueError(f"column value {value} out of range for M={m}")
        return cls(m, tuple((value >> (m - 1 - i)) & 1 for i in range(m)))

    @property
    def weight(self) -> int:
        return sum(self.bits)


def column_from_index(j: int, m: int) -> Column:
    _check_m(m)
    if not 1 <= j <= num_candidates(m):
        raise ValueError(f"candidate index must be in [1, {num_candidates(m)}], got {j}")
    return Column.from_value(j, m)


def index_from_column(col: Column) -> int:
    if col.bits[0] == 1:
        raise ValueError("candidate columns have a leading zero; complement first")
    j = col.value
    if j == 0:
        raise ValueError("the all-zero column is not a candidate column")
    return j


@dataclass(frozen=True)
class TypeVector:
    """Multiplicity of every candidate column, plus retained all-zero columns.

    ``counts[j - 1]`` is t_j.
    """

    m: int
    counts: tuple[int, ...]
    zero_columns: int = 0

    def __post_init__(self):
        _check_m(self.m)
        counts = tuple(int(c) for c in self.counts)
        if len(counts) != num_candidates(self.m):
            raise ValueError(
                f"type vector for M={self.m} needs {num_candidates(self.m)} entries, got {len(counts)}"
            )
        if any(c < 0 for c in counts) or self.zero_columns < 0:
            raise ValueError("multiplicities must be nonnegative")
        object.__setattr__(self, "counts", counts)

    @property
    def n(self) -> int:
        return self.zero_columns + sum(self.counts)

    @property
    def J(self) -> int:
        return num_candidates(self.m)

    def __getitem__(self, j: int) -> int:
        """t_j with the 1-based candidate numbering."""
        if not 1 <= j <= self.J:
            raise IndexError(j)
        return self.counts[j - 1]

    def support(self) -> dict[int, int]:
        return {j + 1: c for j, c in enumerate(self.counts) if c}

    @classmethod
    def from_dict(cls, m: int, entries: dict[int, int], zero_columns: int = 0) -> "TypeVector":
        counts = [0] * num_candidates(m)
        for j, c in entries.items():
            if not 1 <= j <= len(counts):
                raise ValueError(f"candidate index {j} out of range for M={m}")
            counts[j - 1] += int(c)
        return cls(m, tuple(counts), zero_columns)

    def with_added(self, j: int, count: int = 1) -> "TypeVector":
        counts = list(self.counts)
        counts[j - 1] += count
        return TypeVector(self.m, tuple(counts), self.zero_columns)

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "type": list(self.counts)}


@dataclass(frozen=True)
class Codebook:
    """M x n binary matrix, rows are codewords."""

    m: int
    n: int
    rows: np.ndarray = field(repr=False)

    def __post_init__(self):
        _check_m(self.m)
        rows = np.asarray(self.rows, dtype=np.uint8)
        if rows.shape != (self.m, self.n):
            raise ValueError(f"expected a {self.m}x{self.n} matrix, got shape {rows.shape}")
        if rows.size and rows.max() > 1:
            raise ValueError("codebook entries must be 0 or 1")
        rows = rows.copy()
        rows.flags.writeable = False
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, rows) -> "Codebook":
        arr = np.array([[int(ch) for ch in r] if isinstance(r, str) else list(r) for r in rows], dtype=np.uint8)
        if arr.ndim != 2:
            raise ValueError("rows must all have the same length")
        return cls(arr.shape[0], arr.shape[1], arr)

    def column_values(self) -> list[int]:
        weights = 1 << np.arange(self.m - 1, -1, -1, dtype=np.int64)
        return [int(v) for v in weights @ self.rows.astype(np.int64)]

    def hstack(self, other: "Codebook") -> "Codebook":
        if other.m != self.m:
            raise ValueError("cannot concatenate codebooks with different M")
        return Codebook(self.m, self.n + other.n, np.hstack([self.rows, other.rows]))

    def permute_rows(self, order) -> "Codebook":
        return Codebook(self.m, self.n, self.rows[list(order)])

    def delete_row(self, i: int) -> "Codebook":
        """Drop codeword i (1-based)."""
        return Codebook(self.m - 1, self.n, np.delete(self.rows, i - 1, axis=0))

    def to_text(self) -> str:
        return "".join("".join(str(int(b)) for b in row) + "\n" for row in self.rows)

    @classmethod
    def from_text(cls, text: str) -> "Codebook":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or any(set(ln) - {"0", "1"} for ln in lines):
            raise ValueError("codebook text must contain lines of '0'/'1' only")
        return cls.from_rows(lines)

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "rows": ["".join(str(int(b)) for b in r) for r in self.rows]}

    def __eq__(self, other):
        return isinstance(other, Codebook) and self.m == other.m and np.array_equal(self.rows, other.rows)

    def __hash__(self):
        return hash((self.m, self.rows.tobytes()))


def canonicalize(cb: Codebook) -> TypeVector:
    """Type vector of a codebook, up to column order and column complements."""
    full = (1 << cb.m) - 1
    top = 1 << (cb.m - 1)
    counts = [0] * num_candidates(cb.m)
    zeros = 0
    for v in cb.column_values():
        if v & top:
            v ^= full
        if v == 0:
            zeros += 1
        else:
            counts[v - 1] += 1
    return TypeVector(cb.m, tuple(counts), zeros)


def codebook_from_type(t: TypeVector) -> Codebook:
    """Columns in ascending candidate index, then the all-zero columns."""
    cols = []
    for j, c in enumerate(t.counts, start=1):
        cols.extend([j] * c)
    cols.extend([0] * t.zero_columns)
    shifts = np.arange(t.m - 1, -1, -1)
    rows = (np.asarray(cols, dtype=np.int64)[None, :] >> shifts[:, None]) & 1
    return Codebook(t.m, len(cols), rows.reshape(t.m, len(cols)))


def weak_flip_weights(m: int) -> tuple[int, int]:
    return m // 2, (m + 1) // 2


def is_weak_flip_index(j: int, m: int) -> bool:
    lo, hi = weak_flip_weights(m)
    return popcount(j) in (lo, hi)


def is_weak_flip(t: TypeVector) -> bool:
    if t.zero_columns:
        return False
    return all(is_weak_flip_index(j, t.m) for j in t.support())


def family_of(t: TypeVector) -> FamilyTag:
    """Coarse advisory tag; only weak-flip membership is decided here."""
    if not is_weak_flip(t):
        return FamilyTag.GENERAL
    from .constructions import weak_flip_columns

    weak = weak_flip_columns(t.m).indices
    vals = {t[j] for j in weak}
    if len(vals) == 1 and t.n > 0:
        return FamilyTag.FAIR_WEAK_FLIP
    return FamilyTag.WEAK_FLIP


def translate(cb: Codebook, m: int) -> Codebook:
    """XOR every codeword with codeword m (1-based)."""
    if not 1 <= m <= cb.m:
        raise ValueError(f"message index must be in [1, {cb.m}], got {m}")
    return Codebook(cb.m, cb.n, cb.rows ^ cb.rows[m - 1])


def type_from_json(obj: dict):
    """Decode the code JSON object into a TypeVector or a Codebook."""
    m = int(obj["m"])
    if "type" in obj:
        counts = [int(c) for c in obj["type"]]
        n = int(obj.get("n", sum(counts)))
        if n < sum(counts):
            raise ValueError(f"declared n={n} is smaller than the type sum {sum(counts)}")
        return TypeVector(m, tuple(counts), n - sum(counts))
    if "rows" in obj:
        cb = Codebook.from_rows(obj["rows"])
        if cb.m != m:
            raise ValueError(f"declared m={m} but {cb.m} rows given")
        if "n" in obj and int(obj["n"]) != cb.n:
            raise ValueError(f"declared n={obj['n']} but rows have length {cb.n}")
        return cb
    raise ValueError("code JSON needs either 'type' or 'rows'")


def as_type(code) -> TypeVector:
    return code if isinstance(code, TypeVector) else canonicalize(code)
