"""Linear algebra over GF(2) and binomial coefficient parity.

Two representations are used throughout the package:

* small vectors are plain Python ints, bit ``j`` holding coordinate ``j``;
* large matrices are :class:`BitMatrix`, rows packed into 64-bit words.
"""

from __future__ import annotations

import enum
from typing import Iterable, Iterator, Sequence

import numpy as np

WORD = 64


def binom_parity(a: int, b: int) -> int:
    """Return ``C(a, b) mod 2``; ``a`` may be negative.

    Uses Lucas: for ``a >= 0`` the binomial is odd iff the bits of ``b`` are a
    subset of those of ``a``. Negative tops use ``C(-m, b) = C(m+b-1, b)`` mod 2.
    """
    if b < 0:
        return 0
    if a < 0:
        a = -a + b - 1
    if b > a:
        return 0
    return int(b & ~a == 0)


def is_two_power(k: int) -> bool:
    return k > 0 and k & (k - 1) == 0


def iter_bits(v: int) -> Iterator[int]:
    """Indices of the set bits of ``v``, ascending."""
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


def clmul(p: int, q: int) -> int:
    """Carry-less product of two bit vectors (polynomial product over GF(2))."""
    if p.bit_count() > q.bit_count():
        p, q = q, p
    out = 0
    while p:
        low = p & -p
        out ^= q << (low.bit_length() - 1)
        p ^= low
    return out


# -- int-row elimination (small matrices) ------------------------------------


def echelon(rows: Iterable[int]) -> dict[int, int]:
    """Fully reduced echelon form of int rows, pivot = highest set bit.

    Returns ``{pivot: row}``; no row contains another row's pivot.
    """
    piv: dict[int, int] = {}
    for r in rows:
        for p, pr in piv.items():
            if r >> p & 1:
                r ^= pr
        if not r:
            continue
        p = r.bit_length() - 1
        for q in piv:
            if piv[q] >> p & 1:
                piv[q] ^= r
        piv[p] = r
    return piv


def int_rank(rows: Iterable[int]) -> int:
    return len(echelon(rows))


def solve(columns: Sequence[int], target: int) -> int | None:
    """Find ``c`` with ``XOR_{i in c} columns[i] == target``.

    The answer is a bit mask over column indices, or None if ``target`` is not
    in the span.
    """
    ncols = len(columns)
    # augment each column with its own index tag above the data bits
    shift = max((c.bit_length() for c in columns), default=0)
    shift = max(shift, target.bit_length())
    piv: dict[int, int] = {}
    for i, c in enumerate(columns):
        r = c | (1 << (shift + i))
        for p in sorted(piv, reverse=True):
            if r >> p & 1:
                r ^= piv[p]
        data = r & ((1 << shift) - 1)
        if data:
            piv[data.bit_length() - 1] = r
    t = target
    combo = 0
    for p in sorted(piv, reverse=True):
        if t >> p & 1:
            t ^= piv[p] & ((1 << shift) - 1)
            combo ^= piv[p] >> shift
    if t:
        return None
    return combo & ((1 << ncols) - 1)


# -- packed matrices ----------------------------------------------------------


class BitMatrix:
    """Dense GF(2) matrix with rows packed little-endian into uint64 words."""

    __slots__ = ("rows", "cols", "words")

    def __init__(self, rows: int, cols: int, words: np.ndarray | None = None):
        self.rows = rows
        self.cols = cols
        nw = max(1, -(-cols // WORD))
        if words is None:
            words = np.zeros((rows, nw), dtype=np.uint64)
        elif words.shape != (rows, nw):
            raise ValueError(f"word array shape {words.shape} != {(rows, nw)}")
        self.words = words

    @classmethod
    def from_dense(cls, data) -> "BitMatrix":
        arr = np.asarray(data, dtype=np.uint8) & 1
        if arr.ndim != 2:
            raise ValueError("expected a 2-d array")
        rows, cols = arr.shape
        nw = max(1, -(-cols // WORD))
        padded = np.zeros((rows, nw * WORD), dtype=np.uint8)
        padded[:, :cols] = arr
        packed = np.packbits(padded, axis=1, bitorder="little")
        words = packed.view("<u8").astype(np.uint64).reshape(rows, nw)
        return cls(rows, cols, words)

    @classmethod
    def from_int_rows(cls, rows: Sequence[int], cols: int) -> "BitMatrix":
        m = cls(len(rows), cols)
        for i, r in enumerate(rows):
            for w in range(m.words.shape[1]):
                m.words[i, w] = (r >> (WORD * w)) & 0xFFFFFFFFFFFFFFFF
        m._clear_tail()
        return m

    @classmethod
    def identity(cls, m: int) -> "BitMatrix":
        return cls.from_dense(np.eye(m, dtype=np.uint8))

    def _clear_tail(self) -> None:
        extra = self.words.shape[1] * WORD - self.cols
        if extra and self.rows:
            self.words[:, -1] &= np.uint64((1 << (WORD - extra)) - 1)

    def to_dense(self) -> np.ndarray:
        as_bytes = self.words.astype("<u8").view(np.uint8).reshape(self.rows, -1)
        bits = np.unpackbits(as_bytes, axis=1, bitorder="little")
        return bits[:, : self.cols].copy()

    def to_int_rows(self) -> list[int]:
        out = []
        for row in self.words:
            v = 0
            for w in reversed(row.tolist()):
                v = (v << WORD) | int(w)
            out.append(v)
        return out

    def copy(self) -> "BitMatrix":
        return BitMatrix(self.rows, self.cols, self.words.copy())

    def transpose(self) -> "BitMatrix":
        return BitMatrix.from_dense(self.to_dense().T)

    def get(self, i: int, j: int) -> int:
        return int(self.words[i, j // WORD] >> np.uint64(j % WORD) & np.uint64(1))

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and bool(
            np.array_equal(self.words, other.words)
        )

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols})"

    def _column(self, j: int, start: int = 0) -> np.ndarray:
        w = self.words[start:, j // WORD]
        return (w >> np.uint64(j % WORD)) & np.uint64(1)


def row_reduce(m: BitMatrix) -> tuple[int, list[int], BitMatrix]:
    """Reduced row-echelon form. Returns ``(rank, pivot_columns, rref)``."""
    a = m.copy()
    w = a.words
    r = 0
    pivots = []
    for j in range(a.cols):
        if r == a.rows:
            break
        hits = np.flatnonzero(a._column(j, r))
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            w[[r, p]] = w[[p, r]]
        mask = a._column(j).astype(bool)
        mask[r] = False
        w[mask] ^= w[r]
        pivots.append(j)
        r += 1
    return r, pivots, a


def rank(m: BitMatrix) -> int:
    return row_reduce(m)[0]


def det(m: BitMatrix) -> int:
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    return int(rank(m) == m.rows)


def leading_minors(m: BitMatrix) -> np.ndarray:
    """Determinants of all leading principal submatrices of a square matrix.

    Elimination without row exchanges: while every leading minor is 1, the
    diagonal entries met are the pivots. The first zero pivot at step ``k`` means
    the ``k+1`` minor vanishes; later entries are then computed separately.
    """
    if m.rows != m.cols:
        raise ValueError("leading minors of a non-square matrix")
    size = m.rows
    out = np.zeros(size, dtype=np.uint8)
    a = m.copy()
    w = a.words
    for k in range(size):
        col = a._column(k, k)
        if not col[0]:
            # rank deficiency at k: fall back to direct elimination for the rest
            for s in range(k, size):
                sub = BitMatrix.from_dense(m.to_dense()[: s + 1, : s + 1])
                out[s] = det(sub)
            return out
        out[k] = 1
        below = np.flatnonzero(col[1:]) + k + 1
        if below.size:
            w[below] ^= w[k]
    return out


def power_sum_matrix(m: int) -> BitMatrix:
    """The m x m matrix with entry 1 where ``i + j`` (1-based) is a power of 2."""
    if m < 1:
        raise ValueError("m must be at least 1")
    idx = np.arange(1, m + 1)
    s = idx[:, None] + idx[None, :]
    return BitMatrix.from_dense((s & (s - 1)) == 0)


def matlem_det(m: int) -> int:
    return det(power_sum_matrix(m))


class Outcome(enum.Enum):
    HOLDS = "holds"
    VACUOUS = "vacuous"
    FAILS = "fails"

    def __bool__(self) -> bool:
        return self is not Outcome.FAILS


def comblem_range(d: int) -> range:
    """Values of j for which ``C(d+j, d)`` is claimed even, given ``2^r <= d < 2^(r+1)``."""
    if d < 1:
        raise ValueError("d must be at least 1")
    r = d.bit_length() - 1
    return range(2 ** (r + 1) - d, d)


def comblem_holds(d: int, j: int) -> Outcome:
    if j not in comblem_range(d):
        return Outcome.VACUOUS
    return Outcome.FAILS if binom_parity(d + j, d) else Outcome.HOLDS


def comblem_sweep(d_max: int) -> list[tuple[int, int]]:
    """All counterexamples ``(d, j)`` to the even-binomial range claim, d <= d_max."""
    bad = []
    for d in range(1, d_max + 1):
        js = np.arange(comblem_range(d).start, d, dtype=np.int64)
        if js.size == 0:
            continue
        odd = ((js + d) & d) == d
        bad.extend((d, int(j)) for j in js[odd])
    return bad
