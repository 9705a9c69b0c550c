"""Bit-packed vectors and matrices over GF(2), with the symplectic primitives.

Bits are stored little-endian in 64-bit words: bit ``i`` lives in word
``i // 64`` at position ``i % 64``.  A symplectic vector of length ``2n`` keeps
its ``a`` half in bits ``0..n-1`` and its ``b`` half in bits ``n..2n-1``.
Padding bits past ``length`` are always zero.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

import numpy as np

WORD_BITS = 64
_ONE = np.uint64(1)


class RankError(ValueError):
    """Raised when a matrix that must have full row rank does not."""


def n_words(length: int) -> int:
    return (length + WORD_BITS - 1) // WORD_BITS


def pack_bits(bits: np.ndarray) -> np.ndarray:
    """Pack a 0/1 array of shape ``(..., L)`` into uint64 words ``(..., ceil(L/64))``."""
    bits = np.asarray(bits, dtype=np.uint8) & 1
    length = bits.shape[-1]
    width = n_words(length) * WORD_BITS
    padded = np.zeros(bits.shape[:-1] + (width,), dtype=np.uint8)
    padded[..., :length] = bits
    as_bytes = np.packbits(padded, axis=-1, bitorder="little")
    return np.ascontiguousarray(as_bytes).view("<u8").astype(np.uint64, copy=False)


def unpack_bits(words: np.ndarray, length: int) -> np.ndarray:
    words = np.ascontiguousarray(words, dtype="<u8")
    as_bytes = words.view(np.uint8)
    return np.unpackbits(as_bytes, axis=-1, bitorder="little")[..., :length]


def _popcount(words: np.ndarray) -> int:
    return int(np.bitwise_count(words).sum())


class BitVector:
    """Fixed-length vector over GF(2)."""

    __slots__ = ("words", "_length")

    def __init__(self, words: np.ndarray, length: int):
        words = np.asarray(words, dtype=np.uint64)
        if words.shape != (n_words(length),):
            raise ValueError(f"expected {n_words(length)} words for length {length}, got {words.shape}")
        self.words = words
        self._length = length
        self._clear_padding()

    @classmethod
    def zeros(cls, length: int) -> BitVector:
        return cls(np.zeros(n_words(length), dtype=np.uint64), length)

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> BitVector:
        arr = np.fromiter((int(b) for b in bits), dtype=np.uint8)
        if arr.size and arr.max() > 1:
            raise ValueError("bits must be 0 or 1")
        return cls(pack_bits(arr), arr.size)

    @classmethod
    def from_string(cls, text: str) -> BitVector:
        return cls.from_bits(int(ch) for ch in text if ch in "01")

    @property
    def length(self) -> int:
        return self._length

    def __len__(self) -> int:
        return self._length

    def _clear_padding(self) -> None:
        extra = self._length % WORD_BITS
        if extra:
            self.words[-1] &= np.uint64((1 << extra) - 1)

    def to_bits(self) -> np.ndarray:
        return unpack_bits(self.words, self._length)

    def __getitem__(self, i: int) -> int:
        if not -self._length <= i < self._length:
            raise IndexError(i)
        i %= self._length
        return int((self.words[i // WORD_BITS] >> np.uint64(i % WORD_BITS)) & _ONE)

    def copy(self) -> BitVector:
        return BitVector(self.words.copy(), self._length)

    def __xor__(self, other: BitVector) -> BitVector:
        _check_same_length(self, other)
        return BitVector(self.words ^ other.words, self._length)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitVector):
            return NotImplemented
        return self._length == other._length and bool(np.array_equal(self.words, other.words))

    def __hash__(self) -> int:
        return hash((self._length, self.words.tobytes()))

    def __bool__(self) -> bool:
        return bool(self.words.any())

    def __repr__(self) -> str:
        return f"BitVector('{''.join(map(str, self.to_bits()))}')"


class SymplecticLayout:
    """The ``(a, b)`` halves of a length-``2n`` vector as separate word arrays."""

    __slots__ = ("n", "a_words", "b_words")

    def __init__(self, n: int, a_words: np.ndarray, b_words: np.ndarray):
        self.n = n
        self.a_words = a_words
        self.b_words = b_words

    @classmethod
    def from_vector(cls, v: BitVector) -> SymplecticLayout:
        n = _half(v.length)
        bits = v.to_bits()
        return cls(n, pack_bits(bits[:n]), pack_bits(bits[n:]))

    def to_vector(self) -> BitVector:
        bits = np.concatenate([unpack_bits(self.a_words, self.n), unpack_bits(self.b_words, self.n)])
        return BitVector(pack_bits(bits), 2 * self.n)


class BitMatrix:
    """Dense bit-packed matrix over GF(2); one row of words per matrix row."""

    __slots__ = ("words", "n_cols")

    def __init__(self, words: np.ndarray, n_cols: int):
        words = np.asarray(words, dtype=np.uint64)
        if words.ndim != 2 or words.shape[1] != n_words(n_cols):
            raise ValueError(f"bad word array shape {words.shape} for {n_cols} columns")
        self.words = words
        self.n_cols = n_cols
        extra = n_cols % WORD_BITS
        if extra and words.size:
            self.words[:, -1] &= np.uint64((1 << extra) - 1)

    @classmethod
    def from_array(cls, bits: np.ndarray | Sequence[Sequence[int]]) -> BitMatrix:
        arr = np.asarray(bits, dtype=np.uint8)
        if arr.ndim != 2:
            raise ValueError("expected a 2-D array")
        if arr.size and arr.max() > 1:
            raise ValueError("entries must be 0 or 1")
        return cls(pack_bits(arr), arr.shape[1])

    @classmethod
    def from_strings(cls, rows: Sequence[str]) -> BitMatrix:
        return cls.from_array([[int(ch) for ch in r if ch in "01"] for r in rows])

    @classmethod
    def from_rows(cls, rows: Sequence[BitVector], n_cols: int | None = None) -> BitMatrix:
        if not rows:
            if n_cols is None:
                raise ValueError("n_cols required for an empty matrix")
            return cls(np.zeros((0, n_words(n_cols)), dtype=np.uint64), n_cols)
        length = rows[0].length
        if any(r.length != length for r in rows):
            raise ValueError("rows differ in length")
        return cls(np.stack([r.words for r in rows]), length)

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> BitMatrix:
        return cls(np.zeros((n_rows, n_words(n_cols)), dtype=np.uint64), n_cols)

    @property
    def n_rows(self) -> int:
        return self.words.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_rows, self.n_cols

    def __len__(self) -> int:
        return self.n_rows

    def row(self, i: int) -> BitVector:
        return BitVector(self.words[i].copy(), self.n_cols)

    def rows(self) -> list[BitVector]:
        return [self.row(i) for i in range(self.n_rows)]

    def to_array(self) -> np.ndarray:
        return unpack_bits(self.words, self.n_cols)

    def copy(self) -> BitMatrix:
        return BitMatrix(self.words.copy(), self.n_cols)

    def vstack(self, other: BitMatrix) -> BitMatrix:
        if other.n_cols != self.n_cols:
            raise ValueError("column counts differ")
        return BitMatrix(np.vstack([self.words, other.words]), self.n_cols)

    def rank(self) -> int:
        return rank(self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.n_cols == other.n_cols and bool(np.array_equal(self.words, other.words))

    def __repr__(self) -> str:
        body = "\n ".join("".join(map(str, r)) for r in self.to_array())
        return f"BitMatrix({self.n_rows}x{self.n_cols}\n {body})"


def _check_same_length(u: BitVector, v: BitVector) -> None:
    if u.length != v.length:
        raise ValueError(f"length mismatch: {u.length} vs {v.length}")


def _half(length: int) -> int:
    if length % 2:
        raise ValueError(f"symplectic vectors need even length, got {length}")
    return length // 2


def hamming_weight(v: BitVector) -> int:
    return _popcount(v.words)


def symplectic_weight(v: BitVector | SymplecticLayout) -> int:
    """Number of coordinate pairs ``i`` with ``(a_i, b_i) != (0, 0)``."""
    if isinstance(v, SymplecticLayout):
        return _popcount(v.a_words | v.b_words)
    lay = SymplecticLayout.from_vector(v)
    return _popcount(lay.a_words | lay.b_words)


def symplectic_inner_product(u: BitVector, v: BitVector) -> int:
    """``a.d + b.c`` over GF(2) for ``u = (a, b)``, ``v = (c, d)``."""
    _check_same_length(u, v)
    lu, lv = SymplecticLayout.from_vector(u), SymplecticLayout.from_vector(v)
    return _popcount((lu.a_words & lv.b_words) ^ (lu.b_words & lv.a_words)) & 1


def xor_accumulate(acc: BitVector, row: BitVector) -> BitVector:
    """In-place ``acc ^= row``; returns ``acc``."""
    _check_same_length(acc, row)
    np.bitwise_xor(acc.words, row.words, out=acc.words)
    return acc


# --- dense helpers (0/1 uint8 arrays); elimination works bitwise on rows ---


def rref(bits: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(2). Returns (matrix, pivot columns)."""
    m = np.array(bits, dtype=np.uint8) & 1
    pivots: list[int] = []
    r = 0
    n_rows, n_cols = m.shape
    for c in range(n_cols):
        if r == n_rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            m[[r, p]] = m[[p, r]]
        hits = np.flatnonzero(m[:, c])
        hits = hits[hits != r]
        m[hits] ^= m[r]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(m: BitMatrix | np.ndarray) -> int:
    bits = m.to_array() if isinstance(m, BitMatrix) else m
    if bits.shape[0] == 0:
        return 0
    return len(rref(bits)[1])


def nullspace(bits: np.ndarray) -> np.ndarray:
    """Basis (as rows) of ``{x : bits @ x = 0}`` over GF(2)."""
    bits = np.asarray(bits, dtype=np.uint8)
    n_cols = bits.shape[1]
    red, pivots = rref(bits) if bits.shape[0] else (np.zeros((0, n_cols), np.uint8), [])
    free = [c for c in range(n_cols) if c not in set(pivots)]
    basis = np.zeros((len(free), n_cols), dtype=np.uint8)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, p in enumerate(pivots):
            basis[i, p] = red[r, f]
    return basis


def symplectic_swap(bits: np.ndarray) -> np.ndarray:
    """Map each ``(a, b)`` row to ``(b, a)``; turns the symplectic form into a dot product."""
    n = _half(bits.shape[-1])
    return np.concatenate([bits[..., n:], bits[..., :n]], axis=-1)


def symplectic_complement(m: BitMatrix) -> BitMatrix:
    """All vectors with zero symplectic product against every row of ``m``."""
    _half(m.n_cols)
    bits = m.to_array()
    if bits.shape[0] == 0:
        return BitMatrix.from_array(np.eye(m.n_cols, dtype=np.uint8))
    return BitMatrix.from_array(nullspace(symplectic_swap(bits)))


def symplectic_dual_basis(a: BitMatrix) -> BitMatrix:
    """Basis of ``C = (rowspace A)^{perp_s}`` for a normalizer matrix ``A``.

    For an ``(n+k) x 2n`` input of full rank the result has ``n - k`` rows.
    """
    if rank(a) != a.n_rows:
        raise RankError(f"normalizer matrix has rank {rank(a)} < {a.n_rows} rows")
    return symplectic_complement(a)


def in_rowspace(m: BitMatrix, v: BitVector) -> bool:
    if v.length != m.n_cols:
        raise ValueError(f"length mismatch: {v.length} vs {m.n_cols}")
    if not v:
        return True
    if m.n_rows == 0:
        return False
    red, pivots = rref(m.to_array())
    x = v.to_bits().copy()
    for r, p in enumerate(pivots):
        if x[p]:
            x ^= red[r]
    return not x.any()


def random_matrix(rng: np.random.Generator, n_rows: int, n_cols: int) -> BitMatrix:
    return BitMatrix.from_array(rng.integers(0, 2, size=(n_rows, n_cols), dtype=np.uint8))


__all__ = [
    "WORD_BITS",
    "BitMatrix",
    "BitVector",
    "RankError",
    "SymplecticLayout",
    "hamming_weight",
    "in_rowspace",
    "n_words",
    "nullspace",
    "pack_bits",
    "random_matrix",
    "rank",
    "rref",
    "symplectic_complement",
    "symplectic_dual_basis",
    "symplectic_inner_product",
    "symplectic_swap",
    "symplectic_weight",
    "unpack_bits",
    "xor_accumulate",
]
