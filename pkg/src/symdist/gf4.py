"""Additive GF(4) view of symplectic GF(2) matrices.

A row ``(a, b)`` of length ``2n`` becomes ``a + alpha*b`` of length ``n``.  Each
symbol is a pair of bits, one per plane; we also use the integer code
``plane_a | plane_b << 1``::

    0 -> 0,  1 -> 1,  alpha -> 2,  alpha^2 = 1 + alpha -> 3

so symbol addition is XOR of codes.  Only row additions are ever needed,
never multiplication by alpha.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from .gf2 import BitMatrix, _half, _popcount

ZERO, ONE, ALPHA, ALPHA2 = 0, 1, 2, 3

_SYMBOL_NAMES = {"0": ZERO, "1": ONE, "a": ALPHA, "w": ALPHA, "A": ALPHA2, "w2": ALPHA2, "a2": ALPHA2}


class F4Matrix:
    """Matrix over GF(4) stored as two GF(2) planes of identical shape."""

    __slots__ = ("plane_a", "plane_b")

    def __init__(self, plane_a: BitMatrix, plane_b: BitMatrix):
        if plane_a.shape != plane_b.shape:
            raise ValueError(f"plane shapes differ: {plane_a.shape} vs {plane_b.shape}")
        self.plane_a = plane_a
        self.plane_b = plane_b

    @classmethod
    def from_codes(cls, codes: np.ndarray | Sequence[Sequence[int]]) -> F4Matrix:
        arr = np.asarray(codes, dtype=np.uint8)
        if arr.ndim != 2:
            raise ValueError("expected a 2-D array of symbol codes")
        if arr.size and arr.max() > 3:
            raise ValueError("symbol codes must lie in 0..3")
        return cls(BitMatrix.from_array(arr & 1), BitMatrix.from_array(arr >> 1))

    @classmethod
    def from_symbols(cls, rows: Sequence[Sequence[int | str]]) -> F4Matrix:
        """Build from entries ``0, 1, 'a'`` (alpha) and ``'a2'`` (alpha squared)."""
        return cls.from_codes([[_SYMBOL_NAMES[s] if isinstance(s, str) else s for s in r] for r in rows])

    @property
    def n_rows(self) -> int:
        return self.plane_a.n_rows

    @property
    def n(self) -> int:
        return self.plane_a.n_cols

    @property
    def shape(self) -> tuple[int, int]:
        return self.plane_a.shape

    def codes(self) -> np.ndarray:
        return self.plane_a.to_array() | (self.plane_b.to_array() << 1)

    def row_weights(self) -> np.ndarray:
        return np.bitwise_count(self.plane_a.words | self.plane_b.words).sum(axis=1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, F4Matrix):
            return NotImplemented
        return self.plane_a == other.plane_a and self.plane_b == other.plane_b

    def __repr__(self) -> str:
        names = {0: "0", 1: "1", 2: "a", 3: "a2"}
        body = "\n ".join(" ".join(names[int(c)] for c in r) for r in self.codes())
        return f"F4Matrix({self.n_rows}x{self.n}\n {body})"


def to_gf4(a: BitMatrix) -> F4Matrix:
    n = _half(a.n_cols)
    bits = a.to_array()
    return F4Matrix(BitMatrix.from_array(bits[:, :n]), BitMatrix.from_array(bits[:, n:]))


def to_gf2(m: F4Matrix) -> BitMatrix:
    return BitMatrix.from_array(np.concatenate([m.plane_a.to_array(), m.plane_b.to_array()], axis=1))


def gf4_weight(m: F4Matrix, row: int = 0) -> int:
    """Hamming weight over GF(4) of one row, i.e. ``popcount(plane_a | plane_b)``."""
    return _popcount(m.plane_a.words[row] | m.plane_b.words[row])


__all__ = ["ALPHA", "ALPHA2", "F4Matrix", "ONE", "ZERO", "gf4_weight", "to_gf2", "to_gf4"]
