from __future__ import annotations

import itertools
from collections import Counter

import numpy as np
import pytest

from symdist import kernels
from symdist.distance import StabilizerInstance
from symdist.gf4 import F4Matrix

BACKENDS = kernels.available_backends()

# 3x4 normalizer from the Saved_1 worked example
EXAMPLE_A = ["1001", "0110", "0011"]
# additive GF(4) worked example (3 rows, length 4); 'a' = alpha, 'a2' = alpha^2
EXAMPLE_A4 = [[1, 1, 1, 1], ["a", 0, "a", "a"], [0, "a2", "a2", "a2"]]


@pytest.fixture
def example_inst() -> StabilizerInstance:
    return StabilizerInstance.from_strings(EXAMPLE_A)


@pytest.fixture
def example_a4() -> F4Matrix:
    return F4Matrix.from_symbols(EXAMPLE_A4)


@pytest.fixture(params=BACKENDS)
def backend(request) -> str:
    return request.param


# --- independent oracles: plain Python ints / lists, no package internals ---


def rows_as_ints(bits: np.ndarray) -> list[int]:
    return [int("".join(map(str, r[::-1])), 2) if len(r) else 0 for r in bits]


def swt(x: int, n: int) -> int:
    """Symplectic weight of an int with a in bits 0..n-1 and b in bits n..2n-1."""
    return bin((x | (x >> n)) & ((1 << n) - 1)).count("1")


def sprod(x: int, y: int, n: int) -> int:
    mask = (1 << n) - 1
    return bin(((x & mask) & (y >> n)) ^ ((x >> n) & (y & mask))).count("1") & 1


def all_combinations(rows: list[int]):
    """Every F2 combination of ``rows`` (including zero), by subset."""
    for r in range(len(rows) + 1):
        for subset in itertools.combinations(rows, r):
            acc = 0
            for x in subset:
                acc ^= x
            yield acc


def oracle_distance(bits: np.ndarray, use_filter: bool = True) -> int:
    """Minimum symplectic weight over nonzero combinations outside the stabilizer."""
    n = bits.shape[1] // 2
    rows = rows_as_ints(bits)
    k = len(rows) - n
    best = None
    for c in all_combinations(rows):
        if c == 0:
            continue
        if use_filter and k > 0 and not any(sprod(c, r, n) for r in rows):
            continue
        w = swt(c, n)
        best = w if best is None else min(best, w)
    return best


def weight_multiset(bits: np.ndarray) -> Counter:
    n = bits.shape[1] // 2
    return Counter(swt(c, n) for c in all_combinations(rows_as_ints(bits)))
