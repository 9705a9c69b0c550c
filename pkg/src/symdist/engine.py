"""Modified Brouwer-Zimmermann enumeration.

Generation ``g`` visits every sum of ``g`` rows taken from ``g`` distinct
packages of each prepared matrix.  After a generation completes on every
matrix the lower bound is raised; the search stops once it meets the best
admissible weight found, or once some matrix has been exhausted.

Workers share only the upper bound.  A worker may prune against a stale
value, which costs time but never changes the result: the final upper bound
of each generation is the minimum over every candidate that passed the
filter, so ``(distance, generation)`` does not depend on the worker count.
"""

from __future__ import annotations

import itertools
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .gf2 import BitMatrix, BitVector, n_words, pack_bits, symplectic_inner_product, unpack_bits
from .kernels import kernel_class
from .prep import HAMMING, SYMPLECTIC, PackagedGamma


class NoAdmissibleCodeword(RuntimeError):
    """Exhaustive enumeration found no codeword outside the stabilizer."""


@dataclass
class BoundsState:
    lower: int
    upper: int
    sentinel: int
    best: BitVector | None = None
    generation: int = 0
    candidates: int = 0
    complete: bool = False
    trace: list[tuple[int, int, int]] = field(default_factory=list)

    def offer(self, weight: int, codeword: BitVector) -> None:
        if weight < self.upper:
            self.upper = weight
            self.best = codeword


@dataclass
class AdmissibilityFilter:
    """Accepts codewords of the normalizer code that are not in the stabilizer.

    A codeword generated by the normalizer rows lies in the stabilizer exactly
    when it is symplectically orthogonal to every normalizer row.
    """

    normalizer: BitMatrix
    k: int
    enabled: bool = True

    @property
    def active(self) -> bool:
        return self.enabled and self.k > 0

    def admissible(self, c: BitVector) -> bool:
        if not self.active:
            return True
        width = self.normalizer.n_cols
        if c.length != width:
            c = BitVector.from_bits(c.to_bits()[:width])
        return any(symplectic_inner_product(c, r) for r in self.normalizer.rows())


def lower_bound(g: int, gammas: list[PackagedGamma]) -> int:
    """Lower bound on every codeword not yet seen after generation ``g``.

    Each matrix contributes on its own pivot columns (disjoint across
    matrices): an unseen codeword uses at least ``g + 1`` packages of it, of
    which at most ``n_p - n_pp`` have no bounding pivot there.  For a single
    matrix this is ``g + 1``; for the principal-column pair it is
    ``g + 1 + max(0, g + 1 + n_pp - n_p)``; for information sets the
    non-bounding packages are the rank deficit.
    """
    return sum(max(0, g + 1 - (gm.n_p - gm.n_pp)) for gm in gammas)


def _sentinel(gamma: PackagedGamma) -> int:
    if gamma.mode == SYMPLECTIC:
        return gamma.matrix.n_cols // 2 + 1
    return gamma.matrix.n_cols + 1


def _n_blocks(gamma: PackagedGamma) -> int:
    return 2 if gamma.mode == SYMPLECTIC else 3


def _to_blocks(bits: np.ndarray, blocks: int) -> np.ndarray:
    n = bits.shape[1] // blocks
    return np.concatenate([pack_bits(bits[:, i * n : (i + 1) * n]) for i in range(blocks)], axis=1)


class _GammaRunner:
    """A prepared matrix bound to a kernel backend."""

    def __init__(self, gamma: PackagedGamma, filt: AdmissibilityFilter | None, backend: str | None):
        self.gamma = gamma
        blocks = _n_blocks(gamma)
        bits = gamma.matrix.to_array()
        if bits.shape[1] % blocks:
            raise ValueError(f"{gamma.mode} matrices need a column count divisible by {blocks}")
        self.n = bits.shape[1] // blocks
        self.blocks = blocks
        self.nw = n_words(self.n)
        members = np.zeros((max(gamma.n_p, 1), 3), dtype=np.int32)
        for i, p in enumerate(gamma.packages):
            members[i, : p.size] = p.members
        sizes = np.array([p.size for p in gamma.packages], dtype=np.int32)
        use_filter = filt is not None and filt.active
        if use_filter:
            frame = filt.normalizer.to_array()
            if frame.shape[1] != 2 * self.n:
                raise ValueError("filter normalizer is not in the frame of the prepared matrix")
            swapped = np.concatenate([pack_bits(frame[:, self.n :]), pack_bits(frame[:, : self.n])], axis=1)
        else:
            swapped = np.zeros((0, 2 * self.nw), dtype=np.uint64)
        self.kernel = kernel_class(backend)(
            _to_blocks(bits, blocks),
            members,
            sizes,
            self.nw,
            0 if gamma.mode == SYMPLECTIC else 1,
            swapped,
            use_filter,
        )

    def decode(self, words: np.ndarray) -> BitVector:
        blocks = words.reshape(self.blocks, self.nw)
        return BitVector.from_bits(np.concatenate([unpack_bits(b, self.n) for b in blocks]))

    def tasks(self, g: int, workers: int):
        if workers <= 1 or g == 1:
            return [()]
        depth = 1 if g == 2 else 2
        return list(itertools.combinations(range(self.gamma.n_p - g + depth), depth))

    def run_generation(self, g: int, state: BoundsState, workers: int, pool: ThreadPoolExecutor | None) -> None:
        shared = np.array([state.upper], dtype=np.int64)
        tasks = self.tasks(g, workers)
        if pool is None or len(tasks) == 1:
            results = [self.kernel.run(g, t, shared) for t in tasks]
        else:
            results = self._parallel(g, tasks, shared, pool, workers)
        for count, weight, words in results:
            state.candidates += count
            if words is not None and weight < state.upper:
                state.offer(int(weight), self.decode(words))

    def _parallel(self, g, tasks, shared, pool, workers):
        it = iter(tasks)
        lock = threading.Lock()

        def drain():
            out = []
            while True:
                with lock:
                    t = next(it, None)
                if t is None:
                    return out
                out.append(self.kernel.run(g, t, shared))

        futures = [pool.submit(drain) for _ in range(workers)]
        return [r for f in futures for r in f.result()]


def enumerate_generation(
    gamma: PackagedGamma,
    g: int,
    state: BoundsState,
    filt: AdmissibilityFilter | None = None,
    *,
    workers: int = 1,
    backend: str | None = None,
) -> BoundsState:
    """Enumerate generation ``g`` of one matrix, lowering ``state.upper`` in place."""
    if not 1 <= g <= gamma.n_p:
        raise ValueError(f"generation {g} outside 1..{gamma.n_p}")
    runner = _GammaRunner(gamma, filt, backend)
    with ThreadPoolExecutor(workers) if workers > 1 else _nullpool() as pool:
        runner.run_generation(g, state, workers, pool)
    return state


class _nullpool:
    def __enter__(self):
        return None

    def __exit__(self, *exc):
        return False


def new_state(gammas: list[PackagedGamma]) -> BoundsState:
    sentinel = _sentinel(gammas[0])
    return BoundsState(lower=1, upper=sentinel, sentinel=sentinel)


def run_bz(
    a_frame: BitMatrix,
    gammas: list[PackagedGamma],
    filt: AdmissibilityFilter | None = None,
    workers: int = 1,
    *,
    backend: str | None = None,
    even_weights: bool = False,
) -> BoundsState:
    """Run the bound ladder to completion and return the final state.

    ``a_frame`` is the normalizer in the frame shared by all matrices; it
    feeds the filter when none is given.  With ``even_weights`` every codeword
    weight is known to be even, so the lower bound is rounded up to even.
    """
    if not gammas:
        raise ValueError("need at least one prepared matrix")
    if workers < 1:
        raise ValueError("workers must be positive")
    modes = {g.mode for g in gammas}
    if len(modes) != 1 or len({g.matrix.n_cols for g in gammas}) != 1:
        raise ValueError("all prepared matrices must share mode and frame")
    if filt is None:
        filt = AdmissibilityFilter(a_frame, k=a_frame.n_rows - a_frame.n_cols // 2)
    runners = [_GammaRunner(g, filt, backend) for g in gammas]
    state = new_state(gammas)
    last = min(g.n_p for g in gammas)
    with ThreadPoolExecutor(workers) if workers > 1 else _nullpool() as pool:
        for g in range(1, last + 1):
            for r in runners:
                r.run_generation(g, state, workers, pool)
            bound = lower_bound(g, gammas)
            if even_weights:
                bound += bound & 1
            state.lower = max(state.lower, bound)
            state.generation = g
            state.trace.append((g, state.lower, state.upper))
            if state.lower >= state.upper:
                break
        else:
            state.complete = True
    if state.upper == state.sentinel:
        raise NoAdmissibleCodeword(
            "enumeration finished without an admissible codeword; the input is not a valid normalizer"
        )
    return state


__all__ = [
    "AdmissibilityFilter",
    "BoundsState",
    "HAMMING",
    "NoAdmissibleCodeword",
    "SYMPLECTIC",
    "enumerate_generation",
    "lower_bound",
    "new_state",
    "run_bz",
]
