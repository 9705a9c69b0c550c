"""Minimum distance of qubit stabilizer codes from a normalizer matrix."""

from __future__ import annotations

import time
from collections.abc import Sequence
from dataclasses import asdict, dataclass, field

import numpy as np

from . import engine, prep
from .gf2 import (
    BitMatrix,
    BitVector,
    RankError,
    in_rowspace,
    n_words,
    pack_bits,
    rank,
    symplectic_complement,
    symplectic_dual_basis,
    symplectic_swap,
)
from .gf4 import to_gf4

ALGORITHMS = ("saved_1_gamma", "saved_2_gamma", "saved_isometry", "brute_force")
BRUTE_FORCE_MAX_ROWS = 28


class ValidationError(ValueError):
    """The matrix is not the normalizer matrix of a stabilizer code."""


@dataclass(frozen=True)
class StabilizerInstance:
    """Normalizer matrix ``A`` of shape ``(n+k) x 2n``."""

    a: BitMatrix

    def __post_init__(self) -> None:
        if self.a.n_cols % 2:
            raise ValueError(f"normalizer matrix needs an even column count, got {self.a.n_cols}")

    @classmethod
    def from_strings(cls, rows: Sequence[str]) -> StabilizerInstance:
        return cls(BitMatrix.from_strings(rows))

    @property
    def n(self) -> int:
        return self.a.n_cols // 2

    @property
    def k(self) -> int:
        return self.a.n_rows - self.n


@dataclass
class Validation:
    ok: bool
    reason: str = ""
    kind: str = ""
    witness: BitVector | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass
class DistanceReport:
    distance: int
    algorithm: str
    generations: int
    candidates_enumerated: int
    elapsed_seconds: float
    workers: int
    n: int = 0
    k: int = 0
    bounds_trace: list[tuple[int, int, int]] = field(default_factory=list)
    complete_enumeration: bool = False
    best_codeword: str | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["bounds_trace"] = [list(t) for t in self.bounds_trace]
        return d


def validate_normalizer(inst: StabilizerInstance) -> Validation:
    n, k = inst.n, inst.k
    if not 0 <= k <= n:
        return Validation(False, f"row count {inst.a.n_rows} outside [n, 2n] = [{n}, {2 * n}]", "shape")
    r = rank(inst.a)
    if r != inst.a.n_rows:
        return Validation(False, f"rank {r} < {inst.a.n_rows} rows", "rank")
    dual = symplectic_dual_basis(inst.a)
    for v in dual.rows():
        if not in_rowspace(inst.a, v):
            return Validation(False, "stabilizer is not contained in the normalizer", "isotropy", v)
    return Validation(True)


def _check(inst: StabilizerInstance, validate: bool) -> None:
    if not validate:
        return
    result = validate_normalizer(inst)
    if not result:
        if result.kind == "rank":
            raise RankError(result.reason)
        raise ValidationError(result.reason)


def _report(name, state: engine.BoundsState, distance, t0, workers, inst, trace) -> DistanceReport:
    best = None
    if state.best is not None:
        best = "".join(map(str, state.best.to_bits()))
    return DistanceReport(
        distance=distance,
        algorithm=name,
        generations=state.generation,
        candidates_enumerated=state.candidates,
        elapsed_seconds=time.perf_counter() - t0,
        workers=workers,
        n=inst.n,
        k=inst.k,
        bounds_trace=list(state.trace) if trace else [],
        complete_enumeration=state.complete,
        best_codeword=best,
    )


def _filter(inst: StabilizerInstance, dual_filter: bool) -> engine.AdmissibilityFilter:
    return engine.AdmissibilityFilter(inst.a, inst.k, enabled=dual_filter and inst.k > 0)


def saved_1_gamma(
    inst: StabilizerInstance,
    workers: int = 1,
    *,
    validate: bool = True,
    dual_filter: bool = True,
    backend: str | None = None,
    trace: bool = True,
) -> DistanceReport:
    """One prepared matrix from the constrained GF(2) diagonalization."""
    t0 = time.perf_counter()
    _check(inst, validate)
    gamma = prep.diagonalize_f2(inst.a)
    state = engine.run_bz(inst.a, [gamma], _filter(inst, dual_filter), workers, backend=backend)
    return _report("saved_1_gamma", state, state.upper, t0, workers, inst, trace)


def prepare_two_gammas(a: BitMatrix) -> list[prep.PackagedGamma]:
    b4, pc = prep.diagonalize_f4(to_gf4(a))
    return [b4, prep.second_gamma(b4, pc)]


def saved_2_gamma(
    inst: StabilizerInstance,
    workers: int = 1,
    *,
    validate: bool = True,
    dual_filter: bool = True,
    backend: str | None = None,
    trace: bool = True,
) -> DistanceReport:
    """Two prepared matrices from the additive GF(4) diagonalization and its principal columns."""
    t0 = time.perf_counter()
    _check(inst, validate)
    gammas = prepare_two_gammas(inst.a)
    state = engine.run_bz(inst.a, gammas, _filter(inst, dual_filter), workers, backend=backend)
    return _report("saved_2_gamma", state, state.upper, t0, workers, inst, trace)


def saved_isometry(
    inst: StabilizerInstance,
    workers: int = 1,
    *,
    validate: bool = True,
    dual_filter: bool = True,
    backend: str | None = None,
    trace: bool = True,
) -> DistanceReport:
    """Hamming distance of the ``(a, b, a+b)`` image, halved."""
    t0 = time.perf_counter()
    _check(inst, validate)
    gammas = prep.information_sets(prep.isometry_transform(inst.a))
    state = engine.run_bz(
        inst.a, gammas, _filter(inst, dual_filter), workers, backend=backend, even_weights=True
    )
    if state.upper % 2:
        raise RuntimeError(f"isometry image has odd minimum weight {state.upper}")
    return _report("saved_isometry", state, state.upper // 2, t0, workers, inst, trace)


def brute_force_distance(
    inst: StabilizerInstance, *, dual_filter: bool = True, validate: bool = False
) -> DistanceReport:
    """Exhaustive minimum over all ``2^(n+k) - 1`` nonzero row combinations.

    Combinations are walked in Gray-code order: a table over the low rows is
    built by reflection, and each step of the outer Gray walk flips one high
    row into every table entry at once.  A combination ``x`` lies in the
    stabilizer iff ``x G = 0`` for the Gram matrix ``G`` of symplectic
    products, so that syndrome is carried along with the codeword.
    """
    t0 = time.perf_counter()
    _check(inst, validate)
    m, n = inst.a.n_rows, inst.n
    if m > BRUTE_FORCE_MAX_ROWS:
        raise ValueError(f"brute force limited to {BRUTE_FORCE_MAX_ROWS} rows, got {m}")
    bits = inst.a.to_array().astype(np.uint8)
    gram = (bits.astype(np.int64) @ symplectic_swap(bits).astype(np.int64).T) % 2
    filtered = dual_filter and inst.k > 0
    rows = np.concatenate(
        [pack_bits(bits[:, :n]), pack_bits(bits[:, n:]), pack_bits(gram.astype(np.uint8))], axis=1
    )
    nw = n_words(n)
    inner = min(m, 16)
    table = np.zeros((1, rows.shape[1]), dtype=np.uint64)
    for i in range(inner):
        table = np.vstack([table, table[::-1] ^ rows[i]])
    best = n + 1
    offset = np.zeros(rows.shape[1], dtype=np.uint64)
    for step in range(1 << (m - inner)):
        if step:
            flip = inner + (step & -step).bit_length() - 1
            offset ^= rows[flip]
        words = table ^ offset
        weight = np.bitwise_count(words[:, :nw] | words[:, nw : 2 * nw]).sum(axis=1, dtype=np.int64)
        keep = weight > 0
        if filtered:
            keep &= words[:, 2 * nw :].any(axis=1)
        if keep.any():
            best = min(best, int(weight[keep].min()))
    if best == n + 1:
        raise engine.NoAdmissibleCodeword("no admissible codeword")
    return DistanceReport(
        distance=best,
        algorithm="brute_force",
        generations=m,
        candidates_enumerated=(1 << m) - 1,
        elapsed_seconds=time.perf_counter() - t0,
        workers=1,
        n=n,
        k=inst.k,
        complete_enumeration=True,
    )


def choose_algorithm(inst: StabilizerInstance) -> str:
    return "saved_2_gamma" if inst.k <= 2 else "saved_isometry"


_DISPATCH = {
    "saved_1_gamma": saved_1_gamma,
    "saved_2_gamma": saved_2_gamma,
    "saved_isometry": saved_isometry,
}


def compute_distance(
    inst: StabilizerInstance,
    algorithm: str = "auto",
    workers: int = 1,
    *,
    validate: bool = True,
    dual_filter: bool = True,
    backend: str | None = None,
    trace: bool = True,
) -> DistanceReport:
    if algorithm == "auto":
        algorithm = choose_algorithm(inst)
    if algorithm == "brute_force":
        return brute_force_distance(inst, dual_filter=dual_filter, validate=validate)
    try:
        fn = _DISPATCH[algorithm]
    except KeyError:
        raise ValueError(f"unknown algorithm {algorithm!r}; choose from {ALGORITHMS}") from None
    return fn(inst, workers, validate=validate, dual_filter=dual_filter, backend=backend, trace=trace)


def _random_invertible(rng: np.random.Generator, size: int) -> np.ndarray:
    while True:
        m = rng.integers(0, 2, size=(size, size), dtype=np.uint8)
        if rank(m) == size:
            return m


def random_stabilizer(n: int, k: int, seed: int | None = None) -> StabilizerInstance:
    """Random ``[[n, k]]`` normalizer matrix, deterministic in ``seed``.

    Grows a self-orthogonal stabilizer one vector at a time, each drawn
    uniformly from the symplectic complement of those chosen so far and
    rejected if it is already in their span; then returns a randomly mixed
    basis of the complement of the stabilizer.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    rng = np.random.default_rng(seed)
    stab = BitMatrix.zeros(0, 2 * n)
    while stab.n_rows < n - k:
        comp = symplectic_complement(stab).to_array()
        coeffs = rng.integers(0, 2, size=comp.shape[0], dtype=np.uint8)
        v = BitVector.from_bits((coeffs.astype(np.int64) @ comp.astype(np.int64)) % 2)
        if not in_rowspace(stab, v):
            stab = stab.vstack(BitMatrix.from_rows([v]))
    normalizer = symplectic_complement(stab).to_array().astype(np.int64)
    mix = _random_invertible(rng, normalizer.shape[0]).astype(np.int64)
    return StabilizerInstance(BitMatrix.from_array((mix @ normalizer) % 2))


__all__ = [
    "ALGORITHMS",
    "DistanceReport",
    "StabilizerInstance",
    "Validation",
    "ValidationError",
    "brute_force_distance",
    "choose_algorithm",
    "compute_distance",
    "prepare_two_gammas",
    "random_stabilizer",
    "saved_1_gamma",
    "saved_2_gamma",
    "saved_isometry",
    "validate_normalizer",
]
