"""Symplectic minimum distance of qubit stabilizer codes."""

from .distance import (
    DistanceReport,
    StabilizerInstance,
    ValidationError,
    brute_force_distance,
    compute_distance,
    random_stabilizer,
    saved_1_gamma,
    saved_2_gamma,
    saved_isometry,
    validate_normalizer,
)
from .engine import NoAdmissibleCodeword
from .gf2 import BitMatrix, BitVector, RankError
from .gf4 import F4Matrix
from .kernels import DEFAULT_BACKEND, HAVE_EXTENSION

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_BACKEND",
    "HAVE_EXTENSION",
    "BitMatrix",
    "BitVector",
    "DistanceReport",
    "F4Matrix",
    "NoAdmissibleCodeword",
    "RankError",
    "StabilizerInstance",
    "ValidationError",
    "brute_force_distance",
    "compute_distance",
    "random_stabilizer",
    "saved_1_gamma",
    "saved_2_gamma",
    "saved_isometry",
    "validate_normalizer",
]
