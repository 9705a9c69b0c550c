"""Enumeration-ready generator matrices.

Symplectic-mode matrices are diagonalized over the additive GF(4) view, one
coordinate pair (column) at a time, using row additions only.  The result is
split into *packages*: a singleton pivot row, or a triple ``{r1, r2, r1+r2}``
whose members carry the three distinct nonzero symbols at the pivot column
while every other row is zero there.  For a singleton the pivot row carries
``x`` and every other row carries ``0`` or one fixed ``y != x``.  Either way a
sum drawing at most one member from each of ``g`` packages has weight ``>= g``.

No columns are physically moved: pivots are tracked by index, so every
prepared matrix spans the same code as its input, in the input's frame.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from .gf2 import BitMatrix, RankError, _half, rref
from .gf4 import F4Matrix, to_gf2, to_gf4

SYMPLECTIC = "symplectic"
HAMMING = "hamming"


@dataclass(frozen=True)
class Package:
    pivot: int
    members: tuple[int, ...]
    principal: bool = True

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass
class PackagedGamma:
    """A generator matrix plus the package partition the enumeration consumes."""

    matrix: BitMatrix
    packages: list[Package]
    n_pp: int
    mode: str = SYMPLECTIC
    rank_deficit: int = 0
    n_base: int = field(default=-1)

    def __post_init__(self) -> None:
        if self.n_base < 0:
            self.n_base = self.matrix.n_rows - sum(1 for p in self.packages if p.size == 3)

    @property
    def n_p(self) -> int:
        return len(self.packages)

    @property
    def base(self) -> BitMatrix:
        """The independent rows the matrix was built from (appended rows dropped)."""
        return BitMatrix(self.matrix.words[: self.n_base], self.matrix.n_cols)


@dataclass(frozen=True)
class PrincipalColumns:
    indices: tuple[int, ...]

    def __contains__(self, c: int) -> bool:
        return c in self.indices

    def __len__(self) -> int:
        return len(self.indices)


# --- column steps on a code array (rows x n, entries 0..3, addition = XOR) ---


class _Diagonalizer:
    def __init__(self, codes: np.ndarray):
        self.m = np.array(codes, dtype=np.uint8)
        self.processed = np.zeros(self.m.shape[0], dtype=bool)
        self.found: list[tuple[int, tuple[int, ...]]] = []

    def _add_where(self, mask: np.ndarray, src: int) -> None:
        mask = mask.copy()
        mask[src] = False
        self.m[mask] ^= self.m[src]

    def bit_pivot(self, c: int) -> int | None:
        """Unit pivot on the a-bit of pair ``c``, falling back to the b-bit (a half swap)."""
        col = self.m[:, c]
        for bit in (1, 2):
            cand = np.flatnonzero(~self.processed & ((col & bit) != 0))
            if cand.size:
                p = int(cand[0])
                self._add_where((self.m[:, c] & bit) != 0, p)
                self.processed[p] = True
                return p
        return None

    def complete_pair(self, c: int, p: int) -> bool:
        """Turn the bit pivot ``p`` at pair ``c`` into a triple using one unprocessed row."""
        cand = np.flatnonzero(~self.processed & (self.m[:, c] != 0))
        if not cand.size:
            return False
        r = int(cand[0])
        other = self.m[r, c]
        mask = (self.m[:, c] & other) != 0
        mask[p] = False
        self._add_where(mask, r)
        self.processed[r] = True
        self.found.append((c, (p, r)))
        return True

    def symbol_step(self, c: int) -> None:
        """One column of the additive GF(4) diagonalization."""
        col = self.m[:, c]
        cand = np.flatnonzero(~self.processed & (col != 0))
        if not cand.size:
            return
        r1 = int(cand[0])
        s1 = col[r1]
        distinct = cand[col[cand] != s1]
        if distinct.size:
            r2 = int(distinct[0])
            s2 = col[r2]
            col = col.copy()
            for src, sym in ((r1, s1), (r2, s2)):
                self._add_where((col == sym) | (col == (s1 ^ s2)), src)
            self.processed[[r1, r2]] = True
            self.found.append((c, (r1, r2)))
            return
        col = col.copy()
        done = self.processed.copy()
        others = np.flatnonzero(done & (col != 0) & (col != s1))
        if others.size:
            y = col[others[0]]
            self._add_where(col == (s1 ^ y), r1)
        self._add_where(col == s1, r1)
        self.processed[r1] = True
        self.found.append((c, (r1,)))

    def finish(self, principal: set[int] | None = None) -> tuple[np.ndarray, list[Package]]:
        if not self.processed.all():
            raise RankError(f"matrix has rank {int(self.processed.sum())} < {self.m.shape[0]} rows")
        rows = [self.m]
        packages = []
        next_row = self.m.shape[0]
        for c, members in self.found:
            is_principal = principal is None or c in principal
            if len(members) == 2:
                rows.append((self.m[members[0]] ^ self.m[members[1]])[None, :])
                members = (*members, next_row)
                next_row += 1
            packages.append(Package(c, members, is_principal))
        return np.vstack(rows), packages


def _codes(a: BitMatrix) -> np.ndarray:
    bits = a.to_array()
    n = _half(a.n_cols)
    return bits[:, :n] | (bits[:, n:] << 1)


def _from_codes(codes: np.ndarray) -> BitMatrix:
    return BitMatrix.from_array(np.concatenate([codes & 1, codes >> 1], axis=1))


def _order_by(packages: list[Package], order: Sequence[int]) -> list[Package]:
    rank = {c: i for i, c in enumerate(order)}
    return sorted(packages, key=lambda p: rank[p.pivot])


def diagonalize_f2(a: BitMatrix) -> PackagedGamma:
    """Constrained diagonalization over GF(2) (``(I_n | M1 ; 0 | M2)`` plus k appended rows).

    First pass: one unit pivot per coordinate pair, on its a-bit or else its
    b-bit.  Second pass: each remaining row is matched to a pair by the other
    bit and that bit is cleared in every other row, so each matched pair forms
    a triple with the appended sum.
    """
    codes = _codes(a)
    n = codes.shape[1]
    d = _Diagonalizer(codes)
    bit_pivots = {c: p for c in range(n) if (p := d.bit_pivot(c)) is not None}
    for c in range(n):
        if c in bit_pivots:
            if not d.complete_pair(c, bit_pivots[c]):
                d.found.append((c, (bit_pivots[c],)))
        else:
            d.symbol_step(c)
    m, packages = d.finish()
    packages = _order_by(packages, range(n))
    return PackagedGamma(_from_codes(m), packages, n_pp=len(packages), n_base=codes.shape[0])


def _diagonalize_codes(codes: np.ndarray, order: Sequence[int], principal: set[int] | None):
    d = _Diagonalizer(codes)
    for c in order:
        d.symbol_step(c)
    m, packages = d.finish(principal)
    return m, _order_by(packages, order)


def diagonalize_f4(a4: F4Matrix) -> tuple[PackagedGamma, PrincipalColumns]:
    """Additive diagonalization over GF(4), columns left to right.

    Returns the packaged matrix (as its GF(2) image) and the principal columns,
    i.e. those not used as pivots.
    """
    codes = a4.codes()
    n = codes.shape[1]
    m, packages = _diagonalize_codes(codes, range(n), None)
    pivots = {p.pivot for p in packages}
    pc = PrincipalColumns(tuple(c for c in range(n) if c not in pivots))
    gamma = PackagedGamma(_from_codes(m), packages, n_pp=len(packages), n_base=codes.shape[0])
    return gamma, pc


def second_gamma(b4: PackagedGamma | F4Matrix, pc: PrincipalColumns) -> PackagedGamma:
    """Re-diagonalize with the principal columns processed first.

    ``n_pp`` of the result counts packages pivoted on principal columns; the
    remaining rows are packaged on the other columns so that every codeword
    still has a one-member-per-package expression.
    """
    if isinstance(b4, PackagedGamma):
        codes = _codes(b4.base)
    else:
        codes = b4.codes()
    n = codes.shape[1]
    principal = set(pc.indices)
    order = [*pc.indices, *(c for c in range(n) if c not in principal)]
    m, packages = _diagonalize_codes(codes, order, principal)
    n_pp = sum(p.principal for p in packages)
    return PackagedGamma(_from_codes(m), packages, n_pp=n_pp, n_base=codes.shape[0])


def isometry_transform(a: BitMatrix) -> BitMatrix:
    """Map each row ``(a, b)`` to ``(a, b, a + b)``."""
    n = _half(a.n_cols)
    bits = a.to_array()
    return BitMatrix.from_array(np.concatenate([bits, bits[:, :n] ^ bits[:, n:]], axis=1))


def information_sets(b: BitMatrix) -> list[PackagedGamma]:
    """Systematic forms of ``b`` on pairwise-disjoint column sets (Hamming mode)."""
    bits = b.to_array()
    n_rows, n_cols = bits.shape
    if len(rref(bits)[1]) < n_rows:
        raise RankError("generator matrix is rank deficient")
    available = list(range(n_cols))
    gammas: list[PackagedGamma] = []
    while available:
        m = bits.copy()
        pivot_rows: list[tuple[int, int]] = []
        used = np.zeros(n_rows, dtype=bool)
        for c in available:
            cand = np.flatnonzero(~used & (m[:, c] != 0))
            if not cand.size:
                continue
            p = int(cand[0])
            hits = np.flatnonzero(m[:, c])
            hits = hits[hits != p]
            m[hits] ^= m[p]
            used[p] = True
            pivot_rows.append((c, p))
            if used.all():
                break
        if not pivot_rows:
            break
        rest = [r for r in range(n_rows) if not used[r]]
        order = [p for _, p in pivot_rows] + rest
        packages = [Package(c, (i,)) for i, (c, _) in enumerate(pivot_rows)]
        packages += [Package(-1, (len(pivot_rows) + j,), principal=False) for j in range(len(rest))]
        gammas.append(
            PackagedGamma(
                BitMatrix.from_array(m[order]),
                packages,
                n_pp=len(pivot_rows),
                mode=HAMMING,
                rank_deficit=n_rows - len(pivot_rows),
                n_base=n_rows,
            )
        )
        taken = {c for c, _ in pivot_rows}
        available = [c for c in available if c not in taken]
    return gammas


def singleton_gamma(a: BitMatrix, mode: str = SYMPLECTIC) -> PackagedGamma:
    """Treat every row as its own package, with no structural guarantees.

    Only meaningful when the caller knows the rows form a valid package
    structure, or to demonstrate what goes wrong when they do not.
    """
    packages = [Package(i, (i,)) for i in range(a.n_rows)]
    return PackagedGamma(a.copy(), packages, n_pp=a.n_rows, mode=mode, n_base=a.n_rows)


def package_violations(gamma: PackagedGamma) -> list[str]:
    """Structural check of a symplectic-mode package partition (empty list if sound)."""
    problems: list[str] = []
    codes = _codes(gamma.matrix)
    seen: set[int] = set()
    for pkg in gamma.packages:
        if seen & set(pkg.members):
            problems.append(f"package at {pkg.pivot} overlaps an earlier package")
        seen |= set(pkg.members)
        col = codes[:, pkg.pivot]
        outside = np.ones(len(col), dtype=bool)
        outside[list(pkg.members)] = False
        if pkg.size == 3:
            r1, r2, r3 = pkg.members
            if not np.array_equal(codes[r1] ^ codes[r2], codes[r3]):
                problems.append(f"package at {pkg.pivot}: third row is not the sum")
            if sorted(int(col[r]) for r in pkg.members) != [1, 2, 3]:
                problems.append(f"package at {pkg.pivot}: symbols not distinct and nonzero")
            if col[outside].any():
                problems.append(f"package at {pkg.pivot}: nonzero entry outside the package")
        elif pkg.size == 1:
            x = int(col[pkg.members[0]])
            rest = set(int(v) for v in col[outside]) - {0}
            if x == 0 or x in rest or len(rest) > 1:
                problems.append(f"singleton at {pkg.pivot}: pivot {x}, others {sorted(rest)}")
        else:
            problems.append(f"package at {pkg.pivot} has size {pkg.size}")
    if len({p.pivot for p in gamma.packages}) != gamma.n_p:
        problems.append("pivot columns are not distinct")
    if gamma.n_pp > gamma.n_p:
        problems.append("n_pp exceeds n_p")
    return problems


__all__ = [
    "HAMMING",
    "SYMPLECTIC",
    "Package",
    "PackagedGamma",
    "PrincipalColumns",
    "diagonalize_f2",
    "diagonalize_f4",
    "information_sets",
    "isometry_transform",
    "package_violations",
    "second_gamma",
    "singleton_gamma",
    "to_gf2",
    "to_gf4",
]
