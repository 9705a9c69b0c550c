"""Plain-text normalizer matrix files.

Line one holds ``K N``; then ``K`` rows of ``N`` characters from ``{0, 1}``.
Whitespace inside a row and blank lines between rows are ignored.
"""

from __future__ import annotations

from pathlib import Path

from .distance import StabilizerInstance
from .gf2 import BitMatrix


class MatrixFileError(ValueError):
    """Malformed matrix file; the message names the offending line and column."""


def parse_matrix_text(text: str, source: str = "<string>") -> StabilizerInstance:
    lines = text.splitlines()
    header_idx = next((i for i, ln in enumerate(lines) if ln.strip()), None)
    if header_idx is None:
        raise MatrixFileError(f"{source}: empty file")
    parts = lines[header_idx].split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise MatrixFileError(f"{source}:{header_idx + 1}: header must be two integers 'K N'")
    n_rows, n_cols = map(int, parts)
    if n_cols % 2:
        raise MatrixFileError(f"{source}:{header_idx + 1}: N={n_cols} must be even")
    if n_rows > n_cols:
        raise MatrixFileError(f"{source}:{header_idx + 1}: K={n_rows} exceeds N={n_cols}")
    rows: list[list[int]] = []
    for lineno, line in enumerate(lines[header_idx + 1 :], start=header_idx + 2):
        if not line.strip():
            continue
        row = []
        for col, ch in enumerate(line, start=1):
            if ch in "01":
                row.append(ord(ch) - 48)
            elif not ch.isspace():
                raise MatrixFileError(f"{source}:{lineno}:{col}: unexpected character {ch!r}")
        if len(row) != n_cols:
            raise MatrixFileError(f"{source}:{lineno}: row has {len(row)} bits, expected {n_cols}")
        rows.append(row)
    if len(rows) != n_rows:
        raise MatrixFileError(f"{source}: found {len(rows)} rows, header says {n_rows}")
    if not rows:
        return StabilizerInstance(BitMatrix.zeros(0, n_cols))
    return StabilizerInstance(BitMatrix.from_array(rows))


def parse_matrix_file(path: str | Path) -> StabilizerInstance:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise MatrixFileError(f"{path}: {exc.strerror}") from exc
    return parse_matrix_text(text, str(path))


def format_matrix(inst: StabilizerInstance) -> str:
    bits = inst.a.to_array()
    body = "\n".join("".join(map(str, r)) for r in bits)
    return f"{inst.a.n_rows} {inst.a.n_cols}\n{body}\n"


def write_matrix_file(path: str | Path, inst: StabilizerInstance) -> None:
    Path(path).write_text(format_matrix(inst))
