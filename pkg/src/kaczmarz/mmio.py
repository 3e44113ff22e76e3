"""MatrixMarket dense exchange, real general only.

Supports the array and coordinate formats for reading and writes the array
format.  Parse failures raise MatrixMarketError with the file name and
1-based line number.  Values are written with 17 significant digits so a
write/read round trip is lossless for float64.
"""

from __future__ import annotations

import os
from pathlib import Path

import numpy as np

from .errors import DimensionError, MatrixMarketError
from .linalg import as_matrix, as_vector

# cap on m * n for dense materialization (~400 MB of float64)
_MAX_DENSE_ENTRIES = 50_000_000

_BANNER = "%%MatrixMarket"


def _fail(path: os.PathLike | str, line: int, msg: str) -> MatrixMarketError:
    return MatrixMarketError(f"{path}:{line}: {msg}")


def _parse_int(token: str, path: os.PathLike | str, line: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise _fail(path, line, f"expected integer {what}, got {token!r}") from None


def _parse_value(token: str, path: os.PathLike | str, line: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise _fail(path, line, f"expected real value, got {token!r}") from None
    if not np.isfinite(value):
        raise _fail(path, line, f"non-finite value {token!r}")
    return value


def read_matrix_market(path: os.PathLike | str) -> np.ndarray:
    """Read a real general MatrixMarket file into a dense (m, n) array."""
    path = Path(path)
    try:
        raw = path.read_text(encoding="ascii")
    except OSError as exc:
        raise MatrixMarketError(f"{path}: cannot read: {exc}") from None
    except UnicodeDecodeError as exc:
        raise MatrixMarketError(f"{path}: not an ASCII text file: {exc}") from None
    lines = raw.splitlines()
    if not lines:
        raise _fail(path, 1, "empty file")

    header = lines[0].split()
    if not lines[0].startswith(_BANNER) or len(header) != 5:
        raise _fail(path, 1, f"malformed header, expected '{_BANNER} matrix <format> <field> <symmetry>'")
    _, obj, fmt, field, symmetry = (tok.lower() for tok in header)
    if obj != "matrix":
        raise _fail(path, 1, f"unsupported object {obj!r}, only 'matrix'")
    if fmt not in ("array", "coordinate"):
        raise _fail(path, 1, f"unsupported format {fmt!r}, only 'array' or 'coordinate'")
    if field != "real":
        raise _fail(path, 1, f"unsupported field {field!r}, only 'real'")
    if symmetry != "general":
        raise _fail(path, 1, f"unsupported symmetry {symmetry!r}, only 'general'")

    # token stream over data lines, tracking the 1-based source line
    tokens: list[tuple[str, int]] = []
    for idx in range(1, len(lines)):
        text = lines[idx]
        if text.startswith("%"):
            continue
        for tok in text.split():
            tokens.append((tok, idx + 1))
    if not tokens:
        raise _fail(path, len(lines), "missing size line")
    pos = 0

    def take(what: str) -> tuple[str, int]:
        nonlocal pos
        if pos >= len(tokens):
            raise _fail(path, len(lines), f"unexpected end of file, expected {what}")
        tok = tokens[pos]
        pos += 1
        return tok

    tok, line = take("row count")
    m = _parse_int(tok, path, line, "row count")
    tok, line = take("column count")
    n = _parse_int(tok, path, line, "column count")
    if m < 1 or n < 1:
        raise _fail(path, line, f"dimensions must be positive, got {m} x {n}")
    if m * n > _MAX_DENSE_ENTRIES:
        raise _fail(path, line, f"dense size {m} x {n} exceeds the {_MAX_DENSE_ENTRIES} entry cap")

    out = np.zeros((m, n), dtype=np.float64)
    if fmt == "array":
        # column-major scalar list
        for col in range(n):
            for row in range(m):
                tok, line = take("matrix entry")
                out[row, col] = _parse_value(tok, path, line)
    else:
        tok, line = take("entry count")
        nnz = _parse_int(tok, path, line, "entry count")
        if nnz < 0 or nnz > m * n:
            raise _fail(path, line, f"entry count {nnz} out of range for {m} x {n}")
        for _ in range(nnz):
            tok, line = take("row index")
            i = _parse_int(tok, path, line, "row index")
            tok, line = take("column index")
            j = _parse_int(tok, path, line, "column index")
            if not 1 <= i <= m:
                raise _fail(path, line, f"row index {i} out of range [1, {m}]")
            if not 1 <= j <= n:
                raise _fail(path, line, f"column index {j} out of range [1, {n}]")
            tok, line = take("entry value")
            out[i - 1, j - 1] = _parse_value(tok, path, line)
    if pos != len(tokens):
        tok, line = tokens[pos]
        raise _fail(path, line, f"trailing data {tok!r} after expected entries")
    return out


def write_matrix_market(path: os.PathLike | str, a: np.ndarray, comment: str | None = None) -> None:
    """Write a dense array in MatrixMarket array format, real general."""
    a = as_matrix(a, "a")
    m, n = a.shape
    parts = [f"{_BANNER} matrix array real general\n"]
    if comment:
        for text in comment.splitlines():
            parts.append(f"%{text}\n")
    parts.append(f"{m} {n}\n")
    for col in range(n):
        for row in range(m):
            parts.append(f"{a[row, col]:.16e}\n")
    Path(path).write_text("".join(parts), encoding="ascii")


def read_vector(path: os.PathLike | str) -> np.ndarray:
    """Read a MatrixMarket file holding a single row or column as a 1-D vector."""
    a = read_matrix_market(path)
    if min(a.shape) != 1:
        raise DimensionError(
            f"{path}: expected a single row or column, got shape {a.shape}"
        )
    return a.reshape(-1)


def write_vector(path: os.PathLike | str, v: np.ndarray, comment: str | None = None) -> None:
    """Write a 1-D vector as an (n, 1) MatrixMarket array."""
    v = as_vector(v, "v")
    write_matrix_market(path, v.reshape(-1, 1), comment=comment)
