"""Dense vector and matrix primitives with strict shape checking."""

from __future__ import annotations

import numpy as np

from .errors import DimensionError, ParameterError
from .rng import RngState


def as_vector(v: object, name: str = "vector") -> np.ndarray:
    """Validate and return a 1-D float64 array with finite entries."""
    arr = np.asarray(v, dtype=np.float64)
    if arr.ndim != 1:
        raise DimensionError(f"{name} must be 1-D, got shape {arr.shape}")
    if arr.size == 0:
        raise DimensionError(f"{name} must be non-empty")
    if not np.all(np.isfinite(arr)):
        raise ParameterError(f"{name} contains non-finite entries")
    return arr


def as_matrix(a: object, name: str = "matrix") -> np.ndarray:
    """Validate and return a 2-D float64 array with finite entries."""
    arr = np.asarray(a, dtype=np.float64)
    if arr.ndim != 2:
        raise DimensionError(f"{name} must be 2-D, got shape {arr.shape}")
    if arr.shape[0] == 0 or arr.shape[1] == 0:
        raise DimensionError(f"{name} must have positive dimensions, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ParameterError(f"{name} contains non-finite entries")
    return arr


def dot(u: np.ndarray, v: np.ndarray) -> float:
    """Inner product of two equal-length vectors."""
    u = as_vector(u, "u")
    v = as_vector(v, "v")
    if u.shape != v.shape:
        raise DimensionError(f"dot operands differ in length: {u.shape[0]} vs {v.shape[0]}")
    return float(u @ v)


def hadamard(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Entrywise product of two equal-length vectors."""
    u = as_vector(u, "u")
    v = as_vector(v, "v")
    if u.shape != v.shape:
        raise DimensionError(f"hadamard operands differ in length: {u.shape[0]} vs {v.shape[0]}")
    return u * v


def norm2_sq(u: np.ndarray) -> float:
    """Squared Euclidean norm."""
    u = as_vector(u, "u")
    return float(u @ u)


def frobenius_norm_sq(a: np.ndarray) -> float:
    """Squared Frobenius norm."""
    a = as_matrix(a, "a")
    return float(np.sum(a * a))


def gaussian_matrix(m: int, n: int, rng: RngState) -> np.ndarray:
    """(m, n) matrix of i.i.d. standard normal entries from rng."""
    if m < 1 or n < 1:
        raise ParameterError(f"matrix dimensions must be >= 1, got ({m}, {n})")
    return rng.normals((m, n))


def column_submatrix(a: np.ndarray, columns: np.ndarray) -> np.ndarray:
    """Copy of the listed columns (0-based, in the given order)."""
    a = as_matrix(a, "a")
    cols = np.asarray(columns, dtype=np.int64)
    if cols.ndim != 1 or cols.size == 0:
        raise DimensionError("column index set must be a non-empty 1-D array")
    if np.any(cols < 0) or np.any(cols >= a.shape[1]):
        raise DimensionError(
            f"column index out of range for matrix with {a.shape[1]} columns"
        )
    if len(np.unique(cols)) != cols.size:
        raise ParameterError("column index set contains duplicates")
    return a[:, cols].copy()


def embed_vector(values: np.ndarray, positions: np.ndarray, n: int) -> np.ndarray:
    """Length-n vector with values placed at positions, zeros elsewhere."""
    values = as_vector(values, "values")
    pos = np.asarray(positions, dtype=np.int64)
    if pos.shape != values.shape:
        raise DimensionError("values and positions differ in length")
    if np.any(pos < 0) or np.any(pos >= n):
        raise DimensionError(f"position out of range for length-{n} vector")
    out = np.zeros(n, dtype=np.float64)
    out[pos] = values
    return out
