"""Sparse test signal generation and error metrics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, ParameterError
from .linalg import as_vector
from .rng import RngState


@dataclass(frozen=True)
class SparseSignal:
    """A length-n vector with exactly k nonzero entries.

    support holds the nonzero positions (0-based, ascending); values holds
    the corresponding entries in the same order.
    """

    vector: np.ndarray
    support: np.ndarray
    n: int
    k: int


def gen_sparse_signal(n: int, k: int, rng: RngState) -> SparseSignal:
    """Draw a k-sparse signal: uniform random support, standard normal values.

    The support is a uniform k-subset of {0, ..., n-1} chosen by a partial
    Fisher-Yates shuffle.  Values are i.i.d. standard normal; an exact zero
    draw is resampled so the support size is exactly k.
    """
    if n < 1:
        raise ParameterError(f"signal length must be >= 1, got {n}")
    if not 1 <= k <= n:
        raise ParameterError(f"sparsity k must satisfy 1 <= k <= n, got k={k}, n={n}")
    pool = np.arange(n)
    for i in range(k):
        j = rng.integer(i, n)
        pool[i], pool[j] = pool[j], pool[i]
    support = np.sort(pool[:k])
    values = rng.normals(k)
    while np.any(values == 0.0):
        zero = values == 0.0
        values[zero] = rng.normals(int(np.sum(zero)))
    vector = np.zeros(n, dtype=np.float64)
    vector[support] = values
    return SparseSignal(vector=vector, support=support, n=n, k=k)


def relative_error(x: np.ndarray, truth: np.ndarray | SparseSignal) -> float:
    """||x - truth|| / ||truth||; truth must be nonzero."""
    x = as_vector(x, "x")
    if isinstance(truth, SparseSignal):
        truth = truth.vector
    truth = as_vector(truth, "truth")
    if x.shape != truth.shape:
        raise DimensionError(
            f"x and truth differ in length: {x.shape[0]} vs {truth.shape[0]}"
        )
    denom = float(np.linalg.norm(truth))
    if denom == 0.0:
        raise ParameterError("truth vector is zero; relative error undefined")
    return float(np.linalg.norm(x - truth)) / denom
