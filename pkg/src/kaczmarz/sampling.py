"""Row sampling proportional to squared row norms.

The sampler precomputes prefix sums of squared row norms and draws a row by
binary search over one uniform variate.  Rows that are identically zero get
an empty interval and can never be selected.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateMatrixError
from .linalg import as_matrix
from .rng import RngState


@dataclass(frozen=True)
class RowSampler:
    """Sampling state for one matrix.

    probabilities[i] = ||a_i||^2 / ||A||_F^2, prefix_sums is the cumulative
    sum of squared row norms, total is ||A||_F^2.
    """

    probabilities: np.ndarray
    prefix_sums: np.ndarray
    total: float

    @property
    def rows(self) -> int:
        return self.probabilities.shape[0]


def build_row_sampler(a: np.ndarray) -> RowSampler:
    """Sampler over the rows of a; raises if every row is zero."""
    a = as_matrix(a, "a")
    row_norms_sq = np.sum(a * a, axis=1)  # (m,)
    total = float(np.sum(row_norms_sq))
    if total == 0.0:
        raise DegenerateMatrixError("all rows are zero; sampling distribution undefined")
    probabilities = row_norms_sq / total
    prefix_sums = np.cumsum(row_norms_sq)
    return RowSampler(probabilities=probabilities, prefix_sums=prefix_sums, total=total)


def sample_row(sampler: RowSampler, rng: RngState) -> int:
    """Draw one 0-based row index with probability proportional to row norm squared."""
    u = rng.uniform() * sampler.total
    i = int(np.searchsorted(sampler.prefix_sums, u, side="right"))
    # u can round up to total; the last positive-norm row owns that edge
    if i >= sampler.rows:
        i = sampler.rows - 1
        while i > 0 and sampler.probabilities[i] == 0.0:
            i -= 1
    return i
