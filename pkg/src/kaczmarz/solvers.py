"""Randomized Kaczmarz iterations, plain and support-weighted.

Both solvers start from the zero vector, sample rows with probability
proportional to squared row norm, and project the iterate onto the sampled
hyperplane.  The sparse variant estimates a support set each iteration from
the largest-magnitude entries of the current iterate and damps coordinates
outside it by 1/sqrt(j) before projecting, which steers mass onto the
estimated support while the estimate anneals from all coordinates down to
the configured floor.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, ParameterError
from .linalg import as_matrix, as_vector, column_submatrix, embed_vector
from .rng import RngState
from .sampling import build_row_sampler, sample_row
from .signals import SparseSignal


@dataclass(frozen=True)
class SolverConfig:
    """Knobs shared by every solver run.

    support_floor is the minimum support-estimate size for the sparse
    variant (ignored by the plain solver).  residual_tolerance of zero
    disables early stopping.  trace_stride controls how often the trace
    records an entry; the final iterate is always recorded.
    """

    max_iterations: int
    seed: int = 0
    support_floor: int | None = None
    residual_tolerance: float = 0.0
    trace_stride: int = 1

    def __post_init__(self) -> None:
        if self.max_iterations < 1:
            raise ParameterError(
                f"max_iterations must be >= 1, got {self.max_iterations}"
            )
        if self.trace_stride < 1:
            raise ParameterError(f"trace_stride must be >= 1, got {self.trace_stride}")
        if self.residual_tolerance < 0:
            raise ParameterError(
                f"residual_tolerance must be >= 0, got {self.residual_tolerance}"
            )
        if self.support_floor is not None and self.support_floor < 1:
            raise ParameterError(
                f"support_floor must be >= 1, got {self.support_floor}"
            )


@dataclass
class IterationTrace:
    """Sampled convergence history of one solver run.

    iterations holds the 1-based iteration numbers at which the run was
    traced (every trace_stride-th iteration plus the final one).  Entries of
    relative_error are NaN when no ground truth was supplied.  When b is the
    zero vector the residual column is absolute rather than relative.
    support_sizes (sparse runs only) records |S| at every iteration, not
    just traced ones.
    """

    iterations: np.ndarray
    relative_error: np.ndarray
    relative_residual: np.ndarray
    final_x: np.ndarray
    iterations_used: int
    support_sizes: np.ndarray | None = None


@dataclass
class _TraceBuilder:
    a: np.ndarray
    b: np.ndarray
    truth: np.ndarray | None
    stride: int
    tol: float
    iterations: list[int] = field(default_factory=list)
    errors: list[float] = field(default_factory=list)
    residuals: list[float] = field(default_factory=list)

    def __post_init__(self) -> None:
        self._b_norm = float(np.linalg.norm(self.b))
        self._truth_norm = (
            float(np.linalg.norm(self.truth)) if self.truth is not None else 0.0
        )

    def record(self, j: int, x: np.ndarray) -> bool:
        """Append a trace point; returns True when the residual meets tol."""
        resid = float(np.linalg.norm(self.a @ x - self.b))
        if self._b_norm > 0.0:
            resid /= self._b_norm
        if self.truth is not None:
            err = float(np.linalg.norm(x - self.truth)) / self._truth_norm
        else:
            err = float("nan")
        self.iterations.append(j)
        self.errors.append(err)
        self.residuals.append(resid)
        return self.tol > 0.0 and resid <= self.tol

    def finish(
        self, x: np.ndarray, j: int, support_sizes: list[int] | None = None
    ) -> IterationTrace:
        if not self.iterations or self.iterations[-1] != j:
            self.record(j, x)
        return IterationTrace(
            iterations=np.asarray(self.iterations, dtype=np.int64),
            relative_error=np.asarray(self.errors, dtype=np.float64),
            relative_residual=np.asarray(self.residuals, dtype=np.float64),
            final_x=x.copy(),
            iterations_used=j,
            support_sizes=(
                np.asarray(support_sizes, dtype=np.int64)
                if support_sizes is not None
                else None
            ),
        )


def _project(x: np.ndarray, direction: np.ndarray, target: float) -> np.ndarray:
    """Project x onto the hyperplane <direction, y> = target."""
    denom = float(direction @ direction)
    if denom == 0.0:
        raise ParameterError("cannot project onto a zero direction")
    return x + ((target - float(direction @ x)) / denom) * direction


def rk_step(x: np.ndarray, a_row: np.ndarray, b_i: float) -> np.ndarray:
    """One plain Kaczmarz projection onto <a_row, y> = b_i."""
    x = as_vector(x, "x")
    a_row = as_vector(a_row, "a_row")
    if x.shape != a_row.shape:
        raise DimensionError(
            f"x and a_row differ in length: {x.shape[0]} vs {a_row.shape[0]}"
        )
    if float(a_row @ a_row) == 0.0:
        raise ParameterError("cannot project onto a zero row")
    return _project(x, a_row, float(b_i))


def srk_step(x: np.ndarray, a_row: np.ndarray, b_i: float, w: np.ndarray) -> np.ndarray:
    """One weighted projection onto <w * a_row, y> = b_i."""
    x = as_vector(x, "x")
    a_row = as_vector(a_row, "a_row")
    w = as_vector(w, "w")
    if not (x.shape == a_row.shape == w.shape):
        raise DimensionError(
            f"x, a_row, w differ in length: {x.shape[0]}, {a_row.shape[0]}, {w.shape[0]}"
        )
    direction = w * a_row
    if float(direction @ direction) == 0.0:
        raise ParameterError("weighted row is zero; projection undefined")
    return _project(x, direction, float(b_i))


def support_estimate(x: np.ndarray, support_floor: int, j: int) -> np.ndarray:
    """Indices of the s largest-magnitude entries, s = max(floor, n - j + 1).

    s is clamped to [1, n].  Ties in magnitude resolve to the lower index so
    the estimate is deterministic.  Returned ascending.
    """
    x = as_vector(x, "x")
    n = x.shape[0]
    if support_floor < 1:
        raise ParameterError(f"support_floor must be >= 1, got {support_floor}")
    if support_floor > n:
        raise ParameterError(
            f"support_floor {support_floor} exceeds vector length {n}"
        )
    if j < 1:
        raise ParameterError(f"iteration number must be >= 1, got {j}")
    size = max(support_floor, n - j + 1)
    size = min(max(size, 1), n)
    order = np.argsort(-np.abs(x), kind="stable")  # stable keeps lowest index first
    return np.sort(order[:size])


def weight_vector(support: np.ndarray, j: int, n: int) -> np.ndarray:
    """Weights 1 on the support and 1/sqrt(j) off it."""
    if j < 1:
        raise ParameterError(f"iteration number must be >= 1, got {j}")
    support = np.asarray(support, dtype=np.int64)
    if support.ndim != 1 or support.size == 0:
        raise DimensionError("support must be a non-empty 1-D index array")
    if np.any(support < 0) or np.any(support >= n):
        raise DimensionError(f"support index out of range for length-{n} vector")
    w = np.full(n, 1.0 / np.sqrt(float(j)), dtype=np.float64)
    w[support] = 1.0
    return w


def _check_system(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    a = as_matrix(a, "a")
    b = as_vector(b, "b")
    if a.shape[0] != b.shape[0]:
        raise DimensionError(
            f"matrix has {a.shape[0]} rows but rhs has {b.shape[0]} entries"
        )
    return a, b


def _check_truth(
    truth: np.ndarray | SparseSignal | None, n: int
) -> np.ndarray | None:
    if truth is None:
        return None
    if isinstance(truth, SparseSignal):
        truth = truth.vector
    truth = as_vector(truth, "truth")
    if truth.shape[0] != n:
        raise DimensionError(
            f"truth has {truth.shape[0]} entries but matrix has {n} columns"
        )
    return truth


def solve_rk(
    a: np.ndarray,
    b: np.ndarray,
    config: SolverConfig,
    truth: np.ndarray | SparseSignal | None = None,
) -> IterationTrace:
    """Run the plain randomized solver from the zero vector."""
    a, b = _check_system(a, b)
    truth = _check_truth(truth, a.shape[1])
    sampler = build_row_sampler(a)
    rng = RngState(config.seed)
    x = np.zeros(a.shape[1], dtype=np.float64)
    trace = _TraceBuilder(a, b, truth, config.trace_stride, config.residual_tolerance)
    j = 0
    for j in range(1, config.max_iterations + 1):
        i = sample_row(sampler, rng)
        x = _project(x, a[i], float(b[i]))
        if j % config.trace_stride == 0 or j == config.max_iterations:
            if trace.record(j, x):
                break
    return trace.finish(x, j)


def solve_srk(
    a: np.ndarray,
    b: np.ndarray,
    config: SolverConfig,
    truth: np.ndarray | SparseSignal | None = None,
) -> IterationTrace:
    """Run the support-weighted solver from the zero vector.

    config.support_floor must be set and lie in [1, n].
    """
    a, b = _check_system(a, b)
    n = a.shape[1]
    if config.support_floor is None:
        raise ParameterError("support_floor is required for the sparse solver")
    if config.support_floor > n:
        raise ParameterError(
            f"support_floor {config.support_floor} exceeds column count {n}"
        )
    truth = _check_truth(truth, n)
    sampler = build_row_sampler(a)
    rng = RngState(config.seed)
    x = np.zeros(n, dtype=np.float64)
    trace = _TraceBuilder(a, b, truth, config.trace_stride, config.residual_tolerance)
    support_sizes: list[int] = []
    j = 0
    for j in range(1, config.max_iterations + 1):
        i = sample_row(sampler, rng)
        support = support_estimate(x, config.support_floor, j)
        support_sizes.append(support.shape[0])
        w = weight_vector(support, j, n)
        x = srk_step(x, a[i], float(b[i]), w)
        if j % config.trace_stride == 0 or j == config.max_iterations:
            if trace.record(j, x):
                break
    return trace.finish(x, j, support_sizes=support_sizes)


def solve_rk_reduced(
    a: np.ndarray,
    b: np.ndarray,
    support: np.ndarray,
    config: SolverConfig,
    truth: np.ndarray | SparseSignal,
) -> IterationTrace:
    """Plain solver on the columns listed in support, re-embedded for errors.

    Serves as the best-case baseline: it is the plain solver run with the
    true support known in advance.  Trace errors and the final iterate are
    expressed in the full coordinate system.
    """
    a, b = _check_system(a, b)
    n = a.shape[1]
    if truth is None:
        raise ParameterError("truth is required for the known-support baseline")
    truth = _check_truth(truth, n)
    support = np.asarray(support, dtype=np.int64)
    reduced = column_submatrix(a, support)
    sampler = build_row_sampler(reduced)
    rng = RngState(config.seed)
    x = np.zeros(reduced.shape[1], dtype=np.float64)

    def embed(v: np.ndarray) -> np.ndarray:
        return embed_vector(v, support, n)

    trace = _TraceBuilder(a, b, truth, config.trace_stride, config.residual_tolerance)
    j = 0
    for j in range(1, config.max_iterations + 1):
        i = sample_row(sampler, rng)
        x = _project(x, reduced[i], float(b[i]))
        if j % config.trace_stride == 0 or j == config.max_iterations:
            if trace.record(j, embed(x)):
                break
    return trace.finish(embed(x), j)
