"""Multi-trial convergence studies with deterministic aggregation.

A study draws per-trial problem instances from substreams of one base seed,
runs each configured solver on the same instance with the same per-trial
seed, and aggregates traces across trials.  Trials are independent and may
run in a process pool; results are keyed by trial index and aggregated in
trial order, so outputs are identical regardless of worker count or
completion order.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass
from math import ceil, floor
from typing import Callable

import numpy as np

from .errors import ConfigError, ExperimentError, ParameterError
from .linalg import gaussian_matrix
from .rng import RngState
from .signals import gen_sparse_signal
from .solvers import IterationTrace, SolverConfig, solve_rk, solve_rk_reduced, solve_srk
from .traceio import TraceRecord, write_trace_records

SOLVER_TOKENS = ("rk", "srk", "rk_oracle")

REGIMES = ("overdetermined", "underdetermined")

# a trial succeeds when the final relative error is at or below this
SUCCESS_THRESHOLD = 1e-4


@dataclass(frozen=True)
class ExperimentSpec:
    """Full description of one study; everything downstream derives from it.

    sparsity_ratio is relative to n in the overdetermined regime and to m in
    the underdetermined one.  Exactly one of khat / khat_ratio must be set;
    khat_ratio scales the true sparsity k and is clamped to [1, n].  With
    fixed_matrix the same matrix (drawn from substream seed + trials) is
    reused across trials and only the signal varies.
    """

    m: int
    n: int
    regime: str
    sparsity_ratio: float
    trials: int
    solvers: tuple[str, ...]
    seed: int
    max_iterations: int
    trace_stride: int
    khat: int | None = None
    khat_ratio: float | None = None
    fixed_matrix: bool = False

    def __post_init__(self) -> None:
        if self.m < 1 or self.n < 1:
            raise ConfigError(f"'m' and 'n' must be >= 1, got m={self.m}, n={self.n}")
        if self.regime not in REGIMES:
            raise ConfigError(
                f"'regime' must be one of {list(REGIMES)}, got {self.regime!r}"
            )
        if self.regime == "overdetermined" and self.m < self.n:
            raise ConfigError(
                f"'regime' is overdetermined but m={self.m} < n={self.n}"
            )
        if self.regime == "underdetermined" and self.m >= self.n:
            raise ConfigError(
                f"'regime' is underdetermined but m={self.m} >= n={self.n}"
            )
        if not 0.0 < self.sparsity_ratio <= 1.0:
            raise ConfigError(
                f"'sparsity_ratio' must lie in (0, 1], got {self.sparsity_ratio}"
            )
        if self.k < 1 or self.k > self.n:
            raise ConfigError(
                f"'sparsity_ratio' {self.sparsity_ratio} gives k={self.k} outside [1, n]"
            )
        if self.trials < 1:
            raise ConfigError(f"'trials' must be >= 1, got {self.trials}")
        if not self.solvers:
            raise ConfigError("'solvers' must name at least one solver")
        for token in self.solvers:
            if token not in SOLVER_TOKENS:
                raise ConfigError(
                    f"'solvers' contains unknown token {token!r}, valid: {list(SOLVER_TOKENS)}"
                )
        if len(set(self.solvers)) != len(self.solvers):
            raise ConfigError("'solvers' contains duplicates")
        if self.seed < 0:
            raise ConfigError(f"'seed' must be >= 0, got {self.seed}")
        if self.max_iterations < 1:
            raise ConfigError(
                f"'max_iterations' must be >= 1, got {self.max_iterations}"
            )
        if not 1 <= self.trace_stride <= self.max_iterations:
            raise ConfigError(
                f"'trace_stride' must lie in [1, max_iterations], got {self.trace_stride}"
            )
        if (self.khat is None) == (self.khat_ratio is None):
            raise ConfigError(
                "'khat' requires exactly one of an integer or a ratio_of_k value"
            )
        if self.khat is not None and not 1 <= self.khat <= self.n:
            raise ConfigError(f"'khat' must lie in [1, n], got {self.khat}")
        if self.khat_ratio is not None and self.khat_ratio <= 0:
            raise ConfigError(f"'khat' ratio_of_k must be > 0, got {self.khat_ratio}")

    @property
    def k(self) -> int:
        base = self.n if self.regime == "overdetermined" else self.m
        return int(round(self.sparsity_ratio * base))

    @property
    def support_floor(self) -> int:
        if self.khat is not None:
            return self.khat
        return min(max(ceil(self.khat_ratio * self.k), 1), self.n)


def matched_work_budget(iterations: int, m: int) -> int:
    """Full passes over the matrix contained in an iteration budget."""
    if iterations < 0:
        raise ParameterError(f"iterations must be >= 0, got {iterations}")
    if m < 1:
        raise ParameterError(f"row count must be >= 1, got {m}")
    return floor(iterations / m)


@dataclass
class SolverAggregate:
    """All trials of one solver on a shared traced-iteration grid."""

    solver: str
    iterations: np.ndarray  # (points,)
    errors: np.ndarray  # (trials, points)
    residuals: np.ndarray  # (trials, points)

    @property
    def mean_error(self) -> np.ndarray:
        return np.mean(self.errors, axis=0)

    @property
    def min_error(self) -> np.ndarray:
        return np.min(self.errors, axis=0)

    @property
    def max_error(self) -> np.ndarray:
        return np.max(self.errors, axis=0)

    @property
    def mean_residual(self) -> np.ndarray:
        return np.mean(self.residuals, axis=0)

    @property
    def min_residual(self) -> np.ndarray:
        return np.min(self.residuals, axis=0)

    @property
    def max_residual(self) -> np.ndarray:
        return np.max(self.residuals, axis=0)

    @property
    def final_errors(self) -> np.ndarray:
        return self.errors[:, -1]

    @property
    def success_rate(self) -> float:
        return float(np.mean(self.final_errors <= SUCCESS_THRESHOLD))


@dataclass
class ExperimentSummary:
    """Aggregated study output; everything except trial_seconds is
    reproducible byte for byte from the spec."""

    spec: ExperimentSpec
    aggregates: dict[str, SolverAggregate]
    success_threshold: float
    matched_work: int
    trial_seconds: np.ndarray


@dataclass
class _TrialResult:
    trial: int
    traces: dict[str, IterationTrace] | None
    elapsed: float
    error: str | None = None


def _draw_matrix(spec: ExperimentSpec, rng: RngState) -> np.ndarray:
    return gaussian_matrix(spec.m, spec.n, rng)


def _run_trial(spec: ExperimentSpec, trial: int) -> _TrialResult:
    start = time.perf_counter()
    try:
        base = RngState(spec.seed)
        stream = base.substream(trial)
        if spec.fixed_matrix:
            a = _draw_matrix(spec, base.substream(spec.trials))
        else:
            a = _draw_matrix(spec, stream)
        signal = gen_sparse_signal(spec.n, spec.k, stream)
        b = a @ signal.vector
        config = SolverConfig(
            max_iterations=spec.max_iterations,
            seed=stream.seed,
            support_floor=spec.support_floor,
            residual_tolerance=0.0,
            trace_stride=spec.trace_stride,
        )
        traces: dict[str, IterationTrace] = {}
        for token in spec.solvers:
            if token == "rk":
                traces[token] = solve_rk(a, b, config, truth=signal.vector)
            elif token == "srk":
                traces[token] = solve_srk(a, b, config, truth=signal.vector)
            else:
                traces[token] = solve_rk_reduced(
                    a, b, signal.support, config, truth=signal.vector
                )
        return _TrialResult(trial, traces, time.perf_counter() - start)
    except Exception as exc:  # noqa: BLE001 reported per trial by the caller
        return _TrialResult(
            trial, None, time.perf_counter() - start, f"{type(exc).__name__}: {exc}"
        )


def run_experiment(
    spec: ExperimentSpec,
    jobs: int = 1,
    progress: Callable[[int, int], None] | None = None,
) -> ExperimentSummary:
    """Run all trials and aggregate; jobs > 1 fans trials out to processes."""
    if jobs < 1:
        raise ParameterError(f"jobs must be >= 1, got {jobs}")
    results: list[_TrialResult | None] = [None] * spec.trials
    done = 0
    if jobs == 1 or spec.trials == 1:
        for t in range(spec.trials):
            results[t] = _run_trial(spec, t)
            done += 1
            if progress is not None:
                progress(done, spec.trials)
    else:
        with ProcessPoolExecutor(max_workers=min(jobs, spec.trials)) as pool:
            pending = {pool.submit(_run_trial, spec, t) for t in range(spec.trials)}
            while pending:
                finished, pending = wait(pending, return_when=FIRST_COMPLETED)
                for future in finished:
                    result = future.result()
                    results[result.trial] = result
                    done += 1
                    if progress is not None:
                        progress(done, spec.trials)

    failures = [(r.trial, r.error) for r in results if r is not None and r.error]
    if failures:
        raise ExperimentError(failures)

    aggregates: dict[str, SolverAggregate] = {}
    for token in spec.solvers:
        traces = [results[t].traces[token] for t in range(spec.trials)]
        grid = traces[0].iterations
        for trace in traces[1:]:
            if not np.array_equal(trace.iterations, grid):
                raise ExperimentError(
                    [(0, f"solver {token} produced inconsistent trace grids")]
                )
        aggregates[token] = SolverAggregate(
            solver=token,
            iterations=grid.copy(),
            errors=np.vstack([trace.relative_error for trace in traces]),
            residuals=np.vstack([trace.relative_residual for trace in traces]),
        )
    return ExperimentSummary(
        spec=spec,
        aggregates=aggregates,
        success_threshold=SUCCESS_THRESHOLD,
        matched_work=matched_work_budget(spec.max_iterations, spec.m),
        trial_seconds=np.array([results[t].elapsed for t in range(spec.trials)]),
    )


def summary_records(summary: ExperimentSummary, solver: str) -> list[TraceRecord]:
    """Trace CSV rows for one solver: per-trial rows then mean/min/max rows."""
    agg = summary.aggregates[solver]
    records: list[TraceRecord] = []
    for trial in range(summary.spec.trials):
        for p, iteration in enumerate(agg.iterations):
            records.append(
                TraceRecord(
                    solver=solver,
                    trial=trial,
                    iteration=int(iteration),
                    rel_error=float(agg.errors[trial, p]),
                    rel_residual=float(agg.residuals[trial, p]),
                )
            )
    for label, err, resid in (
        ("mean", agg.mean_error, agg.mean_residual),
        ("min", agg.min_error, agg.min_residual),
        ("max", agg.max_error, agg.max_residual),
    ):
        for p, iteration in enumerate(agg.iterations):
            records.append(
                TraceRecord(
                    solver=solver,
                    trial=label,
                    iteration=int(iteration),
                    rel_error=float(err[p]),
                    rel_residual=float(resid[p]),
                )
            )
    return records


def write_trace_csv(summary: ExperimentSummary, path: os.PathLike | str) -> None:
    """Write every solver's trace rows from a study to a single CSV file."""
    records: list[TraceRecord] = []
    for token in summary.aggregates:
        records.extend(summary_records(summary, token))
    write_trace_records(path, records)


def summary_json_dict(summary: ExperimentSummary) -> dict:
    """Deterministic JSON payload for a study; excludes wall-clock data."""
    spec = summary.spec
    solvers = {}
    for token in spec.solvers:
        agg = summary.aggregates[token]
        solvers[token] = {
            "success_rate": agg.success_rate,
            "mean_final_error": float(agg.mean_error[-1]),
            "min_final_error": float(agg.min_error[-1]),
            "max_final_error": float(agg.max_error[-1]),
            "final_errors": [float(v) for v in agg.final_errors],
        }
    return {
        "parameters": {
            "m": spec.m,
            "n": spec.n,
            "regime": spec.regime,
            "sparsity_ratio": spec.sparsity_ratio,
            "k": spec.k,
            "khat": spec.support_floor,
            "trials": spec.trials,
            "solvers": list(spec.solvers),
            "seed": spec.seed,
            "max_iterations": spec.max_iterations,
            "trace_stride": spec.trace_stride,
            "fixed_matrix": spec.fixed_matrix,
            "success_threshold": summary.success_threshold,
            "matched_work_budget": summary.matched_work,
        },
        "solvers": solvers,
    }
