"""Randomized Kaczmarz solvers with a sparse support-weighted variant.

The package bundles the two iterative solvers, a best-case baseline that
knows the true support, random problem generators, a deterministic
multi-trial experiment harness, MatrixMarket and CSV serialization, and a
command line front end (``kaczmarz``).
"""

from .condition import charpoly_singular_values, scaled_condition_number, singular_values
from .config import preset_names, read_experiment_config, spec_from_dict
from .errors import (
    ConfigError,
    DegenerateMatrixError,
    DimensionError,
    ExperimentError,
    KaczmarzError,
    MatrixMarketError,
    ParameterError,
    SingularMatrixError,
)
from .experiments import (
    SUCCESS_THRESHOLD,
    ExperimentSpec,
    ExperimentSummary,
    SolverAggregate,
    matched_work_budget,
    run_experiment,
    summary_json_dict,
    summary_records,
    write_trace_csv,
)
from .linalg import (
    column_submatrix,
    dot,
    embed_vector,
    frobenius_norm_sq,
    gaussian_matrix,
    hadamard,
    norm2_sq,
)
from .mmio import read_matrix_market, read_vector, write_matrix_market, write_vector
from .rng import RngState
from .sampling import RowSampler, build_row_sampler, sample_row
from .signals import SparseSignal, gen_sparse_signal, relative_error
from .solvers import (
    IterationTrace,
    SolverConfig,
    rk_step,
    solve_rk,
    solve_rk_reduced,
    solve_srk,
    srk_step,
    support_estimate,
    weight_vector,
)
from .traceio import TraceRecord, read_trace_records, write_trace_records

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "DegenerateMatrixError",
    "DimensionError",
    "ExperimentError",
    "ExperimentSpec",
    "ExperimentSummary",
    "IterationTrace",
    "KaczmarzError",
    "MatrixMarketError",
    "ParameterError",
    "RngState",
    "RowSampler",
    "SingularMatrixError",
    "SolverAggregate",
    "SolverConfig",
    "SparseSignal",
    "SUCCESS_THRESHOLD",
    "TraceRecord",
    "build_row_sampler",
    "charpoly_singular_values",
    "column_submatrix",
    "dot",
    "embed_vector",
    "frobenius_norm_sq",
    "gaussian_matrix",
    "gen_sparse_signal",
    "hadamard",
    "matched_work_budget",
    "norm2_sq",
    "preset_names",
    "read_experiment_config",
    "read_matrix_market",
    "read_trace_records",
    "read_vector",
    "relative_error",
    "rk_step",
    "run_experiment",
    "sample_row",
    "scaled_condition_number",
    "singular_values",
    "solve_rk",
    "solve_rk_reduced",
    "solve_srk",
    "spec_from_dict",
    "srk_step",
    "summary_json_dict",
    "summary_records",
    "support_estimate",
    "weight_vector",
    "write_matrix_market",
    "write_trace_csv",
    "write_trace_records",
    "write_vector",
]
