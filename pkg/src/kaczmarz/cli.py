"""Command line front end.

Subcommands: solve (one system, one solver), generate (random sparse
instance to MatrixMarket files), reproduce (bundled or custom multi-trial
study), diagnose (scaled condition number).  Exit codes: 0 success, 1 usage
error, 2 runtime failure (bad input files, degenerate problems, failed
trials).  Every run echoes the resolved parameter set, including the seed,
to standard error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import os
import sys
import time
from pathlib import Path

import numpy as np

from .condition import scaled_condition_number, singular_values
from .config import read_experiment_config
from .errors import KaczmarzError
from .experiments import run_experiment, summary_json_dict, summary_records
from .linalg import column_submatrix, frobenius_norm_sq, gaussian_matrix
from .mmio import read_matrix_market, read_vector, write_matrix_market, write_vector
from .rng import RngState
from .signals import gen_sparse_signal
from .solvers import IterationTrace, SolverConfig, solve_rk, solve_srk
from .traceio import TraceRecord, write_trace_records

USAGE_EXIT = 1
RUNTIME_EXIT = 2

JOBS_ENV_VAR = "KACZMARZ_JOBS"


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped to exit code 1."""

    def error(self, message: str):  # noqa: D401 argparse contract
        self.print_usage(sys.stderr)
        self.exit(USAGE_EXIT, f"{self.prog}: error: {message}\n")


def _echo_parameters(command: str, **params: object) -> None:
    rendered = " ".join(f"{key}={value}" for key, value in params.items())
    print(f"parameters: command={command} {rendered}", file=sys.stderr)


def _trace_to_records(trace: IterationTrace, solver: str) -> list[TraceRecord]:
    return [
        TraceRecord(
            solver=solver,
            trial=0,
            iteration=int(trace.iterations[p]),
            rel_error=float(trace.relative_error[p]),
            rel_residual=float(trace.relative_residual[p]),
        )
        for p in range(trace.iterations.shape[0])
    ]


def _cmd_solve(args: argparse.Namespace, parser: _Parser) -> int:
    if args.algorithm == "srk" and args.khat is None:
        parser.error("--khat is required when --algorithm is srk")
    if args.khat is not None and args.khat < 1:
        parser.error(f"--khat must be >= 1, got {args.khat}")
    if args.max_iters is not None and args.max_iters < 1:
        parser.error(f"--max-iters must be >= 1, got {args.max_iters}")
    if args.tol < 0:
        parser.error(f"--tol must be >= 0, got {args.tol}")
    if args.trace_stride < 1:
        parser.error(f"--trace-stride must be >= 1, got {args.trace_stride}")
    a = read_matrix_market(args.matrix)
    b = read_vector(args.rhs)
    m, n = a.shape
    max_iters = args.max_iters
    if max_iters is None:
        max_iters = 10 * n if m >= n else 100 * m
    config = SolverConfig(
        max_iterations=max_iters,
        seed=args.seed,
        support_floor=args.khat,
        residual_tolerance=args.tol,
        trace_stride=args.trace_stride,
    )
    _echo_parameters(
        "solve",
        matrix=args.matrix,
        rhs=args.rhs,
        algorithm=args.algorithm,
        m=m,
        n=n,
        seed=args.seed,
        max_iterations=max_iters,
        tol=args.tol,
        khat=args.khat,
        trace_stride=args.trace_stride,
    )
    if args.algorithm == "rk":
        trace = solve_rk(a, b, config)
    else:
        trace = solve_srk(a, b, config)
    if args.solution_out:
        write_vector(args.solution_out, trace.final_x)
    if args.trace_out:
        write_trace_records(args.trace_out, _trace_to_records(trace, args.algorithm))
    print(
        f"iterations={trace.iterations_used} "
        f"final_residual={trace.relative_residual[-1]:.17g}"
    )
    return 0


def _cmd_generate(args: argparse.Namespace, parser: _Parser) -> int:
    if args.m < 1 or args.n < 1:
        parser.error(f"--m and --n must be >= 1, got m={args.m}, n={args.n}")
    if args.k < 1 or args.k > args.n:
        parser.error(f"--k must lie in [1, n], got k={args.k}, n={args.n}")
    _echo_parameters(
        "generate", m=args.m, n=args.n, k=args.k, seed=args.seed,
        matrix_out=args.matrix_out, rhs_out=args.rhs_out, signal_out=args.signal_out,
    )
    rng = RngState(args.seed)
    a = gaussian_matrix(args.m, args.n, rng)
    signal = gen_sparse_signal(args.n, args.k, rng)
    b = a @ signal.vector
    write_matrix_market(args.matrix_out, a)
    write_vector(args.rhs_out, b)
    write_vector(args.signal_out, signal.vector)
    print(f"wrote {args.matrix_out}, {args.rhs_out}, {args.signal_out}")
    return 0


def _resolve_jobs(flag_value: int | None) -> int:
    if flag_value is not None:
        return flag_value
    env = os.environ.get(JOBS_ENV_VAR)
    if env is not None:
        try:
            jobs = int(env)
        except ValueError:
            raise KaczmarzError(
                f"{JOBS_ENV_VAR} must be an integer, got {env!r}"
            ) from None
        if jobs < 1:
            raise KaczmarzError(f"{JOBS_ENV_VAR} must be >= 1, got {jobs}")
        return jobs
    return os.cpu_count() or 1


def _cmd_reproduce(args: argparse.Namespace, parser: _Parser) -> int:
    if args.jobs is not None and args.jobs < 1:
        parser.error(f"--jobs must be >= 1, got {args.jobs}")
    spec = read_experiment_config(args.config)
    if args.fixed_matrix:
        spec = dataclasses.replace(spec, fixed_matrix=True)
    jobs = _resolve_jobs(args.jobs)
    _echo_parameters(
        "reproduce",
        config=args.config,
        out_dir=args.out_dir,
        jobs=jobs,
        m=spec.m,
        n=spec.n,
        regime=spec.regime,
        sparsity_ratio=spec.sparsity_ratio,
        k=spec.k,
        khat=spec.support_floor,
        trials=spec.trials,
        solvers=",".join(spec.solvers),
        seed=spec.seed,
        max_iterations=spec.max_iterations,
        trace_stride=spec.trace_stride,
        fixed_matrix=spec.fixed_matrix,
    )

    milestone = max(1, spec.trials // 10)

    def progress(done: int, total: int) -> None:
        if done % milestone == 0 or done == total:
            print(f"progress: {done}/{total} trials", file=sys.stderr)

    start = time.perf_counter()
    summary = run_experiment(spec, jobs=jobs, progress=progress)
    total_seconds = time.perf_counter() - start

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for token in spec.solvers:
        write_trace_records(out_dir / f"{token}.csv", summary_records(summary, token))
    payload = json.dumps(summary_json_dict(summary), indent=2) + "\n"
    (out_dir / "summary.json").write_text(payload, encoding="ascii")
    timings = {
        "total_seconds": total_seconds,
        "trial_seconds": [float(v) for v in summary.trial_seconds],
    }
    (out_dir / "timings.json").write_text(
        json.dumps(timings, indent=2) + "\n", encoding="ascii"
    )
    for token in spec.solvers:
        rate = summary.aggregates[token].success_rate
        mean_final = float(summary.aggregates[token].mean_error[-1])
        print(f"{token}: success_rate={rate:.2f} mean_final_error={mean_final:.6e}")
    return 0


def _cmd_diagnose(args: argparse.Namespace, parser: _Parser) -> int:
    a = read_matrix_market(args.matrix)
    selected = None
    if args.columns:
        try:
            columns = [int(tok) for tok in args.columns.split(",") if tok.strip()]
        except ValueError:
            parser.error(f"--columns must be a comma-separated integer list, got {args.columns!r}")
        if not columns:
            parser.error("--columns must name at least one column")
        for c in columns:
            if not 1 <= c <= a.shape[1]:
                parser.error(
                    f"--columns entry {c} out of range [1, {a.shape[1]}]"
                )
        selected = column_submatrix(a, np.asarray(columns, dtype=np.int64) - 1)
    _echo_parameters(
        "diagnose", matrix=args.matrix, m=a.shape[0], n=a.shape[1],
        columns=args.columns or "all",
    )
    kappa = scaled_condition_number(a)
    frob = math.sqrt(frobenius_norm_sq(a))
    sigma_min = float(singular_values(a)[-1])
    lines = [
        f"frobenius_norm={frob:.17g}",
        f"sigma_min={sigma_min:.17g}",
        f"scaled_condition_number={kappa:.17g}",
    ]
    if selected is not None:
        kappa_sub = scaled_condition_number(selected)
        lines.append(f"subset_scaled_condition_number={kappa_sub:.17g}")
        lines.append(f"subset_to_full_ratio={kappa_sub / kappa:.17g}")
    print("\n".join(lines))
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="kaczmarz", description="Randomized Kaczmarz solvers and studies")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_solve = sub.add_parser("solve", help="solve one system from MatrixMarket files")
    p_solve.add_argument("--matrix", required=True, help="coefficient matrix (.mtx)")
    p_solve.add_argument("--rhs", required=True, help="right-hand side vector (.mtx)")
    p_solve.add_argument("--algorithm", required=True, choices=["rk", "srk"])
    p_solve.add_argument("--khat", type=int, help="support size floor (srk only)")
    p_solve.add_argument(
        "--max-iters", type=int, dest="max_iters",
        help="iteration budget (default: 10n tall systems, 100m wide ones)",
    )
    p_solve.add_argument("--seed", type=int, default=0)
    p_solve.add_argument("--tol", type=float, default=0.0,
                         help="relative residual early-stop threshold (0 disables)")
    p_solve.add_argument("--trace-stride", type=int, default=1, dest="trace_stride")
    p_solve.add_argument("--solution-out", help="write final iterate (.mtx)")
    p_solve.add_argument("--trace-out", help="write convergence trace (.csv)")
    p_solve.set_defaults(func=_cmd_solve)

    p_gen = sub.add_parser("generate", help="generate a random sparse instance")
    p_gen.add_argument("--m", type=int, required=True)
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--k", type=int, required=True, help="nonzeros in the signal")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--matrix-out", required=True)
    p_gen.add_argument("--rhs-out", required=True)
    p_gen.add_argument("--signal-out", required=True)
    p_gen.set_defaults(func=_cmd_generate)

    p_rep = sub.add_parser("reproduce", help="run a bundled or custom study")
    p_rep.add_argument("--config", required=True,
                       help="preset name (e.g. fig1_k010) or JSON config path")
    p_rep.add_argument("--out-dir", required=True)
    p_rep.add_argument("--jobs", type=int,
                       help=f"worker processes (default: {JOBS_ENV_VAR} or CPU count)")
    p_rep.add_argument("--fixed-matrix", action="store_true",
                       help="reuse one matrix across trials")
    p_rep.set_defaults(func=_cmd_reproduce)

    p_diag = sub.add_parser("diagnose", help="scaled condition number of a matrix")
    p_diag.add_argument("--matrix", required=True)
    p_diag.add_argument("--columns", help="1-based comma-separated column subset")
    p_diag.set_defaults(func=_cmd_diagnose)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args, parser)
    except SystemExit as exc:
        # argparse help/usage paths; _Parser maps usage failures to 1
        return int(exc.code) if exc.code is not None else 0
    except KaczmarzError as exc:
        print(f"kaczmarz: error: {exc}", file=sys.stderr)
        return RUNTIME_EXIT


if __name__ == "__main__":
    sys.exit(main())
