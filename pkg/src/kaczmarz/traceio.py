"""Convergence trace CSV serialization.

One row per (solver, trial, traced iteration) with relative error and
relative residual, followed by aggregate rows whose trial column holds
``mean``, ``min``, or ``max``.  Floats are rendered with 17 significant
digits so writing, reading, and writing again is byte-identical.
"""

from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigError

HEADER = ("solver", "trial", "iteration", "rel_error", "rel_residual")

AGGREGATE_LABELS = ("mean", "min", "max")


@dataclass(frozen=True)
class TraceRecord:
    """One CSV row; trial is an int for per-trial rows or an aggregate label."""

    solver: str
    trial: int | str
    iteration: int
    rel_error: float
    rel_residual: float


def _format_float(value: float) -> str:
    return f"{value:.16e}"


def write_trace_records(path: os.PathLike | str, records: list[TraceRecord]) -> None:
    """Write records in the given order; output bytes are deterministic."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(HEADER)
    for rec in records:
        writer.writerow(
            (
                rec.solver,
                rec.trial,
                rec.iteration,
                _format_float(rec.rel_error),
                _format_float(rec.rel_residual),
            )
        )
    Path(path).write_text(buf.getvalue(), encoding="ascii")


def read_trace_records(path: os.PathLike | str) -> list[TraceRecord]:
    """Read a trace CSV produced by write_trace_records."""
    path = Path(path)
    with open(path, newline="", encoding="ascii") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ConfigError(f"{path}: empty trace file") from None
        if tuple(header) != HEADER:
            raise ConfigError(
                f"{path}: unexpected header {header!r}, expected {list(HEADER)!r}"
            )
        records: list[TraceRecord] = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(HEADER):
                raise ConfigError(
                    f"{path}:{lineno}: expected {len(HEADER)} columns, got {len(row)}"
                )
            solver, trial_text, iter_text, err_text, resid_text = row
            trial: int | str
            if trial_text in AGGREGATE_LABELS:
                trial = trial_text
            else:
                try:
                    trial = int(trial_text)
                except ValueError:
                    raise ConfigError(
                        f"{path}:{lineno}: bad trial value {trial_text!r}"
                    ) from None
            try:
                iteration = int(iter_text)
                rel_error = float(err_text)
                rel_residual = float(resid_text)
            except ValueError as exc:
                raise ConfigError(f"{path}:{lineno}: {exc}") from None
            records.append(
                TraceRecord(
                    solver=solver,
                    trial=trial,
                    iteration=iteration,
                    rel_error=rel_error,
                    rel_residual=rel_residual,
                )
            )
    return records
