from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from kaczmarz import ConfigError, RngState, TraceRecord, read_trace_records, write_trace_records


def sample_records() -> list[TraceRecord]:
    rng = RngState(17)
    records = []
    for trial in (0, 1):
        for iteration in (10, 20, 30):
            records.append(
                TraceRecord("rk", trial, iteration, rng.uniform(), rng.uniform())
            )
    for label in ("mean", "min", "max"):
        for iteration in (10, 20, 30):
            records.append(
                TraceRecord("rk", label, iteration, rng.uniform(), rng.uniform())
            )
    return records


def test_round_trip_preserves_records(tmp_path: Path) -> None:
    path = tmp_path / "t.csv"
    records = sample_records()
    write_trace_records(path, records)
    assert read_trace_records(path) == records


def test_write_read_write_is_byte_identical(tmp_path: Path) -> None:
    first = tmp_path / "a.csv"
    second = tmp_path / "b.csv"
    write_trace_records(first, sample_records())
    write_trace_records(second, read_trace_records(first))
    assert first.read_bytes() == second.read_bytes()


def test_floats_round_trip_exactly(tmp_path: Path) -> None:
    values = [1.0 / 3.0, 2.0**-30, 1e300, 5.551115123125783e-17]
    records = [TraceRecord("srk", 0, i + 1, v, v) for i, v in enumerate(values)]
    path = tmp_path / "f.csv"
    write_trace_records(path, records)
    back = read_trace_records(path)
    assert [r.rel_error for r in back] == values


def test_nan_errors_survive_round_trip(tmp_path: Path) -> None:
    path = tmp_path / "nan.csv"
    write_trace_records(path, [TraceRecord("rk", 0, 1, float("nan"), 0.5)])
    back = read_trace_records(path)
    assert np.isnan(back[0].rel_error)
    assert back[0].rel_residual == 0.5


def test_header_written_once(tmp_path: Path) -> None:
    path = tmp_path / "h.csv"
    write_trace_records(path, sample_records())
    lines = path.read_text().splitlines()
    assert lines[0] == "solver,trial,iteration,rel_error,rel_residual"
    assert len(lines) == 1 + len(sample_records())


def test_wrong_header_rejected(tmp_path: Path) -> None:
    path = tmp_path / "bad.csv"
    path.write_text("a,b,c\n1,2,3\n")
    with pytest.raises(ConfigError, match="header"):
        read_trace_records(path)


def test_empty_file_rejected(tmp_path: Path) -> None:
    path = tmp_path / "empty.csv"
    path.write_text("")
    with pytest.raises(ConfigError, match="empty"):
        read_trace_records(path)


def test_bad_trial_token_rejected(tmp_path: Path) -> None:
    path = tmp_path / "badtrial.csv"
    path.write_text(
        "solver,trial,iteration,rel_error,rel_residual\nrk,median,1,0.0,0.0\n"
    )
    with pytest.raises(ConfigError, match="median"):
        read_trace_records(path)


def test_short_row_reports_line(tmp_path: Path) -> None:
    path = tmp_path / "short.csv"
    path.write_text("solver,trial,iteration,rel_error,rel_residual\nrk,0,1\n")
    with pytest.raises(ConfigError, match=":2"):
        read_trace_records(path)
