from __future__ import annotations

import json
from pathlib import Path

import pytest

from kaczmarz import ConfigError, read_experiment_config, preset_names, spec_from_dict


def valid_payload() -> dict:
    return {
        "m": 40,
        "n": 12,
        "regime": "overdetermined",
        "sparsity_ratio": 0.25,
        "khat": 6,
        "trials": 4,
        "solvers": ["rk", "srk"],
        "seed": 0,
        "max_iterations": 100,
        "trace_stride": 10,
        "fixed_matrix": False,
    }


def test_bundled_presets_all_load() -> None:
    names = preset_names()
    assert names == [
        "fig1_k010",
        "fig1_k020",
        "fig1_k040",
        "fig1_k060",
        "fig2_k010",
        "fig2_k020",
        "fig2_k025",
    ]
    for name in names:
        read_experiment_config(name)


def test_overdetermined_presets_match_study_parameters() -> None:
    spec = read_experiment_config("fig1_k010")
    assert (spec.m, spec.n) == (1000, 200)
    assert spec.regime == "overdetermined"
    assert spec.sparsity_ratio == 0.1
    assert spec.k == 20
    assert spec.support_floor == 40
    assert spec.trials == 20
    assert spec.solvers == ("rk", "srk", "rk_oracle")
    assert spec.seed == 0
    assert spec.max_iterations == 10 * spec.n
    assert spec.trace_stride == 10
    assert read_experiment_config("fig1_k060").support_floor == 160


def test_underdetermined_presets_match_study_parameters() -> None:
    spec = read_experiment_config("fig2_k010")
    assert (spec.m, spec.n) == (100, 400)
    assert spec.regime == "underdetermined"
    assert spec.k == 10
    assert spec.support_floor == 25
    assert spec.max_iterations == 100 * spec.m
    assert spec.solvers == ("rk", "srk")
    assert read_experiment_config("fig2_k020").support_floor == 20
    assert read_experiment_config("fig2_k025").support_floor == 15


def test_read_experiment_config_from_path(tmp_path: Path) -> None:
    path = tmp_path / "exp.json"
    path.write_text(json.dumps(valid_payload()))
    spec = read_experiment_config(path)
    assert spec.m == 40 and spec.support_floor == 6


def test_unknown_preset_names_available_ones() -> None:
    with pytest.raises(ConfigError, match="fig1_k010"):
        read_experiment_config("not_a_preset")


def test_invalid_json_rejected(tmp_path: Path) -> None:
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(ConfigError, match="invalid JSON"):
        read_experiment_config(path)


def test_unknown_key_is_named() -> None:
    payload = valid_payload()
    payload["extra_knob"] = 1
    with pytest.raises(ConfigError, match="extra_knob"):
        spec_from_dict(payload)


def test_missing_key_is_named() -> None:
    payload = valid_payload()
    del payload["trials"]
    with pytest.raises(ConfigError, match="'trials'"):
        spec_from_dict(payload)


@pytest.mark.parametrize(
    ("key", "value"),
    [
        ("m", "1000"),
        ("m", 10.5),
        ("m", True),
        ("regime", 3),
        ("sparsity_ratio", "0.1"),
        ("solvers", "rk"),
        ("solvers", [1, 2]),
        ("fixed_matrix", "no"),
        ("trials", 0),
        ("seed", -4),
    ],
)
def test_bad_value_names_key(key: str, value: object) -> None:
    payload = valid_payload()
    payload[key] = value
    with pytest.raises(ConfigError, match=f"'{key}'"):
        spec_from_dict(payload)


def test_khat_object_form() -> None:
    payload = valid_payload()
    payload["khat"] = {"ratio_of_k": 2.0}
    spec = spec_from_dict(payload)
    assert spec.support_floor == 6  # ceil(2.0 * 3)


@pytest.mark.parametrize(
    "bad",
    [
        {"ratio": 2.0},
        {"ratio_of_k": 2.0, "extra": 1},
        {"ratio_of_k": "two"},
        "6",
        6.5,
        None,
        True,
    ],
)
def test_bad_khat_forms_rejected(bad: object) -> None:
    payload = valid_payload()
    payload["khat"] = bad
    with pytest.raises(ConfigError, match="'khat'"):
        spec_from_dict(payload)


def test_top_level_must_be_object() -> None:
    with pytest.raises(ConfigError, match="object"):
        spec_from_dict([1, 2, 3])  # type: ignore[arg-type]


def test_source_appears_in_errors(tmp_path: Path) -> None:
    payload = valid_payload()
    payload["trials"] = -1
    path = tmp_path / "named.json"
    path.write_text(json.dumps(payload))
    with pytest.raises(ConfigError, match="named.json"):
        read_experiment_config(path)
