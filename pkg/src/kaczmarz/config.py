"""Experiment config files: strict flat JSON mapped onto ExperimentSpec.

Unknown keys, missing keys, and wrong types are all errors that name the
offending key.  Bundled preset configs live in the package's configs/
directory and can be referenced by bare name instead of a path.
"""

from __future__ import annotations

import json
import os
from importlib import resources
from pathlib import Path

from .errors import ConfigError
from .experiments import ExperimentSpec

REQUIRED_KEYS = (
    "m",
    "n",
    "regime",
    "sparsity_ratio",
    "khat",
    "trials",
    "solvers",
    "seed",
    "max_iterations",
    "trace_stride",
    "fixed_matrix",
)


def _require_int(data: dict, key: str) -> int:
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"key '{key}' must be an integer, got {value!r}")
    return value


def spec_from_dict(data: dict, source: str = "config") -> ExperimentSpec:
    """Validate a parsed JSON object and build the spec."""
    if not isinstance(data, dict):
        raise ConfigError(f"{source}: top level must be a JSON object")
    for key in data:
        if key not in REQUIRED_KEYS:
            raise ConfigError(f"{source}: unknown key '{key}'")
    for key in REQUIRED_KEYS:
        if key not in data:
            raise ConfigError(f"{source}: missing key '{key}'")

    khat_value = data["khat"]
    khat: int | None = None
    khat_ratio: float | None = None
    if isinstance(khat_value, bool):
        raise ConfigError("key 'khat' must be an integer or {\"ratio_of_k\": number}")
    elif isinstance(khat_value, int):
        khat = khat_value
    elif isinstance(khat_value, dict):
        if set(khat_value) != {"ratio_of_k"}:
            raise ConfigError(
                "key 'khat' object form must hold exactly the key 'ratio_of_k'"
            )
        ratio = khat_value["ratio_of_k"]
        if isinstance(ratio, bool) or not isinstance(ratio, (int, float)):
            raise ConfigError(f"key 'khat' ratio_of_k must be a number, got {ratio!r}")
        khat_ratio = float(ratio)
    else:
        raise ConfigError(
            f"key 'khat' must be an integer or {{\"ratio_of_k\": number}}, got {khat_value!r}"
        )

    regime = data["regime"]
    if not isinstance(regime, str):
        raise ConfigError(f"key 'regime' must be a string, got {regime!r}")
    ratio = data["sparsity_ratio"]
    if isinstance(ratio, bool) or not isinstance(ratio, (int, float)):
        raise ConfigError(f"key 'sparsity_ratio' must be a number, got {ratio!r}")
    solvers = data["solvers"]
    if not isinstance(solvers, list) or not all(isinstance(s, str) for s in solvers):
        raise ConfigError(f"key 'solvers' must be a list of strings, got {solvers!r}")
    fixed = data["fixed_matrix"]
    if not isinstance(fixed, bool):
        raise ConfigError(f"key 'fixed_matrix' must be a boolean, got {fixed!r}")

    try:
        return ExperimentSpec(
            m=_require_int(data, "m"),
            n=_require_int(data, "n"),
            regime=regime,
            sparsity_ratio=float(ratio),
            trials=_require_int(data, "trials"),
            solvers=tuple(solvers),
            seed=_require_int(data, "seed"),
            max_iterations=_require_int(data, "max_iterations"),
            trace_stride=_require_int(data, "trace_stride"),
            khat=khat,
            khat_ratio=khat_ratio,
            fixed_matrix=fixed,
        )
    except ConfigError as exc:
        raise ConfigError(f"{source}: {exc}") from None


def preset_names() -> list[str]:
    """Names of the bundled configs, sorted."""
    root = resources.files("kaczmarz").joinpath("configs")
    return sorted(p.name[: -len(".json")] for p in root.iterdir() if p.name.endswith(".json"))


def read_experiment_config(ref: os.PathLike | str) -> ExperimentSpec:
    """Load a config from a file path or a bundled preset name."""
    path = Path(ref)
    if path.is_file():
        text = path.read_text(encoding="utf-8")
        source = str(path)
    else:
        name = str(ref)
        resource = resources.files("kaczmarz").joinpath("configs", f"{name}.json")
        if not resource.is_file():
            raise ConfigError(
                f"{name!r} is neither a config file nor a preset; presets: {', '.join(preset_names())}"
            )
        text = resource.read_text(encoding="utf-8")
        source = f"preset {name}"
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{source}: invalid JSON: {exc}") from None
    return spec_from_dict(data, source=source)
