from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from kaczmarz import RngState

REPO_ROOT = Path(__file__).resolve().parents[1]


@pytest.fixture
def data_dir() -> Path:
    return REPO_ROOT / "data"


@pytest.fixture
def rng() -> RngState:
    return RngState(12345)


def random_matrix(m: int, n: int, seed: int) -> np.ndarray:
    return RngState(seed).normals((m, n))
