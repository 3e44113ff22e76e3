"""Seedable random source with deterministic substream derivation.

All randomness in the package flows through :class:`RngState` so that a run
is fully determined by one integer seed.  Substreams let independent trials
share a base seed without sharing draws.
"""

from __future__ import annotations

import numpy as np

from .errors import ParameterError

_SEED_MAX = 2**64 - 1


class RngState:
    """A PCG64 generator tied to an explicit integer seed."""

    def __init__(self, seed: int):
        if not isinstance(seed, (int, np.integer)) or isinstance(seed, bool):
            raise ParameterError(f"seed must be an integer, got {seed!r}")
        if not 0 <= seed <= _SEED_MAX:
            raise ParameterError(f"seed must be in [0, 2**64 - 1], got {seed}")
        self.seed = int(seed)
        self.generator = np.random.Generator(np.random.PCG64(self.seed))

    def uniform(self) -> float:
        """One draw from U[0, 1)."""
        return float(self.generator.random())

    def normals(self, shape: int | tuple[int, ...]) -> np.ndarray:
        """Standard normal draws with the given shape."""
        return self.generator.standard_normal(shape)

    def integer(self, low: int, high: int) -> int:
        """One integer uniform over [low, high)."""
        if high <= low:
            raise ParameterError(f"empty integer range [{low}, {high})")
        return int(self.generator.integers(low, high))

    def substream(self, offset: int) -> "RngState":
        """Independent stream derived as seed + offset (offset >= 0)."""
        if offset < 0:
            raise ParameterError(f"substream offset must be >= 0, got {offset}")
        return RngState(self.seed + offset)

    def __repr__(self) -> str:
        return f"RngState(seed={self.seed})"
