"""Exception types raised by the public API."""

from __future__ import annotations


class KaczmarzError(RuntimeError):
    """Base class for all errors raised by this package."""


class DimensionError(KaczmarzError):
    """Operands have incompatible or invalid shapes."""


class ParameterError(KaczmarzError):
    """A scalar argument is out of its valid range."""


class DegenerateMatrixError(KaczmarzError):
    """The matrix cannot drive the requested operation (e.g. all rows zero)."""


class SingularMatrixError(KaczmarzError):
    """The smallest singular value is zero to working precision."""


class MatrixMarketError(KaczmarzError):
    """A MatrixMarket file failed to parse; message carries file and line."""


class ConfigError(KaczmarzError):
    """An experiment config is malformed; message names the offending key."""


class ExperimentError(KaczmarzError):
    """One or more experiment trials failed.

    ``failures`` holds (trial_index, message) pairs in trial order.
    """

    def __init__(self, failures: list[tuple[int, str]]):
        self.failures = list(failures)
        lines = ", ".join(f"trial {t}: {msg}" for t, msg in self.failures)
        super().__init__(f"{len(self.failures)} trial(s) failed: {lines}")
