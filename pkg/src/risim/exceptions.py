"""Exception hierarchy for risim.

Every error raised by the library derives from :class:`RisimError` and from
the builtin exception a caller would naturally expect (``ValueError`` for bad
parameters, ``IndexError`` for out-of-range antenna indices, and so on), so
either can be caught.
"""

from __future__ import annotations


class RisimError(Exception):
    """Base class for all risim errors."""


class DimensionError(RisimError, ValueError):
    """Array shapes or counts are inconsistent or invalid."""


class ParameterError(RisimError, ValueError):
    """A scalar parameter is outside its valid range."""


class DomainError(ParameterError):
    """A function was evaluated outside the domain where it is defined."""


class AntennaIndexError(RisimError, IndexError):
    """A receive-antenna index is outside ``[1, n_R]``."""


class FramingError(RisimError, ValueError):
    """A bit frame does not match the configured antenna count and order."""


class DemapError(RisimError, ValueError):
    """A decided symbol is not a point of the constellation."""


class ConfigurationError(RisimError, ValueError):
    """A detector or simulation was called with incompatible settings."""


class NumericError(RisimError, ArithmeticError):
    """A numerical procedure failed to reach its tolerance."""

    def __init__(
        self, msg: str, *, estimate: float | None = None, tolerance: float | None = None
    ) -> None:
        super().__init__(msg)
        self.estimate = estimate
        self.tolerance = tolerance


class PoleError(NumericError):
    """A moment generating function was evaluated at (or past) a pole."""
