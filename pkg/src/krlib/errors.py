"""Exception types shared across the library."""

from __future__ import annotations


class ChainConditionError(ValueError):
    """A base-set enumeration violates a required difference condition."""

    def __init__(self, message: str, pair: tuple = ()):  # pair: offending weights
        super().__init__(message)
        self.pair = pair


class TheoremCheckError(AssertionError):
    """A computed decomposition contradicts an asserted identity."""


class DimensionGuardError(RuntimeError):
    """A computation was aborted because it exceeded the dimension guard.

    Raise the limit through the KR_MAX_DIM environment variable or the
    max_dim argument of the operation.
    """


class ScopeError(ValueError):
    """The requested object is outside the matrix-realization scope."""
