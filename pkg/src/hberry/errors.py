"""Shared exception types.

ValidationError means the input data is malformed (CLI exit code 2);
ComputationError means the data is well-formed but the requested quantity
does not exist or cannot be extracted (CLI exit code 1).
"""


class ValidationError(ValueError):
    """Malformed or inconsistent input data."""


class ComputationError(RuntimeError):
    """Well-formed input for which the computation fails."""


class NotPrimitiveError(ComputationError):
    """Transfer channel has a degenerate peripheral spectrum."""


class NoConvergenceError(ComputationError):
    """Iteration did not reach the requested tolerance."""
