"""
Error Hierarchy
================
Every failure the library can raise derives from ``JointriError``, which is a
``ValueError`` so callers that only care about "bad input" can catch the
builtin.

The CLI maps these classes onto exit codes (see ``jointri.cli``).
"""

from __future__ import annotations


class JointriError(ValueError):
    """Base class for all library errors."""


class InvalidDimensions(JointriError):
    """Matrix shape is unusable for the requested operation."""


class NonFiniteEntries(JointriError):
    """Matrix or vector contains NaN or Inf."""


class DimensionMismatch(JointriError):
    """Two operands disagree on a shared dimension."""


class RankDeficient(JointriError):
    """A matrix that must be full rank is (numerically) singular."""


class NotMajorized(JointriError):
    """Requested diagonal (or ratio) vector is not majorized by the spectrum."""

    def __init__(self, message: str, prefix_index: int | None = None) -> None:
        super().__init__(message)
        self.prefix_index = prefix_index


class InconsistentFactors(JointriError):
    """Supplied factorization does not reproduce the matrix it claims to."""


class InvalidBlockSpec(JointriError):
    """Block partition does not conform to the matrix."""


class NotFeasible(JointriError):
    """Scheme precondition (e.g. the HDA product condition) fails."""


class InvariantViolation(JointriError):
    """A post-condition identity failed beyond tolerance."""


class ConfigError(JointriError):
    """Tolerance profile or scenario file is malformed."""


class MatrixParseError(JointriError):
    """Plain-text matrix file could not be parsed."""


class InvalidCovariance(JointriError):
    """Transmit covariance is not Hermitian PSD within its power budget."""
