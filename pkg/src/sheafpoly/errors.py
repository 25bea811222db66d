"""Exception hierarchy for the exact pipeline.

Every failure mode that falsifies a claimed identity gets its own class so the
CLI can distinguish bad input (exit 2) from a violated identity (exit 3).
"""

from __future__ import annotations


class PipelineError(Exception):
    """Base class for all package errors."""


class InputError(PipelineError):
    """Malformed input file or inconsistent configuration."""


class NotDivisibleError(PipelineError):
    """An exact polynomial division left a nonzero remainder."""


class MissingGVError(PipelineError):
    """A required BPS table row is absent."""


class NonPolynomialContributionError(PipelineError):
    """A tree contribution failed to clear its denominator."""


class NonIntegerGVError(PipelineError):
    """Inverse mode produced a non-integer BPS invariant."""


class NegativeCoefficientError(PipelineError):
    """A solved Poincare polynomial has a negative or non-integer coefficient."""


class DegreeBoundError(PipelineError):
    """A combination exceeded its proven degree bound."""


class UnsupportedGcdError(PipelineError):
    """Stack series requested for a gcd with no built-in or supplied convention."""


class MissingRefinedDataError(PipelineError):
    """A refined check was requested without refined input data."""
