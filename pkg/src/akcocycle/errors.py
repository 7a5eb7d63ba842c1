"""Typed exceptions shared across the package."""

from __future__ import annotations


class AkcError(Exception):
    """Base class for all package errors."""


class InvariantViolation(AkcError, ValueError):
    """A value fails its group/algebra membership tolerance."""


class RegimeError(AkcError, ValueError):
    """Operation applied in the wrong elliptic/parabolic/hyperbolic regime."""

    def __init__(self, message, regime=None):
        super().__init__(message)
        self.regime = regime


class DomainError(AkcError, ValueError):
    """Scalar arguments outside the stated domain."""


class BudgetError(AkcError, RuntimeError):
    """A search exhausted its budget; carries the best candidate found."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class ConstructionError(AkcError, RuntimeError):
    """A construction step identity failed beyond tolerance."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class ConventionError(AkcError, RuntimeError):
    """Eigenvalue/sign bookkeeping mismatch; never silently repaired."""


class ConditioningError(AkcError, RuntimeError):
    """Near-singular input to a pointwise inversion."""


class PrecisionLossError(AkcError, ArithmeticError):
    """A signed difference fell below the resolvable precision."""


class PreconditionError(AkcError, RuntimeError):
    """A quantitative smallness precondition does not hold."""


class UniformHyperbolicityObstruction(AkcError, RuntimeError):
    """Spectral-gap test says the cocycle would be uniformly hyperbolic."""

    def __init__(self, message, gap=None, threshold=None):
        super().__init__(message)
        self.gap = gap
        self.threshold = threshold
