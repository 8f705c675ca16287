"""Shared exception types."""


class DomainError(ValueError):
    """Point or parameter outside the geometry's domain of validity."""


class PoleError(ValueError):
    """Series parameter sits on a pole (nonpositive-integer denominator)."""


class ConvergenceError(RuntimeError):
    """Series or iteration failed to converge within its term cap."""


class SingularityError(ValueError):
    """Numeric evaluation hit a coefficient pole (e.g. y = 0)."""


class NoBoundStateError(ValueError):
    """Requested level lies outside the bound-state window 0 <= l < beta - 1/2."""


class NonNormalizableError(ValueError):
    """Wavefunction norm diverges on the invariant measure."""


class ResolutionError(RuntimeError):
    """Grid too coarse to resolve the requested number of bound states."""


class FitSingularError(ValueError):
    """Degenerate (collinear) data handed to the circle fit."""


class PauliViolationError(ValueError):
    """Repeated single-particle quantum numbers in a Slater determinant."""
