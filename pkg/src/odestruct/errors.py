"""Exception types shared across the package."""


class OdestructError(Exception):
    """Base class for all package errors."""


class ZeroDenominator(OdestructError):
    """Division by an expression that normalizes to zero."""


class DegenerateStructure(OdestructError):
    """The ansatz does not depend on y (zeta_y is identically zero)."""


class MissingBinding(OdestructError):
    """Numeric evaluation hit an unknown function without a binding."""


class NonFiniteResult(OdestructError):
    """Numeric evaluation produced inf or nan (typically a pole)."""


class DivisionInexact(OdestructError):
    """Polynomial division left a nonzero remainder."""


class ExhaustedRetries(OdestructError):
    """Random instance generation could not satisfy the constraints."""


class DegreeMismatch(OdestructError):
    """The structure cannot reach the target ODE's y-degrees."""


class BranchLimitExceeded(OdestructError):
    """Case splitting hit the branch budget; carries the partial result."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial if partial is not None else []


class SearchExhausted(OdestructError):
    """Undetermined-coefficient search ended without a validated solution."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial if partial is not None else []


class RestrictionViolated(OdestructError):
    """A nonvanishing restriction failed symbolically or at sample points."""

    def __init__(self, message, restriction=None, where=None):
        super().__init__(message)
        self.restriction = restriction
        self.where = where


class ParticularSolutionInvalid(OdestructError):
    """A supplied particular solution does not satisfy its equation."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class SuppliedA2Invalid(OdestructError):
    """The supplied second-order solution fails its residual check."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class PoleEncountered(OdestructError):
    """Trajectory integration ran into a pole; carries the last safe x."""

    def __init__(self, message, last_safe_x=None):
        super().__init__(message)
        self.last_safe_x = last_safe_x


class StepFailure(OdestructError):
    """The adaptive integrator could not make progress."""


class ParseError(OdestructError):
    """Text input rejected; carries position and expectation."""

    def __init__(self, position, expected):
        super().__init__(f"at position {position}: {expected}")
        self.position = position
        self.expected = expected


class NotPolynomialInY(OdestructError):
    """ODE numerator or denominator is not polynomial in y."""
