"""Exception types shared across the package."""


class InfHeatError(Exception):
    """Base class for package errors."""


class DimensionMismatchError(InfHeatError):
    """A point and a region (or two regions) disagree on the spatial dimension."""


class EmptyRegionError(InfHeatError):
    """An operation needs a nonempty region but probing found no interior point."""


class UnboundedRegionError(InfHeatError):
    """An operation needs a finite enclosing box but the region has none."""


class CFLError(InfHeatError):
    """The explicit time step violates dt <= eps^2/2."""


class SchemeError(InfHeatError):
    """Invalid solver configuration (other than the CFL bound)."""


class ConvergenceError(InfHeatError):
    """The stationary fixed-point sweep did not reach the requested tolerance."""

    def __init__(self, message: str, last_residual: float, iterations: int):
        super().__init__(message)
        self.last_residual = last_residual
        self.iterations = iterations


class FormValidityError(InfHeatError):
    """A closed form was evaluated (or asked to certify) outside its validity set."""


class ConfigError(InfHeatError):
    """An experiment config failed to parse; carries line/column when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        super().__init__(message)
        self.line = line
        self.column = column


class ValidationError(InfHeatError):
    """An experiment config parsed but violates a constraint of some module."""
