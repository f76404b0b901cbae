"""Exception types raised by the simulator."""


class DCEError(Exception):
    """Base class for all simulator errors."""


class ValidationError(DCEError, ValueError):
    """An input value violates a precondition.

    ``field`` names the offending parameter so callers (and the CLI) can
    report it without parsing the message.
    """

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")


class ConfigError(ValidationError):
    """Malformed configuration document; ``line`` is 1-based or None."""

    def __init__(self, field, message, line=None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        ValueError.__init__(self, f"{where}{field}: {message}")
        self.field = field


class NumericalError(DCEError, ArithmeticError):
    """A numerical procedure did not reach its target accuracy.

    Carries the best available estimate and its error bound.
    """

    def __init__(self, message, estimate=None, error=None):
        self.estimate = estimate
        self.error = error
        super().__init__(message)


class ConvergenceError(NumericalError):
    """A truncated series was too short for the requested tolerance."""


class RangeError(NumericalError):
    """Result would be astronomically large (argument out of range)."""


class IntegrationError(NumericalError):
    """ODE integration failed; ``t`` and ``state`` are the last accepted step."""

    def __init__(self, message, t=None, state=None):
        self.t = t
        self.state = state
        super().__init__(message, estimate=state)
