"""Exception types shared across the solver modules."""


class SolverError(Exception):
    """Base class for failures raised by the numerical routines."""


class InvalidArgumentError(SolverError, ValueError):
    pass


class SourceOutOfDomainError(SolverError, ValueError):
    pass


class UnsupportedRegimeError(SolverError, ValueError):
    """Raised for parameter regimes the schemes do not cover (e.g. beta <= 0)."""


class DegenerateDenominatorError(SolverError, ArithmeticError):
    def __init__(self, message, source_index=None):
        super().__init__(message)
        self.source_index = source_index


class DegenerateTimestepError(SolverError, ArithmeticError):
    pass


class DivergenceError(SolverError, ArithmeticError):
    """Non-finite values appeared during time integration."""

    def __init__(self, message, step, t=None):
        super().__init__(message)
        self.step = step
        self.t = t


class ConfigError(ValueError):
    """Invalid experiment configuration; ``field`` names the offending key."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


class PositivityViolation(SolverError, ArithmeticError):
    """Bracket values lost positivity under a step size covered by the
    positivity bound."""

    def __init__(self, message, step):
        super().__init__(message)
        self.step = step
