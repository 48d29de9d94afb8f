"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the domain of an operation."""

    def __init__(self, parameter, message):
        super().__init__(f"{parameter}: {message}")
        self.parameter = parameter


class ContractError(RuntimeError):
    """A caller asked for arithmetic the model cannot provide (e.g. finite
    permittivity of a perfect conductor)."""


class ConvergenceError(RuntimeError):
    """Numerical procedure failed to reach its tolerance.

    ``residual`` is the last error estimate; ``partial`` carries whatever
    partial result the procedure had accumulated.
    """

    def __init__(self, message, residual=None, partial=None):
        super().__init__(message)
        self.residual = residual
        self.partial = partial
