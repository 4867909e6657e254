"""Exception hierarchy shared by every module of the package."""


class TaylorBiorthError(Exception):
    """Base class for all library errors."""


class ParseError(TaylorBiorthError, ValueError):
    """Malformed signal expression.

    ``position`` is the 0-based character offset at which parsing failed.
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class DomainError(TaylorBiorthError, ArithmeticError):
    """A function was evaluated outside its mathematical domain."""


class QuadratureError(TaylorBiorthError, ArithmeticError):
    """Numerical integration failed to converge or met a non-finite sample."""


class ValidationError(TaylorBiorthError, ValueError):
    """Bad user input (region of convergence, grid, base point ...)."""
