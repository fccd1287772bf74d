"""Exception hierarchy shared by the evaluators, the formula engine and the CLI."""


class MZVError(Exception):
    """Base class for all errors raised by :mod:`mzvtools`."""


class CompositionError(MZVError, ValueError):
    """Malformed composition literal or mismatched lengths."""


class DivergenceError(MZVError, ValueError):
    """The requested series or integral does not converge (e.g. a non-admissible index at 1)."""


class DomainError(MZVError, ValueError):
    """A parameter lies outside the supported domain (``alpha >= 1``, ``|x| > 1``, ...)."""


class ConvergenceError(MZVError, ArithmeticError):
    """The requested tolerance could not be reached within the work limits."""
