"""Exception hierarchy.

Two families: :class:`DomainError` for inputs outside a function's domain
(the CLI maps these to exit code 2) and :class:`NumericalError` for
algorithms that fail to meet their tolerance (exit code 1).
"""


class FussCatalanError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(FussCatalanError, ValueError):
    """An argument lies outside the domain of the operation."""


class OutsideSupportError(DomainError):
    pass


class AtomError(DomainError):
    """The measure is a point mass and has no density."""


class BracketError(DomainError):
    """Root bracket endpoints do not straddle a sign change."""


class UnsupportedFamilyError(DomainError):
    pass


class NumericalError(FussCatalanError, ArithmeticError):
    """A numerical method failed to converge or to find what it looks for."""


class QuadratureError(NumericalError):
    pass


class RootFindingError(NumericalError):
    pass


class NoFlipError(NumericalError):
    """A bisection predicate had the same value at both ends of the bracket."""


class SeriesDivergenceWarning(RuntimeWarning):
    """A truncated power series was evaluated outside its estimated disc."""
