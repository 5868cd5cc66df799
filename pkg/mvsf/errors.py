"""Exception hierarchy.

Precondition failures are ValueErrors, numerical failures ArithmeticErrors.
"""


class MvsfError(Exception):
    pass


class DomainError(MvsfError, ValueError):
    """A parameter lies outside the domain of the integral representation."""


class NotPositiveDefinite(MvsfError, ValueError):
    pass


class SingularMatrix(MvsfError, ValueError):
    pass


class SingularTransform(MvsfError, ValueError):
    pass


class NormTooLarge(MvsfError, ValueError):
    """Series with r = s + 1 evaluated at a matrix of spectral norm >= 1."""


class UnsupportedOrder(MvsfError, ValueError):
    pass


class NonconvergedQuadrature(MvsfError, ArithmeticError):
    pass


class NonconvergentTail(MvsfError, ArithmeticError):
    pass


class DegenerateJacobian(MvsfError, ArithmeticError):
    pass


class RejectionTooLow(MvsfError, ArithmeticError):
    """Acceptance rate of the unit-box sampler fell below 0.1%."""
