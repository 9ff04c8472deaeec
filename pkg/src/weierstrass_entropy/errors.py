"""Exception types raised by the library."""


class DomainError(ValueError):
    """An argument lies outside the domain where an operation is defined."""


class ParamMismatchError(ValueError):
    """Two RKHS functions built from different (a, b) were combined."""


class DegenerateError(ArithmeticError):
    """A bound evaluates to something non-informative (e.g. ln C >= 0)."""
