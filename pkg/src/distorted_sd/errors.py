"""Exception types raised across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class UnsupportedOperationError(TypeError):
    """The operation is not defined for this kind of distribution."""


class NotApplicableError(ValueError):
    """A shortcut was requested whose precondition does not hold."""


class SingularDerivativeError(ArithmeticError):
    """The distortion derivative vanishes or does not exist at the point."""


class NotInvertibleError(ValueError):
    """The distortion has no (strict) inverse on (0, 1)."""
