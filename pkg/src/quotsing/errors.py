"""Exception hierarchy shared across the package."""


class QuotsingError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(QuotsingError, ValueError):
    """Arguments violate an operation's precondition."""


class DivisionByZero(ValidationError, ZeroDivisionError):
    pass


class ConductorMismatch(ValidationError):
    pass


class ConductorTooLarge(ValidationError):
    pass


class NotADivisor(ValidationError):
    pass


class NotCoprime(ValidationError):
    pass


class OutOfRange(ValidationError):
    pass


class InvalidTerm(ValidationError):
    pass


class NotCritical(ValidationError):
    pass


class NotFaithful(ValidationError):
    pass


class NotTame(ValidationError):
    pass


class NotInvertible(ValidationError):
    pass


class NotNormal(ValidationError):
    pass


class NotReflectionGroup(ValidationError):
    pass


class UnsupportedId(ValidationError):
    pass


class ParseError(ValidationError):
    pass


class GroupTooLarge(QuotsingError):
    """Closure exceeded the configured maximum order."""


class ConsistencyError(QuotsingError, AssertionError):
    """An internal cross-check failed; indicates a bug or a false claim."""


class InconsistentExpansion(ConsistencyError):
    pass
