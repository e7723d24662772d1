"""Exception hierarchy shared by every module."""


class BranchforgeError(ValueError):
    """Base class for all input and scope errors raised by the toolkit."""


class NotMonicError(BranchforgeError):
    pass


class NonCoprimeError(BranchforgeError):
    """Raised when a resultant vanishes identically (common factor)."""


class NotSquareFreeError(BranchforgeError):
    pass


class OracleScopeError(BranchforgeError):
    """The Puiseux oracle needs a coefficient outside the rationals."""


class PrecisionError(BranchforgeError):
    """A truncated series could not resolve the requested order."""


class InvalidSemigroupError(BranchforgeError):
    pass


class NotIrreducibleError(BranchforgeError):
    pass


class PreparationError(BranchforgeError):
    """A family or polynomial cannot be brought to the required normal form."""


class ParseError(BranchforgeError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
