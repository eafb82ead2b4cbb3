"""Exception types raised by the engine."""


class MoyalError(Exception):
    """Base class for all engine errors."""


class NonLocalInput(MoyalError, ValueError):
    pass


class SelfReference(MoyalError, ValueError):
    pass


class FloorTooHigh(MoyalError, ValueError):
    pass


class InsufficientDepth(MoyalError, ValueError):
    pass


class UnboundedExpansion(MoyalError, ValueError):
    """A star product of exact symbols would produce an infinite series."""


class BadLaxShape(MoyalError, ValueError):
    pass


class NotSolvable(MoyalError, ValueError):
    pass


class EliminationStuck(MoyalError, RuntimeError):
    pass


class InconsistentReduction(MoyalError, RuntimeError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class ParseError(MoyalError, ValueError):
    def __init__(self, message, offset, expected=()):
        self.offset = offset
        self.expected = tuple(sorted(set(expected)))
        detail = f"{message} at offset {offset}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)
