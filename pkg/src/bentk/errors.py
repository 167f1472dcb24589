"""Exception types shared across the package."""


class BentkError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class DimensionMismatch(BentkError, ValueError):
    pass


class SingularMatrix(BentkError, ValueError):
    pass


class DependentBasis(BentkError, ValueError):
    pass


class SizeLimit(BentkError, ValueError):
    """The requested instance is beyond what the exact routines handle."""


class NotBent(BentkError, ValueError):
    pass


class OddDimension(BentkError, ValueError):
    pass


class SupportMismatch(BentkError, ValueError):
    pass


class NotBentInternal(BentkError, AssertionError):
    """A construction that must yield a bent function did not."""


class NotAPermutation(BentkError, ValueError):
    pass


class InvalidMatching(BentkError, ValueError):
    pass


class NotATransversal(BentkError, ValueError):
    pass


InvalidTransversal = NotATransversal


class InvalidSpread(BentkError, ValueError):
    pass


class InvalidPartition(BentkError, ValueError):
    pass


class BadUniformity(BentkError, ValueError):
    pass


class OddN(BentkError, ValueError):
    pass


class AnfSyntaxError(BentkError, ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownVariable(BentkError, ValueError):
    def __init__(self, name, position):
        super().__init__(f"unknown variable {name!r} at position {position}")
        self.name = name
        self.position = position
