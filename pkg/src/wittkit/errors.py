"""Exception hierarchy shared by every module of the package."""


class WittError(Exception):
    """Base class for all errors raised by wittkit."""


class DimensionMismatch(WittError, ValueError):
    pass


class SpecMismatch(WittError, ValueError):
    """Operands belong to different algebras."""


class ReducibleMinPoly(WittError, ValueError):
    pass


class DegenerateSubgroup(WittError, ValueError):
    pass


class NotInGamma(WittError, ValueError):
    """A grade vector is not an element of the grading group."""


class IndexOutOfRange(WittError, IndexError):
    pass


class NotRootVector(WittError, ValueError):
    pass


class NonHomogeneous(WittError, ValueError):
    pass


class ZeroElement(WittError, ValueError):
    pass


class UnstableTruncation(WittError, ValueError):
    pass


class PreconditionViolation(WittError, ValueError):
    pass
