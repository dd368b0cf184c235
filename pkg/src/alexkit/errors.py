"""Exception hierarchy shared by every alexkit module."""


class AlexkitError(ValueError):
    """Base class for all domain failures raised by alexkit."""


class DomainError(AlexkitError):
    pass


class NotIncreasing(AlexkitError):
    pass


class EmptySet(AlexkitError):
    pass


class ZeroMeasure(AlexkitError):
    pass


class MalformedInterval(AlexkitError):
    pass


class DegenerateParameters(AlexkitError):
    pass


class NotInSet(AlexkitError):
    pass


class BadOrder(AlexkitError):
    pass


class NotFiberConstant(AlexkitError):
    pass


class DomainMismatch(AlexkitError):
    pass


class InvalidDescriptor(AlexkitError):
    pass


class NotAnIsometry(AlexkitError):
    pass


class InvalidPsi(AlexkitError):
    pass


class InternalInvariantViolation(AlexkitError):
    """A construction produced data that contradicts a proven invariant."""


class FiberIncompatible(AlexkitError):
    """Raised when a lift is requested for a pair that is not fiber compatible.

    The machine-readable report is kept on ``self.report``.
    """

    def __init__(self, report):
        super().__init__(str(report))
        self.report = report
