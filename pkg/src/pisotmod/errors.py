"""Exception hierarchy shared by every module of the package."""


class PisotError(Exception):
    """Base class for all errors raised by pisotmod."""


class RejectedInputError(PisotError, ValueError):
    """An argument violates the documented precondition of an operation."""


class ResourceError(PisotError, RuntimeError):
    """A configured computation budget would be exceeded.

    ``partial`` carries whatever was computed before giving up (for example
    the prime factors found so far by trial division).
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class BoundaryRootError(PisotError, ArithmeticError):
    """A root on the unit circle was detected (or could not be excluded)."""


class UnsupportedDegreeError(RejectedInputError):
    """The polynomial degree exceeds the documented desk-scale limit."""


class NotPisotError(PisotError, ValueError):
    """Structured rejection from :func:`pisotmod.pisot.certify_pisot`.

    ``reason`` is one of the ``REJECT_*`` constants in :mod:`pisotmod.pisot`.
    """

    def __init__(self, reason, detail=""):
        super().__init__(f"{reason}: {detail}" if detail else reason)
        self.reason = reason
        self.detail = detail
