class SwGammaError(Exception):
    pass


class ResourceCapError(SwGammaError):
    """Raised when a computation would exceed a configured degree cap."""


class InvalidGroupError(SwGammaError):
    pass


class IntegralityError(SwGammaError):
    """A quantity that must be integral (or rational) was not.

    This signals corrupted input data or a bug, never a legitimate result.
    """


class UnsupportedCaseError(SwGammaError):
    pass


class ModelInconsistencyError(SwGammaError):
    pass
