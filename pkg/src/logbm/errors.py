"""Exception hierarchy shared by the kernel, checkers, harness and CLI."""


class LogBMError(Exception):
    """Base class for every error raised by this package."""


class DegenerateInput(LogBMError):
    """A point set or basis does not have the dimension an operation needs."""


class SingularMatrix(LogBMError):
    pass


class ZeroVector(LogBMError):
    pass


class Unbounded(LogBMError):
    pass


class RetryExhausted(LogBMError):
    pass


class SpecError(LogBMError, ValueError):
    """Malformed body/norm/config specification.

    ``field`` names the offending path inside the parsed document so the CLI
    can point at it.
    """

    def __init__(self, message, field=None):
        self.field = field
        if field:
            message = f"{field}: {message}"
        super().__init__(message)


class InternalInconsistency(LogBMError):
    """A proved statement failed, or two independent routes disagreed.

    Never a mathematical finding: it means the build is wrong. ``instance``
    carries the serialized inputs for replay.
    """

    def __init__(self, message, instance=None):
        self.instance = instance
        super().__init__(message)


class ScenarioInconclusive(LogBMError):
    pass
