class BrunnianError(Exception):
    """Base class for all errors raised by this package."""


class DiagramValidationError(BrunnianError, ValueError):
    def __init__(self, report):
        self.report = report
        msgs = ", ".join(f"{rule}@{loc}" for rule, loc in report.violations[:5])
        super().__init__(f"invalid diagram: {msgs}")


class GeometricPreconditionError(BrunnianError, ValueError):
    pass


class RewriteError(BrunnianError, ValueError):
    pass


class ResourceLimitError(BrunnianError):
    def __init__(self, what: str, cap: int, needed: int):
        self.what = what
        self.cap = cap
        self.needed = needed
        super().__init__(f"{what}: {needed} exceeds cap {cap}")


class CompositionError(BrunnianError, ValueError):
    pass


class PreconditionError(BrunnianError, ValueError):
    pass


class PDParseError(BrunnianError, ValueError):
    pass
