class NilopError(ValueError):
    """Base class of every domain error raised by nilop."""


class ParseError(NilopError):
    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


class InvalidObjectError(NilopError):
    pass


class ShapeError(NilopError):
    pass


class BudgetExceededError(RuntimeError):
    def __init__(self, message: str, scanned: int = 0, budget: int = 0):
        super().__init__(message)
        self.scanned = scanned
        self.budget = budget


class UndecidedError(BudgetExceededError):
    """Indecomposability could not be certified within the scan budget."""
