"""Exception types shared across the package.

Every error carries a short machine-readable ``token`` so the CLI can emit
one-line diagnostics (``error=<token>``) with a stable vocabulary.
"""


class FiberLRCError(Exception):
    token = "error"

    def __init__(self, message: str, token: str | None = None):
        super().__init__(message)
        if token is not None:
            self.token = token


class FieldMismatchError(FiberLRCError):
    token = "field-mismatch"


class InvalidModulusError(FiberLRCError):
    token = "bad-modulus"


class InvalidParameterError(FiberLRCError):
    """Rejected construction parameter; token identifies which constraint."""

    token = "bad-parameter"


class PartialFiberError(FiberLRCError):
    """A candidate base value carried a fiber of unexpected size."""

    token = "partial-fiber"


class InsufficientHelpersError(FiberLRCError):
    token = "insufficient-helpers"


class UncorrectableError(FiberLRCError):
    token = "uncorrectable"


class BudgetExceededError(FiberLRCError):
    token = "budget-exceeded"


class FormatError(FiberLRCError):
    token = "bad-file"
