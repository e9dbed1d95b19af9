"""Exception classes shared across the library."""


class GammaRingError(Exception):
    """Base class for all library-specific errors."""


class BudgetExceededError(GammaRingError):
    """An exact scan would need more evaluations than the configured cap.

    Raised instead of silently sampling: verdicts from the operations that
    raise this are exact-only by contract.
    """


class PreconditionError(GammaRingError, ValueError):
    """An operation was invoked on inputs that fail its stated gate."""


class FrameValidationError(GammaRingError, ValueError):
    """A complement-map frame violates one of its defining identities.

    Carries the full list of violations, each with a witness tuple that
    re-evaluates to the violation.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(v.describe() for v in self.violations)
        super().__init__(f"invalid idempotent frame: {lines}")


class GRDFError(GammaRingError, ValueError):
    """A ring description document failed to parse or validate."""


class InternalInconsistencyError(GammaRingError):
    """Two routes that must agree by theorem disagreed.

    This can only be caused by an implementation bug, never by input data,
    so it is kept loudly distinct from ordinary verification failures.
    """
