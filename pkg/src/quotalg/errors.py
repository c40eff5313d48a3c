"""Exception types shared by every module."""


class QuotalgError(Exception):
    """Base class."""


class InputError(QuotalgError, ValueError):
    """Malformed or inconsistent input (bad polynomial text, unknown names, ...)."""


class BudgetExhausted(QuotalgError):
    """A computation ran past its step budget. Never means "false"."""

    def __init__(self, what: str = "computation", steps: int | None = None):
        self.what = what
        self.steps = steps
        msg = f"{what} exceeded its step budget"
        if steps is not None:
            msg += f" ({steps} steps)"
        super().__init__(msg)


class IllDefinedMap(QuotalgError, ValueError):
    """A ring map does not send relations into relations, or an inverse is missing."""


class NotFree(QuotalgError):
    """A claimed basis is not a basis, or freeness could not be certified."""


class NotFinite(QuotalgError, ValueError):
    """An operation needed a finite object (group, dimension) and got an infinite one."""


class PreconditionFailed(QuotalgError, ValueError):
    """The documented precondition of an operation does not hold."""


class InvariantFailure(QuotalgError, AssertionError):
    """A mathematical identity that must always hold was violated (a library bug)."""
