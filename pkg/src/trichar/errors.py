"""Exception types shared across the package."""


class TricharError(Exception):
    """Base class for all package errors."""


class InvalidParameter(TricharError, ValueError):
    """Bad construction parameters (non-prime p, a = 0, b in the subfield, ...)."""


class EpsBasisUnavailable(TricharError):
    """The tower has no usable basis pair (1, eps); raised for q = 2 reductions."""


class BudgetExceeded(TricharError):
    """An exhaustive computation would exceed the configured operation budget."""

    def __init__(self, what: str, ops: int, budget: int):
        super().__init__(f"{what} needs ~{ops} element operations, budget is {budget}")
        self.what = what
        self.ops = ops
        self.budget = budget
