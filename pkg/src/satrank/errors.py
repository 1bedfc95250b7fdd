"""Shared exception types.

PreconditionError signals bad caller input (CLI exit code 2), BudgetError
signals an enumeration that would exceed its configured cap (exit code 3).
"""


class PreconditionError(ValueError):
    pass


class BudgetError(RuntimeError):
    pass
