"""Saturation rank computations for finite groups and restricted Lie algebras."""

from .errors import BudgetError, PreconditionError
from .fields import FieldSpec, Mat, field_make, mat_is_p_nilpotent, mat_kernel_basis, mat_rank

__all__ = [
    "BudgetError",
    "PreconditionError",
    "FieldSpec",
    "Mat",
    "field_make",
    "mat_rank",
    "mat_kernel_basis",
    "mat_is_p_nilpotent",
]
