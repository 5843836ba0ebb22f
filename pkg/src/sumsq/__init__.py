"""Which sums x_1 + ... + x_m occur among integer solutions of x_1^2 + ... + x_m^2 = n."""

from .errors import BudgetExceeded, DomainError, SumsqError, WidthOverflowError
from .linforms import LinearForm, LinearSumSet
from .mordell import BinaryForm, MordellVerdict, representable
from .sumsets import SumSet, contains, full_set, is_full, t_star

__all__ = [
    "BinaryForm",
    "BudgetExceeded",
    "DomainError",
    "LinearForm",
    "LinearSumSet",
    "MordellVerdict",
    "SumSet",
    "SumsqError",
    "WidthOverflowError",
    "contains",
    "full_set",
    "is_full",
    "representable",
    "t_star",
]
