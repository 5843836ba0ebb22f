"""Exception types shared across the package.

Every error carries a stable CLI exit code so the command-line layer can map
failures without inspecting messages.
"""

from __future__ import annotations

# Public inputs are bounded so that m*n, a*n and T*T stay inside signed 64 bits.
MAX_INPUT = 2**62
INT64_MAX = 2**63 - 1


class SumsqError(Exception):
    exit_code = 1


class DomainError(SumsqError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""

    exit_code = 2


class WidthOverflowError(SumsqError, OverflowError):
    """A value (input or derived product) exceeds the 64-bit working width."""

    exit_code = 4


class BudgetExceeded(SumsqError):
    """An enumeration or DP ran past its configured work limit."""

    exit_code = 3


def check_input(name: str, value: int, bound: int = MAX_INPUT) -> int:
    if abs(value) > bound:
        raise WidthOverflowError(f"{name}={value} exceeds width bound {bound}")
    return value


def checked_mul(x: int, y: int) -> int:
    r = x * y
    if not -INT64_MAX - 1 <= r <= INT64_MAX:
        raise WidthOverflowError(f"{x}*{y} overflows signed 64-bit")
    return r
