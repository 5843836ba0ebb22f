"""Sums a_1 x_1 + ... + a_m x_m over integer solutions of x_1^2 + ... + x_m^2 = n.

With a = sum a_i^2, the form aX^2 + 2TXY + nY^2 must be a sum of m squares of
linear forms whenever T is attained. If the coefficient vector is the only
partition of a into m squares, that condition is also sufficient; for m = 4
it reads 0 < an - T^2 in sos(3). Every other case is settled by searching the
representations of n, with the form condition used only to reject early.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterator, Optional, Sequence

from .arith import is_sos, is_square
from .errors import INT64_MAX, MAX_INPUT, DomainError, WidthOverflowError
from .mordell import BinaryForm, representable
from .oracle import Budget, BudgetLike, enumerate_reps, lehmer_unique


@dataclass(frozen=True)
class LinearForm:
    coeffs: tuple[int, ...]
    a: int
    d: int
    a_prime: int

    @property
    def m(self) -> int:
        return len(self.coeffs)

    def __str__(self) -> str:
        return ",".join(map(str, self.coeffs))


@dataclass(frozen=True)
class LinearSumSet:
    coeffs: tuple[int, ...]
    n: int
    values: tuple[int, ...]  # nonnegative members, ascending; the set is +-values
    t_star: Optional[int]
    extremal: Optional[tuple[int, int]]
    method: str

    def __contains__(self, T: int) -> bool:
        return abs(T) in self.values

    def as_set(self) -> set[int]:
        return {s * v for v in self.values for s in (1, -1)}

    def symmetric(self) -> list[int]:
        return sorted(self.as_set())


def normalize(raw: Sequence[int]) -> LinearForm:
    """Absolute values sorted nonincreasing; signs and order do not change the sets."""
    coeffs = tuple(sorted((abs(int(c)) for c in raw), reverse=True))
    if not coeffs or coeffs[0] == 0:
        raise DomainError("linear form needs a nonzero coefficient")
    if coeffs[0] > MAX_INPUT:
        raise WidthOverflowError(f"coefficient {coeffs[0]} exceeds width bound")
    a = sum(c * c for c in coeffs)
    if a > INT64_MAX:
        raise WidthOverflowError(f"sum of squared coefficients {a} overflows 64-bit")
    d = gcd(*coeffs)
    return LinearForm(coeffs, a, d, a // (d * d))


def _as_form(A) -> LinearForm:
    return A if isinstance(A, LinearForm) else normalize(A)


def _an(A: LinearForm, n: int) -> int:
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    an = A.a * n
    if n > MAX_INPUT or an > INT64_MAX:
        raise WidthOverflowError(f"a*n = {an} overflows signed 64-bit")
    return an


def cs_bound_holds(A, n: int, T: int) -> bool:
    A = _as_form(A)
    return T * T <= _an(A, n)


def extremal_members(A, n: int) -> Optional[tuple[int, int]]:
    """(-a'bd, a'bd) when n = a' b^2, the only T with T^2 = an that is attained."""
    A = _as_form(A)
    _an(A, n)
    if n % A.a_prime:
        return None
    b2 = n // A.a_prime
    if not is_square(b2):
        return None
    v = A.a_prime * isqrt(b2) * A.d
    return (-v, v)


def uses_fast_arm(A) -> bool:
    A = _as_form(A)
    return A.m == 4 and lehmer_unique(4, A.a)


def _sub_multisets(items: tuple[tuple[int, int], ...], size: int) -> Iterator[tuple[tuple[int, ...], tuple[tuple[int, int], ...]]]:
    """Split a multiset (value, count pairs) into a chosen part of `size` elements and the rest."""
    if size == 0:
        yield (), items
        return
    if not items:
        return
    (v, c), rest = items[0], items[1:]
    for take in range(min(c, size), -1, -1):
        for chosen, left in _sub_multisets(rest, size - take):
            remaining = ((v, c - take),) + left if c - take else left
            yield (v,) * take + chosen, remaining


def _signed_totals(parts: tuple[int, ...]) -> list[int]:
    total = sum(parts)
    bits = 1
    for p in parts:
        if p:
            bits |= bits << p
    return [total - 2 * k for k in range(total + 1) if (bits >> k) & 1]


def _rep_values(classes: tuple[tuple[int, int], ...], rep: tuple[int, ...]) -> set[int]:
    """Every A(x) for x a signed rearrangement of rep.

    Slots sharing a coefficient value form one class; only the multiset of
    parts a class receives matters, so classes are filled one at a time.
    """

    @lru_cache(maxsize=None)
    def fill(ci: int, remaining: tuple[tuple[int, int], ...]) -> frozenset:
        if ci == len(classes):
            return frozenset({0})
        value, size = classes[ci]
        out = set()
        for chosen, left in _sub_multisets(remaining, size):
            tails = fill(ci + 1, left)
            if value == 0:
                out |= tails
                continue
            for s in _signed_totals(chosen):
                out.update(value * s + t for t in tails)
        return frozenset(out)

    counts = tuple(sorted(Counter(rep).items()))
    return {abs(v) for v in fill(0, counts)}


def _classes(A: LinearForm) -> tuple[tuple[int, int], ...]:
    # nonzero classes first; the zero class just absorbs what is left
    c = Counter(A.coeffs)
    return tuple(sorted(c.items(), key=lambda vc: (vc[0] == 0, -vc[0])))


def search_values(A, n: int, budget: BudgetLike = None) -> set[int]:
    """Nonnegative members of S_{m,A}(n) by exhaustive search over representations of n."""
    A = _as_form(A)
    _an(A, n)
    bud = Budget.of(budget)
    classes = _classes(A)
    out: set[int] = set()
    for rep in enumerate_reps(A.m, n, bud):
        bud.spend(A.m)
        out |= _rep_values(classes, rep)
    return out


def _search_contains(A: LinearForm, n: int, T: int, budget: BudgetLike) -> bool:
    bud = Budget.of(budget)
    classes = _classes(A)
    for rep in enumerate_reps(A.m, n, bud):
        bud.spend(A.m)
        if T in _rep_values(classes, rep):
            return True
    return False


def contains(A, n: int, T: int, budget: BudgetLike = None) -> bool:
    A = _as_form(A)
    an = _an(A, n)
    T = abs(T)
    t2 = T * T
    if t2 > an:
        return False
    if t2 == an:
        ext = extremal_members(A, n)
        return ext is not None and ext[1] == T
    if uses_fast_arm(A):
        return is_sos(an - t2, 3)
    if not representable(BinaryForm(A.a, T, n), A.m):
        return False
    return _search_contains(A, n, T, budget)


def full_set(A, n: int, budget: BudgetLike = None) -> LinearSumSet:
    A = _as_form(A)
    an = _an(A, n)
    ext = extremal_members(A, n)
    if uses_fast_arm(A):
        method = "coro_sun"
        vals = [T for T in range(isqrt(an) + 1) if T * T < an and is_sos(an - T * T, 3)]
        if ext is not None:
            vals.append(ext[1])
    else:
        method = "search"
        vals = sorted(search_values(A, n, budget))
    return LinearSumSet(
        coeffs=A.coeffs,
        n=n,
        values=tuple(vals),
        t_star=vals[-1] if vals else None,
        extremal=ext,
        method=method,
    )


def min_power_of_4(A, n: int, t_max: int = 20) -> Optional[int]:
    """Smallest t <= t_max with 4^t in S_{m,A}(n), or None."""
    A = _as_form(A)
    an = _an(A, n)
    for t in range(t_max + 1):
        T = 4**t
        if T * T > an:
            break
        if contains(A, n, T):
            return t
    return None
