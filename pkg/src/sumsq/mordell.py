"""Sums of squares of integral linear forms.

Decides whether a binary form aX^2 + 2hXY + bY^2 equals a sum of m squares
(a_i X + b_i Y)^2 with integral a_i, b_i. The m = 3 arm checks a 2-adic
condition on the content and Legendre-symbol conditions at the odd primes of
the determinant and the content.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt
from typing import Optional

from .arith import factorize, is_sos, legendre
from .errors import INT64_MAX, DomainError, WidthOverflowError

FAIL_TAGS = frozenset(
    {"psd", "alpha", "beta", "gamma", "delta_cond", "sos1_delta", "sos2_gcd", "sos3_delta", "sos_m_a"}
)


@dataclass(frozen=True)
class BinaryForm:
    """The form aX^2 + 2hXY + bY^2 (note the doubled middle coefficient)."""

    a: int
    h: int
    b: int

    def __post_init__(self):
        if self.a == 0 and self.b > 0:
            # orientation: a nonzero form is stored with a > 0 when possible
            a, b = self.b, self.a
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", b)
        for v in (self.a, self.h, self.b):
            if abs(v) > INT64_MAX:
                raise WidthOverflowError(f"form coefficient {v} exceeds 64-bit width")

    @property
    def delta(self) -> int:
        d = self.a * self.b - self.h * self.h
        if abs(d) > INT64_MAX:
            raise WidthOverflowError(f"determinant of {self} overflows 64-bit")
        return d

    @property
    def content(self) -> int:
        return gcd(self.a, self.h, self.b)

    @property
    def content2(self) -> int:
        """gcd(a, 2h, b), which is either the content or twice it."""
        return gcd(self.a, 2 * self.h, self.b)

    def is_zero(self) -> bool:
        return self.a == self.h == self.b == 0


@dataclass(frozen=True)
class MordellVerdict:
    representable: bool
    failed_condition: Optional[str] = None
    witness_prime: Optional[int] = None

    def __post_init__(self):
        if self.representable != (self.failed_condition is None):
            raise ValueError("representable iff no failed condition")
        if self.failed_condition is not None and self.failed_condition not in FAIL_TAGS:
            raise ValueError(f"unknown condition tag {self.failed_condition!r}")

    def __bool__(self) -> bool:
        return self.representable


_YES = MordellVerdict(True)


def is_psd(f: BinaryForm) -> bool:
    return f.a >= 0 and f.b >= 0 and f.delta >= 0


def rank_zero_delta(f: BinaryForm, m: int) -> MordellVerdict:
    """Decide a degenerate form t(rX + sY)^2: representable iff a is a sum of m squares."""
    if f.delta != 0:
        raise DomainError(f"rank_zero_delta needs determinant 0, got {f.delta}")
    if f.is_zero():
        raise DomainError("rank_zero_delta needs a nonzero form")
    if f.a <= 0:
        raise DomainError("rank_zero_delta needs a > 0")
    if m < 1:
        raise DomainError(f"m must be positive, got {m}")
    # a = r^2 t and a in sos(m) iff t in sos(m); test a directly
    return _YES if is_sos(f.a, m) else MordellVerdict(False, "sos_m_a")


def _check_m3(f: BinaryForm, delta: int) -> MordellVerdict:
    a = f.a
    d = f.content
    dfact = dict(factorize(d, limit=INT64_MAX).factors)
    if dfact.get(2, 0) % 2 == 1 and f.content2 != d:
        return MordellVerdict(False, "alpha", 2)
    delta_fact = dict(factorize(delta, limit=INT64_MAX).factors)
    primes = sorted(p for p in set(delta_fact) | set(dfact) if p != 2)
    # one condition at a time, each over ascending primes
    beta, gamma, delta_cond = [], [], []
    for p in primes:
        vd = delta_fact.get(p, 0)
        delta_p = delta // p**vd
        if vd % 2 == 1:
            a_p, va = a, 0
            while a_p % p == 0:
                a_p //= p
                va += 1
            if va % 2 == 0:
                beta.append((p, -a_p))
            else:
                gamma.append((p, -a_p * delta_p))
        elif dfact.get(p, 0) % 2 == 1:
            delta_cond.append((p, -delta_p))
    for tag, checks in (("beta", beta), ("gamma", gamma), ("delta_cond", delta_cond)):
        for p, x in checks:
            if legendre(x, p) != 1:
                return MordellVerdict(False, tag, p)
    return _YES


def representable(f: BinaryForm, m: int) -> MordellVerdict:
    """Is f a sum of m squares of integral linear forms?"""
    if m < 1:
        raise DomainError(f"m must be positive, got {m}")
    if not is_psd(f):
        return MordellVerdict(False, "psd")
    if f.is_zero():
        return _YES
    delta = f.delta
    if delta == 0:
        return rank_zero_delta(f, m)
    if m == 1:
        return MordellVerdict(False, "sos1_delta")
    if m == 2:
        if not is_sos(delta, 1):
            return MordellVerdict(False, "sos1_delta")
        if not is_sos(f.content, 2):
            return MordellVerdict(False, "sos2_gcd")
        return _YES
    if m == 3:
        return _check_m3(f, delta)
    if m == 4:
        return _YES if is_sos(delta, 3) else MordellVerdict(False, "sos3_delta")
    return _YES


def decompose_degenerate(f: BinaryForm) -> tuple[int, int, int]:
    """Write a nonzero psd form of determinant 0 as t(rX + sY)^2 with gcd(r, s) = 1.

    Returns (t, r, s) with t, r > 0.
    """
    if f.delta != 0 or f.is_zero() or f.a <= 0:
        raise DomainError(f"{f} is not a nonzero degenerate form with a > 0")
    # coprime r, s force t = gcd(a, b); a/t and b/t are then coprime squares
    t = gcd(f.a, f.b)
    r, s = isqrt(f.a // t), isqrt(f.b // t)
    return t, r, (s if f.h >= 0 else -s)
