"""The sets S_m(n) of sums x_1 + ... + x_m over solutions of x_1^2 + ... + x_m^2 = n.

Membership is decided by the cheapest closed criterion that applies to (m, n):

==========  ==================================================================
m           criterion for T with T = n (mod 2) and T^2 < mn
==========  ==================================================================
1           never (only T^2 = n is attained)
n <= m      |T| <= n
2           2n - T^2 is a square
3           squarefree part of 3n - T^2 has all primes q != 2, 3 with
            q = 1 (mod 6), and k = 1 whenever l = 1 or 3 | gcd(T, n)
4           4n - T^2 is a sum of three squares
5..8        always
9..11       T^2 <= m(n - 1) + 1
>= 12       T^2 <= 11(n - 1) + 1 suffices; otherwise |T| <= T* from the
            max-sum DP in :mod:`sumsq.oracle`
==========  ==================================================================

T^2 = mn is attained exactly when n = m a^2, at T = +-ma. For m >= 5 every
set is the parity interval [-T*, T*], so only T* has to be found.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, isqrt
from typing import Optional

from .arith import TRIAL_BOUND, factor_dict, split_tiny, factorize, is_prime, is_sos, is_square
from .errors import INT64_MAX, MAX_INPUT, DomainError, WidthOverflowError
from .oracle import BudgetLike, max_sum

METHODS = (
    "trivial_m1",
    "small_n",
    "mordell_m2",
    "mordell_m3",
    "gp_m4",
    "full_m5_7",
    "full_m8",
    "interval_m9_11",
    "oracle",
)


@dataclass(frozen=True)
class SumSet:
    m: int
    n: int
    values: tuple[int, ...]  # nonnegative members, ascending; the set is +-values
    t_star: Optional[int]
    full: bool
    extremal: Optional[tuple[int, int]]
    method: str
    _lookup: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_lookup", frozenset(self.values))

    @property
    def parity(self) -> int:
        return self.n % 2

    def __contains__(self, T: int) -> bool:
        return abs(T) in self._lookup

    def __len__(self) -> int:
        return sum(2 if v else 1 for v in self.values)

    def as_set(self) -> set[int]:
        return {s * v for v in self.values for s in (1, -1)}

    def symmetric(self) -> list[int]:
        return sorted(self.as_set())


@dataclass(frozen=True)
class Diagnostic3:
    T: int
    delta: int
    d0: int
    k: int
    ell: int
    d: int
    member: bool
    reason: str


def _check(m: int, n: int) -> int:
    if m < 1 or n < 1:
        raise DomainError(f"need m, n >= 1, got m={m}, n={n}")
    if m > MAX_INPUT or n > MAX_INPUT:
        raise WidthOverflowError(f"m={m}, n={n} exceed width bound {MAX_INPUT}")
    mn = m * n
    if mn > INT64_MAX:
        raise WidthOverflowError(f"m*n = {mn} overflows signed 64-bit")
    return mn


def extremal_value(m: int, n: int) -> Optional[int]:
    """ma when n = m a^2 (the only T with T^2 = mn that is attained), else None."""
    if n % m:
        return None
    a = isqrt(n // m)
    return m * a if a * a * m == n else None


def _top_candidate(m: int, n: int) -> int:
    """Largest T >= 0 with T = n (mod 2) and T^2 < mn; may be -1 when there is none."""
    c = isqrt(m * n - 1)
    return c if (c - n) % 2 == 0 else c - 1


def t_candidates(m: int, n: int) -> list[int]:
    """Nonnegative T with T = n (mod 2) and T^2 < mn."""
    _check(m, n)
    return list(range(n % 2, _top_candidate(m, n) + 1, 2))


# --- per-arm membership for T = n (mod 2), 0 <= T, T^2 < mn -----------------

def _m3_state(n: int, T: int):
    delta = 3 * n - T * T
    odd_primes = [p for p, e in factorize(delta, limit=INT64_MAX) if e % 2]
    d0 = 1
    for p in odd_primes:
        d0 *= p
    k = int(d0 % 2 == 0)
    ell = int(d0 % 3 == 0)
    bad_q = [p for p in odd_primes if p > 3 and p % 6 != 1]
    return delta, d0, k, ell, gcd(3, T, n), bad_q


def _m3_member(n: int, T: int) -> bool:
    # same verdict as _m3_state, but stops as soon as the answer is known
    delta = 3 * n - T * T
    tz = (delta & -delta).bit_length() - 1
    r = delta >> tz
    e3 = 0
    while r % 3 == 0:
        r //= 3
        e3 += 1
    if not tz & 1 and (e3 & 1 or (n % 3 == 0 and T % 3 == 0)):
        return False
    # r is prime to 6; r = 2 (mod 3) forces a prime = 2 (mod 3) to an odd power
    if r % 3 == 2:
        return False
    if r >= TRIAL_BOUND:
        tiny, r = split_tiny(r)
        for p, e in tiny.items():
            if e & 1 and p % 3 == 2:
                return False
        if r % 3 == 2:
            return False
        if r >= TRIAL_BOUND and (is_square(r) or is_prime(r)):
            return True
    return all(p % 3 == 1 for p, e in factor_dict(r).items() if e & 1)


def _arm_m1(m, n, T):
    return False


def _arm_small_n(m, n, T):
    return T <= n


def _arm_m2(m, n, T):
    return is_square(2 * n - T * T)


def _arm_m3(m, n, T):
    return _m3_member(n, T)


def _arm_m4(m, n, T):
    return is_sos(4 * n - T * T, 3)


def _arm_always(m, n, T):
    return True


def _arm_m9_11(m, n, T):
    return T * T <= m * (n - 1) + 1


def _arm_large(m, n, T, budget=None):
    if T * T > m * (n - 1) + 1:
        return False
    if T * T <= 11 * (n - 1) + 1:
        # S_11(n) is contained in S_m(n), and n > m > 11 puts T inside S_11(n)
        return True
    tmax = max_sum(m, n, budget)
    return tmax is not None and T <= tmax


_ARM_FUNCS = {
    "trivial_m1": _arm_m1,
    "small_n": _arm_small_n,
    "mordell_m2": _arm_m2,
    "mordell_m3": _arm_m3,
    "gp_m4": _arm_m4,
    "full_m5_7": _arm_always,
    "full_m8": _arm_always,
    "interval_m9_11": _arm_m9_11,
    "oracle": _arm_large,
}


def applicable_methods(m: int, n: int) -> list[str]:
    """Every criterion valid for (m, n), in dispatch priority order."""
    out = []
    if m == 1:
        out.append("trivial_m1")
    if n <= m:
        out.append("small_n")
    if m == 2:
        out.append("mordell_m2")
    if m == 3:
        out.append("mordell_m3")
    if m == 4:
        out.append("gp_m4")
    if 5 <= m <= 7:
        out.append("full_m5_7")
    if m == 8:
        out.append("full_m8")
    if 9 <= m <= 11 and n > m:
        out.append("interval_m9_11")
    if m >= 12 and n > m:
        out.append("oracle")
    return out


def method_for(m: int, n: int) -> str:
    return applicable_methods(m, n)[0]


def contains_via(method: str, m: int, n: int, T: int, budget: BudgetLike = None) -> bool:
    """Membership decided by one named arm; raises DomainError if it does not apply."""
    mn = _check(m, n)
    if method not in applicable_methods(m, n):
        raise DomainError(f"method {method!r} does not apply to m={m}, n={n}")
    T = abs(T)
    if (T - n) % 2:
        return False
    t2 = T * T
    if t2 >= mn:
        return t2 == mn and extremal_value(m, n) == T
    if method == "oracle":
        return _arm_large(m, n, T, budget)
    return _ARM_FUNCS[method](m, n, T)


def contains(m: int, n: int, T: int, budget: BudgetLike = None) -> bool:
    """Is T = x_1 + ... + x_m for some integers with x_1^2 + ... + x_m^2 = n?"""
    # hot path: keep the m = 5..8 arm to a handful of integer operations
    if m < 1 or n < 1:
        raise DomainError(f"need m, n >= 1, got m={m}, n={n}")
    mn = m * n
    if n > MAX_INPUT or m > MAX_INPUT or mn > INT64_MAX or abs(T) > MAX_INPUT:
        raise WidthOverflowError(f"m={m}, n={n}, T={T} exceed the 64-bit working width")
    if (T - n) & 1:
        return False
    if T < 0:
        T = -T
    t2 = T * T
    if t2 >= mn:
        return t2 == mn and extremal_value(m, n) == T
    if 5 <= m <= 8:
        return True
    if m == 1:
        return False
    if n <= m:
        return T <= n
    if m == 2:
        return _arm_m2(m, n, T)
    if m == 3:
        return _m3_member(n, T)
    if m == 4:
        return _arm_m4(m, n, T)
    if m <= 11:
        return t2 <= m * (n - 1) + 1
    return _arm_large(m, n, T, budget)


def _t_star_fast(m: int, n: int, method: str, budget: BudgetLike) -> Optional[int]:
    ext = extremal_value(m, n)
    if ext is not None:
        return ext
    if method == "trivial_m1":
        return None
    if method == "small_n":
        return n
    if method in ("full_m5_7", "full_m8"):
        return _top_candidate(m, n)
    if method == "interval_m9_11":
        c = isqrt(m * (n - 1) + 1)
        return c if (c - n) % 2 == 0 else c - 1
    if method == "oracle":
        return max_sum(m, n, budget)
    arm = _ARM_FUNCS[method]
    for T in range(_top_candidate(m, n), -1, -2):
        if arm(m, n, T):
            return T
    return None


def full_set(m: int, n: int, budget: BudgetLike = None) -> SumSet:
    _check(m, n)
    method = method_for(m, n)
    ext = extremal_value(m, n)
    top = _top_candidate(m, n)
    if m >= 5 or method in ("trivial_m1", "small_n"):
        ts = _t_star_fast(m, n, method, budget)
        values = tuple(range(n % 2, ts + 1, 2)) if ts is not None else ()
        if method == "trivial_m1":
            values = (ts,) if ts is not None else ()
        inner = [v for v in values if v != ext]
        full = not inner and top < 0 or bool(inner) and inner[-1] >= top
    else:
        arm = _ARM_FUNCS[method]
        inner = [T for T in range(n % 2, top + 1, 2) if arm(m, n, T)]
        values = tuple(inner + ([ext] if ext is not None else []))
        ts = values[-1] if values else None
        full = len(inner) == len(range(n % 2, top + 1, 2))
    return SumSet(
        m=m,
        n=n,
        values=values,
        t_star=ts,
        full=full,
        extremal=(-ext, ext) if ext is not None else None,
        method=method,
    )


def t_star(m: int, n: int, budget: BudgetLike = None) -> Optional[int]:
    """max S_m(n), or None when n is not a sum of m squares."""
    _check(m, n)
    return _t_star_fast(m, n, method_for(m, n), budget)


def _square_in(*values: int) -> bool:
    return any(is_square(v) for v in values)


def is_full(m: int, n: int, budget: BudgetLike = None) -> bool:
    """Does S_m(n) contain every T = n (mod 2) with T^2 < mn?"""
    mn = _check(m, n)
    if n <= m:
        return (n + 2) ** 2 >= mn
    if 5 <= m <= 8:
        return True
    if m == 9:
        return not is_square(9 * n - 2)
    if m == 10:
        return not (_square_in(10 * n - 1, 10 * n - 5) if n % 2 else is_square(10 * n - 4))
    if m == 11:
        return not _square_in(11 * n - 2, 11 * n - 6, 11 * n - 8)
    if m >= 12:
        if n <= m + 6:
            return True
        top = _top_candidate(m, n)
        if top * top > m * (n - 1) + 1:
            return False
        return top < 0 or _arm_large(m, n, top, budget)
    return full_set(m, n, budget).full


def diagnose_m3(n: int) -> list[Diagnostic3]:
    """Per-candidate bookkeeping for m = 3, one row per T in the candidate list."""
    _check(3, n)
    rows = []
    for T in t_candidates(3, n):
        delta, d0, k, ell, d, bad_q = _m3_state(n, T)
        if bad_q:
            reason = ", ".join(map(str, bad_q)) + " ≢ 1 mod 6"
        elif k == 0 and ell == 1:
            reason = "(k,ℓ)=(0,1)"
        elif k == 0 and d == 3:
            reason = "(k,d)=(0,3)"
        else:
            reason = ""
        rows.append(Diagnostic3(T, delta, d0, k, ell, d, not reason, reason))
    ext = extremal_value(3, n)
    if ext is not None:
        rows.append(Diagnostic3(ext, 0, 0, 0, 0, gcd(3, ext, n), True, "extremal: n = 3t²"))
    return rows
