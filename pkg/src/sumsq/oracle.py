"""Ground truth by enumeration.

Nothing here uses the number-theoretic criteria from the rest of the package
(Lehmer's classification excepted, which is checked against
:func:`partition_count`). Every search is bounded by a :class:`Budget`; running
out raises :class:`~sumsq.errors.BudgetExceeded` rather than returning a
truncated answer.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from math import isqrt
from typing import Iterator, Optional, Union

import numpy as np

from .arith import factorize, is_square
from .errors import INT64_MAX, BudgetExceeded, DomainError

DEFAULT_BUDGET = 10**8
DP_MAX_N = 10**6

Representation = tuple[int, ...]


def default_budget() -> int:
    raw = os.environ.get("SUMSQ_BUDGET")
    if raw:
        return int(float(raw)) if "e" in raw.lower() else int(raw)
    return DEFAULT_BUDGET


class Budget:
    """Work counter shared by one oracle call (and anything it calls)."""

    def __init__(self, limit: Optional[int] = None):
        self.limit = default_budget() if limit is None else limit
        self.used = 0

    @classmethod
    def of(cls, budget: Union["Budget", int, None]) -> "Budget":
        return budget if isinstance(budget, Budget) else cls(budget)

    def spend(self, units: int = 1) -> None:
        self.used += units
        if self.used > self.limit:
            raise BudgetExceeded(f"oracle budget of {self.limit} exceeded")


BudgetLike = Union[Budget, int, None]


def _check_mn(m: int, n: int) -> None:
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")


def enumerate_reps(m: int, n: int, budget: BudgetLike = None) -> Iterator[Representation]:
    """Yield each nonincreasing m-tuple of nonnegative integers with square sum n.

    Tuples come out in lexicographically decreasing order.
    """
    _check_mn(m, n)
    bud = Budget.of(budget)
    prefix: list[int] = []

    def rec(rem: int, slots: int, cap: int) -> Iterator[Representation]:
        bud.spend()
        if rem == 0:
            yield tuple(prefix) + (0,) * slots
            return
        if slots == 0:
            return
        # smallest x with slots * x^2 >= rem, else the rest cannot catch up
        q = -(-rem // slots)
        lo = isqrt(q - 1) + 1
        for x in range(min(cap, isqrt(rem)), lo - 1, -1):
            prefix.append(x)
            yield from rec(rem - x * x, slots - 1, x)
            prefix.pop()

    return rec(n, m, isqrt(n))


def _subset_sum_bits(parts) -> int:
    bits = 1
    for v, c in _multiplicities(parts):
        for _ in range(c):
            bits |= bits << v
    return bits


def _multiplicities(parts) -> list[tuple[int, int]]:
    out: dict[int, int] = {}
    for p in parts:
        if p:
            out[p] = out.get(p, 0) + 1
    return sorted(out.items())


def signed_sums(parts) -> set[int]:
    """All |e_1 p_1 + ... + e_k p_k| over sign vectors e."""
    total = sum(parts)
    bits = _subset_sum_bits(parts)
    out = set()
    while bits:
        low = bits & -bits
        out.add(abs(total - 2 * (low.bit_length() - 1)))
        bits ^= low
    return out


def sign_witness(parts, target: int) -> Optional[tuple[int, ...]]:
    """Signs e with sum(e_i * parts_i) == target, or None."""
    total = sum(parts)
    if (total - target) % 2 or abs(target) > total:
        return None
    want = (total - target) // 2  # sum of the parts that get a minus sign
    layers = [1]
    for p in parts:
        layers.append(layers[-1] | (layers[-1] << p))
    if not (layers[-1] >> want) & 1:
        return None
    signs = [1] * len(parts)
    for i in range(len(parts), 0, -1):
        if not (layers[i - 1] >> want) & 1:
            signs[i - 1] = -1
            want -= parts[i - 1]
    return tuple(signs)


def attainable_sums(m: int, n: int, budget: BudgetLike = None) -> set[int]:
    """Nonnegative T = |x_1 + ... + x_m| over integer solutions of x_1^2 + ... + x_m^2 = n."""
    out: set[int] = set()
    for rep in enumerate_reps(m, n, budget):
        out |= signed_sums(rep)
    return out


def attainable_with_witness(m: int, n: int, T: int, budget: BudgetLike = None) -> Optional[tuple[int, ...]]:
    """An integer vector x with sum T and square sum n, or None."""
    for rep in enumerate_reps(m, n, budget):
        signs = sign_witness(rep, T)
        if signs is not None:
            return tuple(s * p for s, p in zip(signs, rep))
    return None


def partition_counts(m: int, n_max: int, budget: BudgetLike = None) -> list[int]:
    """P_m(s) for s = 0..n_max: multisets of m nonnegative squares summing to s."""
    _check_mn(m, n_max)
    bud = Budget.of(budget)
    r = isqrt(n_max)
    bud.spend(m * r * (n_max + 1))
    # row j counts multisets of exactly j positive squares
    dp = np.zeros((m + 1, n_max + 1), dtype=np.int64)
    dp[0, 0] = 1
    for x in range(1, r + 1):
        sq = x * x
        for j in range(1, m + 1):
            dp[j, sq:] += dp[j - 1, : n_max + 1 - sq]
    return [int(v) for v in dp.sum(axis=0)]


def partition_count(m: int, n: int, budget: BudgetLike = None) -> int:
    return partition_counts(m, n, budget)[n]


_LEHMER3 = frozenset(
    {1, 2, 3, 5, 6, 10, 11, 13, 14, 19, 21, 22, 30, 35, 37, 42, 43, 46, 58, 67,
     70, 78, 91, 93, 115, 133, 142, 163, 190, 235, 253, 403, 427}
)
_LEHMER4_SMALL = frozenset({1, 3, 5, 7, 11, 15, 23})
_LEHMER4_SCALED = frozenset({2, 6, 14})
_LEHMER5 = frozenset({1, 2, 3, 6, 7, 15})
_LEHMER6 = frozenset({1, 2, 3, 7})
# from m = 7 on, 7 = 2^2 + 3*1^2 = 7*1^2 has two partitions
_LEHMER_BIG = frozenset({1, 2, 3})


def _strip4(n: int) -> int:
    while n % 4 == 0:
        n //= 4
    return n


def lehmer_unique(m: int, n: int) -> bool:
    """Closed-form test for P_m(n) == 1 (no enumeration)."""
    if m < 1 or n < 1:
        raise DomainError(f"lehmer_unique needs m, n >= 1, got {m}, {n}")
    if m == 1:
        return is_square(n)
    if m == 2:
        while n % 2 == 0:
            n //= 2
        one_mod_4 = []
        for p, e in factorize(n, limit=INT64_MAX):
            if p % 4 == 3:
                if e % 2:
                    return False
            else:
                one_mod_4.append(e)
        return one_mod_4 == [] or one_mod_4 == [1]
    if m == 3:
        return _strip4(n) in _LEHMER3
    if m == 4:
        return n in _LEHMER4_SMALL or _strip4(n) in _LEHMER4_SCALED
    if m == 5:
        return n in _LEHMER5
    if m == 6:
        return n in _LEHMER6
    return n in _LEHMER_BIG


def max_sum(m: int, n: int, budget: BudgetLike = None, max_n: int = DP_MAX_N) -> Optional[int]:
    """Largest x_1 + ... + x_m over integer solutions of sum x_i^2 = n, or None if n is not a sum of m squares."""
    _check_mn(m, n)
    if n > max_n:
        raise BudgetExceeded(f"max-sum DP capped at n <= {max_n}, got n={n}")
    Budget.of(budget).spend(m * (n + 1))
    neg = np.int64(-(1 << 40))
    best = np.full(n + 1, neg, dtype=np.int64)
    best[0] = 0
    squares = [(x, x * x) for x in range(1, isqrt(n) + 1)]
    for _ in range(m):
        nxt = best.copy()
        for x, sq in squares:
            np.maximum(nxt[sq:], best[: n + 1 - sq] + x, out=nxt[sq:])
        best = nxt
    v = int(best[n])
    return v if v >= 0 else None


def lattice_vectors(m: int, bound: int) -> np.ndarray:
    """All v in Z^m with |v|^2 <= bound, one per row."""
    r = isqrt(bound)
    axis = np.arange(-r, r + 1)
    grid = np.array(np.meshgrid(*([axis] * m), indexing="ij")).reshape(m, -1).T
    return grid[(grid * grid).sum(axis=1) <= bound]


@dataclass(frozen=True)
class FormTable:
    """Forms aX^2 + 2hXY + bY^2 with a, b <= bound that are sums of m squares of linear forms."""

    m: int
    bound: int
    forms: frozenset

    def __contains__(self, abh) -> bool:
        return tuple(abh) in self.forms


def representable_forms(m: int, bound: int, budget: BudgetLike = None) -> FormTable:
    """Exhaustive search for sum_i (a_i X + b_i Y)^2 over all small integer vectors.

    The first coefficient vector is taken nonincreasing and nonnegative; any
    solution can be moved there by a simultaneous signed permutation of both
    vectors, which preserves both norms and their dot product.
    """
    bud = Budget.of(budget)
    vecs = lattice_vectors(m, bound)
    norms = (vecs * vecs).sum(axis=1)
    bud.spend(len(vecs))
    off, width = bound, bound + 1  # |h| <= bound by Cauchy-Schwarz
    found: set[tuple[int, int, int]] = set()
    for a in range(bound + 1):
        for rep in enumerate_reps(m, a, bud):
            dots = vecs @ np.array(rep, dtype=vecs.dtype)
            bud.spend(len(vecs))
            keys = np.unique((dots + off) * width + norms)
            found.update((a, int(k // width) - off, int(k % width)) for k in keys)
    return FormTable(m, bound, frozenset(found))


def representable_form(a: int, h: int, b: int, m: int) -> bool:
    """Single-form brute force: exists integer (a_i), (b_i) with the given Gram matrix."""
    if a < 0 or b < 0:
        return False
    b_vecs = [v for v in itertools.product(range(-isqrt(b), isqrt(b) + 1), repeat=m) if sum(x * x for x in v) == b]
    for rep in enumerate_reps(m, a):
        for v in b_vecs:
            if sum(x * y for x, y in zip(rep, v)) == h:
                return True
    return False
