"""Integer primitives: factorization, valuations, Legendre symbols, sums of squares.

Factorization is trial division by every prime below 10**6, followed by
Brent's variant of Pollard rho on whatever cofactor survives. The trial
division is organized so absent primes cost almost nothing: one gcd against
the product of the odd primes below 1000, a smallest-prime-factor table below
10**6, and chunked gcds against prime products above that. Primality is
Miller-Rabin with witness sets that are exact below 2**64.
"""

from __future__ import annotations

import random
from array import array
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt, prod

import numpy as np
import gmpy2
from gmpy2 import is_strong_prp

from .errors import INT64_MAX, MAX_INPUT, DomainError, WidthOverflowError

TRIAL_BOUND = 10**6
_CHUNK = 512
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
# (bound, witnesses): Miller-Rabin with these bases is exact for n < bound
_MR_LADDER = (
    (1_373_653, (2, 3)),
    (4_759_123_141, (2, 7, 61)),
    (2_152_302_898_747, (2, 3, 5, 7, 11)),
    (3_474_749_660_383, (2, 3, 5, 7, 11, 13)),
    (341_550_071_728_321, (2, 3, 5, 7, 11, 13, 17)),
    (3_825_123_056_546_413_051, (2, 3, 5, 7, 11, 13, 17, 19, 23)),
)


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: tuple[tuple[int, int], ...]

    def __iter__(self):
        return iter(self.factors)

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0


@dataclass(frozen=True)
class SquarefreeSplit:
    d0: int
    d1: int


SMALL_BOUND = 1000


@dataclass(frozen=True)
class _Tables:
    spf: array  # smallest prime factor below TRIAL_BOUND; 0 marks a prime
    primes: tuple[int, ...]  # primes in [SMALL_BOUND, TRIAL_BOUND)
    chunks: tuple[int, ...]  # products of consecutive runs of `primes`
    small: tuple[int, ...]  # odd primes below SMALL_BOUND
    small_product: int


@lru_cache(maxsize=None)
def _tables() -> _Tables:
    spf = np.zeros(TRIAL_BOUND, dtype=np.int32)
    is_p = np.ones(TRIAL_BOUND, dtype=bool)
    is_p[:2] = False
    for i in range(2, isqrt(TRIAL_BOUND - 1) + 1):
        if is_p[i]:
            is_p[i * i :: i] = False
    small = [int(p) for p in np.flatnonzero(is_p[:SMALL_BOUND])]
    for p in reversed(small):
        spf[p * p :: p] = p
    table = array("i")
    table.frombytes(spf.tobytes())
    primes = tuple(int(p) for p in np.flatnonzero(is_p[SMALL_BOUND:]) + SMALL_BOUND)
    chunks = tuple(prod(primes[i : i + _CHUNK]) for i in range(0, len(primes), _CHUNK))
    odd_small = tuple(small[1:])
    return _Tables(table, primes, chunks, odd_small, prod(odd_small))


def _witnesses(n: int) -> tuple[int, ...]:
    if n < 4_759_123_141:
        return (2, 3) if n < 1_373_653 else (2, 7, 61)
    for bound, ws in _MR_LADDER:
        if n < bound:
            return ws
    return _MR_WITNESSES


def is_prime(n: int) -> bool:
    if n < TRIAL_BOUND:
        return n >= 2 and _tables().spf[n] == 0
    # strong-probable-prime rounds run in gmpy2, which needs gcd(n, a) = 1
    for a in _witnesses(n):
        if n % a == 0 or not is_strong_prp(n, a):
            return False
    return True


def _brent(n: int, rng: random.Random) -> int:
    """Return a nontrivial factor of the odd composite n."""
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g


def _add(out: dict[int, int], p: int, e: int = 1) -> None:
    out[p] = out.get(p, 0) + e


def _rho_split(n: int, out: dict[int, int]) -> None:
    # n has no prime factor below TRIAL_BOUND
    if n == 1:
        return
    if is_prime(n):
        _add(out, n)
        return
    r = isqrt(n)
    if r * r == n:
        _rho_split(r, out)
        _rho_split(r, out)
        return
    # fixed seed keeps factorize deterministic
    f = _brent(n, random.Random(n))
    _rho_split(f, out)
    _rho_split(n // f, out)


def _strip(n: int, p: int, out: dict[int, int]) -> int:
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    _add(out, p, e)
    return n


def _walk_spf(n: int, out: dict[int, int]) -> None:
    spf = _tables().spf
    while n > 1:
        p = spf[n] or n
        n //= p
        _add(out, p)


def _strip_small(n: int, out: dict[int, int]) -> int:
    """Remove every prime below SMALL_BOUND from odd n; returns the cofactor."""
    t = _tables()
    g = gcd(n, t.small_product)
    if g == 1:
        return n
    if g < TRIAL_BOUND:
        spf = t.spf
        while g > 1:
            p = spf[g] or g
            g //= p
            n = _strip(n, p, out)
    else:
        for p in t.small:
            if g % p == 0:
                n = _strip(n, p, out)
    return n


def _split_cofactor(n: int, out: dict[int, int]) -> None:
    """Factor n > 1 whose prime factors are all at least SMALL_BOUND."""
    if n < SMALL_BOUND * SMALL_BOUND or is_prime(n):
        _add(out, n)
        return
    t = _tables()
    for ci, chunk in enumerate(t.chunks):
        lo = ci * _CHUNK
        if t.primes[lo] ** 2 > n:
            break
        g = gcd(chunk, n)
        if g == 1:
            continue
        for p in t.primes[lo : lo + _CHUNK]:
            if g % p == 0:
                n = _strip(n, p, out)
        if n == 1:
            return
    if n < TRIAL_BOUND * TRIAL_BOUND:
        # trial division ran past sqrt(n) or to TRIAL_BOUND: what is left is prime
        if n > 1:
            _add(out, n)
        return
    _rho_split(n, out)


TINY_BOUND = 100
_TINY = (5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)
_TINY_PRODUCT = prod(_TINY)


def split_tiny(n: int) -> tuple[dict[int, int], int]:
    """Pull the primes 5..97 out of n (n prime to 6); returns (factors, cofactor)."""
    out: dict[int, int] = {}
    g = gcd(n, _TINY_PRODUCT)
    if g == 1:
        return out, n
    if g < TRIAL_BOUND:
        spf = _tables().spf
        while g > 1:
            p = spf[g] or g
            g //= p
            n = _strip(n, p, out)
        return out, n
    for p in _TINY:
        if g % p == 0:
            n = _strip(n, p, out)
    return out, n


def factor_dict(n: int) -> dict[int, int]:
    """Unchecked prime -> exponent map of n >= 1 (insertion order is not sorted)."""
    out: dict[int, int] = {}
    tz = (n & -n).bit_length() - 1
    if tz:
        out[2] = tz
        n >>= tz
    if n < TRIAL_BOUND:
        _walk_spf(n, out)
        return out
    n = _strip_small(n, out)
    if n > 1:
        _split_cofactor(n, out)
    return out


def factorize(n: int, limit: int = MAX_INPUT) -> Factorization:
    if n < 1:
        raise DomainError(f"factorize needs n >= 1, got {n}")
    if n > limit:
        raise WidthOverflowError(f"factorize input {n} exceeds {limit}")
    return Factorization(n, tuple(sorted(factor_dict(n).items())))


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")


def v_p(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise DomainError("v_p(0) is undefined")
    _require_prime(p)
    n = abs(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def p_free_part(n: int, p: int) -> int:
    if n == 0:
        raise DomainError("p-free part of 0 is undefined")
    _require_prime(p)
    while n % p == 0:
        n //= p
    return n


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n, by reciprocity."""
    if n <= 0 or n % 2 == 0:
        raise DomainError(f"jacobi needs odd positive modulus, got {n}")
    a %= n
    sign = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a %= n
    return sign if n == 1 else 0


def legendre(n: int, p: int) -> int:
    if p == 2:
        raise DomainError("legendre needs an odd prime")
    _require_prime(p)
    if n % p == 0:
        raise DomainError(f"{p} divides {n}")
    return jacobi(n, p)


def squarefree_split(n: int) -> SquarefreeSplit:
    if n < 1:
        raise DomainError(f"squarefree_split needs n >= 1, got {n}")
    d0 = d1 = 1
    for p, e in factorize(n, limit=INT64_MAX):
        if e % 2:
            d0 *= p
        d1 *= p ** (e // 2)
    return SquarefreeSplit(d0, d1)


def is_square(n: int) -> bool:
    return n >= 0 and gmpy2.is_square(n)


def _is_sos2(n: int) -> bool:
    if n == 0:
        return True
    while n % 2 == 0:
        n //= 2
    if n % 4 == 3:
        return False
    return all(p % 4 != 3 or e % 2 == 0 for p, e in factorize(n, limit=INT64_MAX))


def _is_sos3(n: int) -> bool:
    if n == 0:
        return True
    while n % 4 == 0:
        n //= 4
    return n % 8 != 7


def is_sos(n: int, k: int) -> bool:
    """True iff n is a sum of k integer squares."""
    if n < 0:
        raise DomainError(f"is_sos needs n >= 0, got {n}")
    if k < 1:
        raise DomainError(f"is_sos needs k >= 1, got {k}")
    if n > INT64_MAX:
        raise WidthOverflowError(f"is_sos input {n} exceeds 64-bit width")
    if k == 1:
        return is_square(n)
    if k == 2:
        return _is_sos2(n)
    if k == 3:
        return _is_sos3(n)
    return True
