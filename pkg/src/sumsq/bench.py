"""Latency of the criterion paths, and their distance from plain enumeration.

Timings are per input: each sampled T is run in a short loop several times and
the best loop is kept, which strips timer noise and one-off cache misses.
Medians and maxima are then taken over the sampled inputs.
"""

from __future__ import annotations

import random
import statistics
import time
from dataclasses import dataclass
from math import isqrt
from typing import Callable, Optional, Sequence

from .arith import factorize
from .errors import INT64_MAX
from .oracle import Budget, attainable_sums
from .sumsets import _check, contains, method_for

DEFAULT_MAGNITUDES = (10**6, 10**9, 10**12)
SEPARATION_N = 10**8
SEPARATION_TARGET = 10**6


@dataclass(frozen=True)
class LatencyRow:
    m: int
    n: int
    method: str
    samples: int
    median_us: float
    max_us: float
    factor_median_us: Optional[float]  # full factorization of the m = 3 discriminant


@dataclass(frozen=True)
class Separation:
    m: int
    n: int
    oracle_seconds: float
    oracle_nodes: int
    contains_median_us: float
    ratio: float

    @property
    def separated(self) -> bool:
        return self.ratio >= SEPARATION_TARGET


def sample_candidates(m: int, n: int, count: int, rng: random.Random) -> list[int]:
    """Random T >= 0 with T = n (mod 2) and T^2 < mn."""
    mn = _check(m, n)
    top = isqrt(mn - 1)
    out = []
    while len(out) < count:
        T = rng.randrange(0, top + 1)
        if (T - n) % 2 == 0:
            out.append(T)
    return out


def best_times(fn: Callable[[int], object], inputs: Sequence[int], loops: int = 8, repeats: int = 3) -> list[float]:
    """Seconds per call of fn(x) for each x, best of `repeats` loops."""
    clock = time.perf_counter
    out = []
    for x in inputs:
        best = float("inf")
        for _ in range(repeats):
            t0 = clock()
            for _ in range(loops):
                fn(x)
            best = min(best, (clock() - t0) / loops)
        out.append(best)
    return out


def bench_contains(m: int, n: int, samples: int = 200, seed: int = 0) -> LatencyRow:
    rng = random.Random(seed)
    Ts = sample_candidates(m, n, samples, rng)
    times = best_times(lambda T: contains(m, n, T), Ts)
    factor_us = None
    if m == 3:
        ft = best_times(lambda T: factorize(3 * n - T * T, limit=INT64_MAX), Ts, loops=2, repeats=2)
        factor_us = statistics.median(ft) * 1e6
    return LatencyRow(
        m=m,
        n=n,
        method=method_for(m, n),
        samples=len(Ts),
        median_us=statistics.median(times) * 1e6,
        max_us=max(times) * 1e6,
        factor_median_us=factor_us,
    )


def separation(m: int = 3, n: int = SEPARATION_N, samples: int = 2000, seed: int = 0, budget=None) -> Separation:
    """Run the enumeration oracle once at (m, n) and compare with median contains latency."""
    row = bench_contains(m, n, samples, seed)
    bud = Budget.of(budget)
    t0 = time.perf_counter()
    attainable_sums(m, n, bud)
    secs = time.perf_counter() - t0
    return Separation(
        m=m,
        n=n,
        oracle_seconds=secs,
        oracle_nodes=bud.used,
        contains_median_us=row.median_us,
        ratio=secs / (row.median_us * 1e-6),
    )
