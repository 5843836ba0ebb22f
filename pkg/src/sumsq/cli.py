"""Command-line interface: ``sumsq <command> [flags]``.

Every command prints a human-readable rendering by default and one JSON
object per line with ``--json``. Exit codes: 0 ok, 1 mismatch or not found,
2 usage or domain error, 3 oracle budget exceeded, 4 width overflow.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from decimal import Decimal, InvalidOperation
from typing import Any, Callable, Iterable, Optional, Sequence

from . import bench, linforms, oracle, sumsets
from .errors import DomainError, SumsqError


@dataclass(frozen=True)
class OutputRecord:
    command: str
    m: Optional[int] = None
    n: Optional[int] = None
    T: Optional[int] = None
    coeffs: Optional[tuple[int, ...]] = None
    values: Optional[tuple[int, ...]] = None
    t_star: Optional[int] = None
    full: Optional[bool] = None
    method: Optional[str] = None
    reason: Optional[str] = None
    member: Optional[bool] = None
    parity: Optional[int] = None
    payload: dict = field(default_factory=dict)
    micros: Optional[float] = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), ensure_ascii=False, separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> "OutputRecord":
        raw = json.loads(line)
        known = {f.name for f in fields(cls)}
        data = {k: v for k, v in raw.items() if k in known}
        for key in ("coeffs", "values"):
            if data.get(key) is not None:
                data[key] = tuple(data[key])
        return cls(**data)


# --- argument parsing ---------------------------------------------------------

def parse_int(text: str) -> int:
    """Exact integer from '1_000_000', '1e9', '-3'; rejects non-integral values."""
    try:
        d = Decimal(text.strip())
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not d.is_finite() or d != d.to_integral_value():
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(d)


def parse_range(text: str) -> tuple[int, int]:
    """'lo:hi' (inclusive) or a single value."""
    lo, sep, hi = text.partition(":")
    a = parse_int(lo)
    b = parse_int(hi) if sep else a
    if a > b:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return a, b


def parse_coeffs(text: str) -> tuple[int, ...]:
    return tuple(parse_int(c) for c in text.split(",") if c.strip())


def parse_list(text: str) -> tuple[int, ...]:
    return tuple(parse_int(c) for c in text.split(","))


def format_values(values: Sequence[int]) -> str:
    """'0 ±2 ±8 ±10' from nonnegative values; the empty set prints as ∅."""
    if not values:
        return "∅"
    return " ".join("0" if v == 0 else f"±{v}" for v in values)


def _fmt(v: Any) -> str:
    if v is None:
        return "∅"
    if isinstance(v, bool):
        return str(v).lower()
    return str(v)


# --- worker pool -----------------------------------------------------------------

def pool_map(fn: Callable, jobs: Iterable, threads: Optional[int]) -> Iterable:
    """Ordered map over a process pool; results follow input order."""
    jobs = list(jobs)
    workers = threads or os.cpu_count() or 1
    if workers <= 1 or len(jobs) < 2:
        return map(fn, jobs)
    pool = ProcessPoolExecutor(max_workers=workers)
    chunk = max(1, len(jobs) // (workers * 8))

    def gen():
        with pool:
            yield from pool.map(fn, jobs, chunksize=chunk)

    return gen()


def _full_job(job):
    m, n, budget = job
    return n, sumsets.is_full(m, n, budget)


def _crosscheck_job(job):
    m, n, budget = job
    fast = sumsets.full_set(m, n, budget).as_set()
    slow = oracle.attainable_sums(m, n, budget)
    slow = {s * v for v in slow for s in (1, -1)}
    return m, n, sorted(fast), sorted(slow)


# --- commands ----------------------------------------------------------------------

class Emitter:
    def __init__(self, as_json: bool, out=None):
        self.as_json = as_json
        self.out = out or sys.stdout

    def record(self, rec: OutputRecord, human: Optional[str] = None) -> None:
        if self.as_json:
            print(rec.to_json(), file=self.out, flush=True)
        elif human is not None:
            print(human, file=self.out, flush=True)

    def text(self, line: str) -> None:
        if not self.as_json:
            print(line, file=self.out, flush=True)


def _micros(t0: float) -> float:
    return round((time.perf_counter() - t0) * 1e6, 3)


def cmd_set(args, em: Emitter) -> int:
    t0 = time.perf_counter()
    s = sumsets.full_set(args.m, args.n, args.budget)
    rec = OutputRecord(
        command="set",
        m=args.m,
        n=args.n,
        values=tuple(s.symmetric()),
        t_star=s.t_star,
        full=s.full,
        method=s.method,
        parity=s.parity,
        payload={"extremal": list(s.extremal) if s.extremal else None},
        micros=_micros(t0),
    )
    em.record(
        rec,
        f"S_{args.m}({args.n}) = {format_values(s.values)}\n"
        f"T* = {_fmt(s.t_star)}  full = {_fmt(s.full)}  method = {s.method}",
    )
    return 0


def cmd_member(args, em: Emitter) -> int:
    t0 = time.perf_counter()
    hit = sumsets.contains(args.m, args.n, args.T, args.budget)
    rec = OutputRecord(
        command="member",
        m=args.m,
        n=args.n,
        T=args.T,
        member=hit,
        method=sumsets.method_for(args.m, args.n),
        micros=_micros(t0),
    )
    em.record(rec, f"{args.T} {'∈' if hit else '∉'} S_{args.m}({args.n})")
    return 0


def cmd_tstar(args, em: Emitter) -> int:
    t0 = time.perf_counter()
    ts = sumsets.t_star(args.m, args.n, args.budget)
    rec = OutputRecord(
        command="tstar", m=args.m, n=args.n, t_star=ts, method=sumsets.method_for(args.m, args.n), micros=_micros(t0)
    )
    em.record(rec, f"T*_{args.m}({args.n}) = {_fmt(ts)}")
    return 0


def cmd_table3(args, em: Emitter) -> int:
    t0 = time.perf_counter()
    rows = sumsets.diagnose_m3(args.n)
    s = sumsets.full_set(3, args.n, args.budget)
    em.text(f"{'T':>6} | {'Δ':>8} | {'D₀':>8} | k | ℓ | d | member | reason")
    for r in rows:
        rec = OutputRecord(
            command="table3",
            m=3,
            n=args.n,
            T=r.T,
            member=r.member,
            reason=r.reason,
            payload={"delta": r.delta, "d0": r.d0, "k": r.k, "ell": r.ell, "d": r.d},
        )
        em.record(
            rec,
            f"{r.T:>6} | {r.delta:>8} | {r.d0:>8} | {r.k} | {r.ell} | {r.d} | {_fmt(r.member):>6} | {r.reason}",
        )
    summary = OutputRecord(
        command="table3",
        m=3,
        n=args.n,
        values=tuple(s.symmetric()),
        t_star=s.t_star,
        full=s.full,
        method=s.method,
        micros=_micros(t0),
    )
    em.record(summary, f"S_3({args.n}) = {format_values(s.values)}")
    return 0


def cmd_scan_full(args, em: Emitter) -> int:
    lo, hi = args.range
    t0 = time.perf_counter()
    jobs = [(args.m, n, args.budget) for n in range(lo, hi + 1)]
    found = []
    for n, full in pool_map(_full_job, jobs, args.threads):
        if not full:
            found.append(n)
            em.record(OutputRecord(command="scan-full", m=args.m, n=n, full=False))
    em.text(f"non-full n for m={args.m} in [{lo}, {hi}]: {' '.join(map(str, found)) or 'none'}")
    em.record(
        OutputRecord(command="scan-full", m=args.m, payload={"range": [lo, hi], "count": len(found)}, micros=_micros(t0))
    )
    return 0


def cmd_crosscheck(args, em: Emitter) -> int:
    (m_lo, m_hi), (n_lo, n_hi) = args.m, args.range
    t0 = time.perf_counter()
    jobs = [(m, n, args.budget) for m in range(m_lo, m_hi + 1) for n in range(n_lo, n_hi + 1)]
    if args.samples is not None and args.samples < len(jobs):
        jobs = sorted(random.Random(args.seed).sample(jobs, args.samples))
    mismatches = 0
    first = None
    for m, n, fast, slow in pool_map(_crosscheck_job, jobs, args.threads):
        if fast != slow:
            mismatches += 1
            if first is None:
                first = (m, n, fast, slow)
                em.record(
                    OutputRecord(
                        command="crosscheck",
                        m=m,
                        n=n,
                        values=tuple(fast),
                        reason="mismatch",
                        payload={"oracle": slow},
                    ),
                    f"mismatch at m={m}, n={n}: fast {fast} vs oracle {slow}",
                )
    em.record(
        OutputRecord(
            command="crosscheck",
            payload={"instances": len(jobs), "mismatches": mismatches},
            micros=_micros(t0),
        ),
        f"{mismatches} mismatches ({len(jobs)} instances)",
    )
    return 1 if mismatches else 0


def cmd_partition(args, em: Emitter) -> int:
    t0 = time.perf_counter()
    count = oracle.partition_count(args.m, args.n, args.budget)
    unique = oracle.lehmer_unique(args.m, args.n)
    rec = OutputRecord(
        command="partition",
        m=args.m,
        n=args.n,
        payload={"count": count, "lehmer_unique": unique},
        micros=_micros(t0),
    )
    em.record(rec, f"P_{args.m}({args.n}) = {count}  unique by closed form = {_fmt(unique)}")
    return 0 if unique == (count == 1) else 1


def cmd_lehmer(args, em: Emitter) -> int:
    lo, hi = args.range
    t0 = time.perf_counter()
    hits = [n for n in range(max(lo, 1), hi + 1) if oracle.lehmer_unique(args.m, n)]
    em.record(
        OutputRecord(command="lehmer", m=args.m, values=tuple(hits), payload={"range": [lo, hi]}, micros=_micros(t0)),
        f"P_{args.m}(n) = 1 for n in [{lo}, {hi}]: {' '.join(map(str, hits)) or 'none'}",
    )
    return 0


def cmd_linset(args, em: Emitter) -> int:
    t0 = time.perf_counter()
    s = linforms.full_set(args.a, args.n, args.budget)
    rec = OutputRecord(
        command="linset",
        m=len(s.coeffs),
        n=args.n,
        coeffs=s.coeffs,
        values=tuple(s.symmetric()),
        t_star=s.t_star,
        method=s.method,
        payload={"extremal": list(s.extremal) if s.extremal else None},
        micros=_micros(t0),
    )
    label = ",".join(map(str, s.coeffs))
    em.record(
        rec,
        f"S_A({args.n}) for A = ({label}) = {format_values(s.values)}\nT* = {_fmt(s.t_star)}  method = {s.method}",
    )
    return 0


def cmd_pow4(args, em: Emitter) -> int:
    lo, hi = args.range
    form = linforms.normalize(args.a)
    missing = []
    for n in range(max(lo, 1), hi + 1):
        t = linforms.min_power_of_4(form, n)
        if t is None:
            missing.append(n)
        em.record(
            OutputRecord(command="pow4", n=n, coeffs=form.coeffs, member=t is not None, payload={"t": t}),
            f"n={n} t={_fmt(t)}",
        )
    if missing:
        print(f"no power of 4 (t <= 20) for n in {missing}", file=sys.stderr)
        return 1
    return 0


def cmd_bench(args, em: Emitter) -> int:
    if not 1 <= args.m <= 11:
        raise DomainError(f"bench covers the criterion paths m <= 11, got m={args.m}")
    for n in args.N:
        row = bench.bench_contains(args.m, n, args.samples, args.seed)
        fac = "" if row.factor_median_us is None else f"  factorize(Δ) median {row.factor_median_us:.2f} µs"
        em.record(
            OutputRecord(
                command="bench",
                m=args.m,
                n=n,
                method=row.method,
                payload={"samples": row.samples, "median_us": row.median_us, "max_us": row.max_us,
                         "factor_median_us": row.factor_median_us},
                micros=row.median_us,
            ),
            f"m={args.m} n={n:.0e} {row.method}: median {row.median_us:.3f} µs  max {row.max_us:.3f} µs{fac}",
        )
    if args.separation:
        sep = bench.separation(3, args.separation_n, max(args.samples, 500), args.seed, args.budget)
        em.record(
            OutputRecord(
                command="bench",
                m=3,
                n=sep.n,
                payload={"oracle_seconds": sep.oracle_seconds, "oracle_nodes": sep.oracle_nodes,
                         "contains_median_us": sep.contains_median_us, "ratio": sep.ratio,
                         "separated": sep.separated},
                micros=sep.contains_median_us,
            ),
            f"m=3 n={sep.n:.0e}: enumeration {sep.oracle_seconds:.2f} s vs contains "
            f"{sep.contains_median_us:.3f} µs -> {sep.ratio:.2e}x",
        )
    return 0


# --- entry point -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sumsq", description="Sums of integers with a fixed sum of squares.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="one JSON record per line")
    common.add_argument("--threads", type=int, default=None, help="worker processes (default: CPU count)")
    common.add_argument("--budget", type=parse_int, default=None, help="oracle work limit (default: $SUMSQ_BUDGET or 1e8)")
    common.add_argument("--seed", type=int, default=0)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=fn)
        return sp

    for name, fn, h in (("set", cmd_set, "print S_m(n)"), ("tstar", cmd_tstar, "print max S_m(n)")):
        sp = add(name, fn, h)
        sp.add_argument("-m", type=parse_int, required=True)
        sp.add_argument("-n", type=parse_int, required=True)

    sp = add("member", cmd_member, "is T in S_m(n)?")
    sp.add_argument("-m", type=parse_int, required=True)
    sp.add_argument("-n", type=parse_int, required=True)
    sp.add_argument("-T", type=parse_int, required=True)

    sp = add("table3", cmd_table3, "per-candidate m = 3 table")
    sp.add_argument("-n", type=parse_int, required=True)

    sp = add("scan-full", cmd_scan_full, "list n in a range where S_m(n) is not full")
    sp.add_argument("-m", type=parse_int, required=True)
    sp.add_argument("-r", dest="range", type=parse_range, required=True, metavar="LO:HI")

    sp = add("crosscheck", cmd_crosscheck, "compare full_set with the enumeration oracle")
    sp.add_argument("-m", type=parse_range, required=True, metavar="LO:HI")
    sp.add_argument("-n", "-r", dest="range", type=parse_range, required=True, metavar="LO:HI")
    sp.add_argument("--samples", type=parse_int, default=None, help="check a random subset of this size")

    sp = add("partition", cmd_partition, "P_m(n) and the closed-form uniqueness test")
    sp.add_argument("-m", type=parse_int, required=True)
    sp.add_argument("-n", type=parse_int, required=True)

    sp = add("lehmer", cmd_lehmer, "n in a range with P_m(n) = 1")
    sp.add_argument("-m", type=parse_int, required=True)
    sp.add_argument("-r", dest="range", type=parse_range, required=True, metavar="LO:HI")

    sp = add("linset", cmd_linset, "S_{m,A}(n) for a coefficient vector A")
    sp.add_argument("-a", type=parse_coeffs, required=True, metavar="C1,C2,...")
    sp.add_argument("-n", type=parse_int, required=True)

    sp = add("pow4", cmd_pow4, "smallest t with 4^t in S_{m,A}(n), per n")
    sp.add_argument("-a", type=parse_coeffs, required=True, metavar="C1,C2,...")
    sp.add_argument("-r", dest="range", type=parse_range, required=True, metavar="LO:HI")

    sp = add("bench", cmd_bench, "contains latency per magnitude of n")
    sp.add_argument("-m", type=parse_int, required=True)
    sp.add_argument("-N", type=parse_list, default=bench.DEFAULT_MAGNITUDES, metavar="N1,N2,...")
    sp.add_argument("--samples", type=parse_int, default=200)
    sp.add_argument("--separation", action="store_true", help="also time the enumeration oracle for m = 3")
    sp.add_argument("--separation-n", type=parse_int, default=bench.SEPARATION_N)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    em = Emitter(args.json)
    try:
        return args.func(args, em)
    except SumsqError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except KeyboardInterrupt:
        return 130


if __name__ == "__main__":
    sys.exit(main())
