import json
import subprocess
import sys
from argparse import ArgumentTypeError

import pytest
from hypothesis import given, strategies as st

from sumsq import cli, sumsets
from sumsq.cli import OutputRecord, format_values, main, parse_int, parse_range


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def records(out):
    return [OutputRecord.from_json(line) for line in out.splitlines() if line.strip()]


class TestParsing:
    @pytest.mark.parametrize("text,value", [("42", 42), ("1_000_000", 10**6), ("1e9", 10**9), ("-3", -3), ("2.0", 2)])
    def test_parse_int(self, text, value):
        assert parse_int(text) == value

    @pytest.mark.parametrize("text", ["2.5", "1e-3", "abc", "inf", "nan"])
    def test_parse_int_rejects(self, text):
        with pytest.raises(ArgumentTypeError):
            parse_int(text)

    def test_parse_range(self):
        assert parse_range("1:300") == (1, 300)
        assert parse_range("5") == (5, 5)
        with pytest.raises(ArgumentTypeError):
            parse_range("9:3")

    def test_format_values(self):
        assert format_values((0, 2, 8, 10)) == "0 ±2 ±8 ±10"
        assert format_values(()) == "∅"


scalars = st.one_of(st.none(), st.integers(-(2**62), 2**62))
record_strategy = st.builds(
    OutputRecord,
    command=st.sampled_from(["set", "member", "table3", "bench"]),
    m=scalars,
    n=scalars,
    T=scalars,
    coeffs=st.one_of(st.none(), st.lists(st.integers(-50, 50), max_size=6).map(tuple)),
    values=st.one_of(st.none(), st.lists(st.integers(-(10**6), 10**6), max_size=20).map(tuple)),
    t_star=scalars,
    full=st.one_of(st.none(), st.booleans()),
    method=st.one_of(st.none(), st.sampled_from(sumsets.METHODS)),
    reason=st.one_of(st.none(), st.text(max_size=20)),
    member=st.one_of(st.none(), st.booleans()),
    parity=st.one_of(st.none(), st.integers(0, 1)),
    payload=st.dictionaries(st.text(max_size=8), st.one_of(st.integers(), st.booleans(), st.text(max_size=8))),
    micros=st.one_of(st.none(), st.floats(allow_nan=False, allow_infinity=False)),
)


@given(record_strategy)
def test_record_round_trip(rec):
    assert OutputRecord.from_json(rec.to_json()) == rec


class TestCommands:
    def test_set(self, capsys):
        code, out, _ = run(capsys, "set", "-m", "3", "-n", "42")
        assert code == 0
        assert "0 ±2 ±8 ±10" in out and "full = false" in out

    def test_set_empty(self, capsys):
        code, out, _ = run(capsys, "set", "-m", "1", "-n", "5")
        assert code == 0 and "∅" in out

    def test_set_json(self, capsys):
        code, out, _ = run(capsys, "set", "-m", "11", "-n", "18", "--json")
        (rec,) = records(out)
        assert code == 0 and rec.t_star == 12 and rec.parity == 0 and rec.full is False
        raw = json.loads(out)
        assert {"m", "n", "T", "values", "t_star", "full", "method", "reason", "micros"} <= raw.keys()

    def test_member_and_tstar(self, capsys):
        code, out, _ = run(capsys, "member", "-m", "9", "-n", "19", "-T", "13", "--json")
        assert code == 0 and records(out)[0].member is False
        code, out, _ = run(capsys, "tstar", "-m", "2", "-n", "3")
        assert code == 0 and "∅" in out

    def test_table3_43(self, capsys):
        code, out, _ = run(capsys, "table3", "-n", "43", "--json")
        rows = [r for r in records(out) if r.T is not None]
        assert code == 0 and len(rows) == 6
        assert {r.T: r.reason for r in rows}[9] == "(k,ℓ)=(0,1)"

    def test_table3_75(self, capsys):
        code, out, _ = run(capsys, "table3", "-n", "75", "--json")
        rows = [r for r in records(out) if r.T is not None]
        assert len(rows) == 8 and rows[-1].T == 15 and rows[-1].reason.startswith("extremal")
        assert sum(1 for r in rows if not r.reason.startswith("extremal")) == 7

    def test_table3_1(self, capsys):
        code, out, _ = run(capsys, "table3", "-n", "1", "--json")
        (row,) = [r for r in records(out) if r.T is not None]
        assert row.T == 1 and row.member and row.payload == {"delta": 2, "d0": 2, "k": 1, "ell": 0, "d": 1}

    def test_scan_full(self, capsys):
        code, out, _ = run(capsys, "scan-full", "-m", "9", "-r", "10:100", "--json", "--threads", "1")
        found = [r.n for r in records(out) if r.n is not None]
        assert code == 0 and found[0] == 19
        code, out, _ = run(capsys, "scan-full", "-m", "8", "-r", "1:5000", "--threads", "1")
        assert "none" in out
        code, out, _ = run(capsys, "scan-full", "-m", "10", "-r", "11:25", "--json", "--threads", "1")
        assert [r.n for r in records(out) if r.n is not None] == [17, 20, 23]

    def test_scan_full_pool_keeps_order(self, capsys):
        code, out, _ = run(capsys, "scan-full", "-m", "11", "-r", "12:400", "--json", "--threads", "2")
        pooled = [r.n for r in records(out) if r.n is not None]
        code, out, _ = run(capsys, "scan-full", "-m", "11", "-r", "12:400", "--json", "--threads", "1")
        assert pooled == [r.n for r in records(out) if r.n is not None] and pooled

    def test_crosscheck(self, capsys):
        code, out, _ = run(capsys, "crosscheck", "-m", "1:1", "-n", "1:100")
        assert code == 0 and "0 mismatches" in out
        code, out, _ = run(capsys, "crosscheck", "-m", "4:4", "-n", "1:1000", "--threads", "1")
        assert code == 0 and "0 mismatches" in out

    def test_crosscheck_sampling_is_seeded(self, capsys):
        args = ("crosscheck", "-m", "2:6", "-n", "1:60", "--samples", "25", "--json", "--threads", "1")
        _, a, _ = run(capsys, *args, "--seed", "7")
        _, b, _ = run(capsys, *args, "--seed", "7")
        ra, rb = records(a)[-1], records(b)[-1]
        assert ra.payload == rb.payload == {"instances": 25, "mismatches": 0}

    def test_crosscheck_reports_mismatch(self, capsys, monkeypatch):
        real = sumsets.full_set

        def broken(m, n, budget=None):
            s = real(m, n, budget)
            return s if n != 7 else real(m, n + 2, budget)

        monkeypatch.setattr(cli.sumsets, "full_set", broken)
        code, out, _ = run(capsys, "crosscheck", "-m", "3:3", "-n", "1:10", "--threads", "1")
        assert code == 1 and "mismatch at m=3, n=7" in out

    def test_partition_and_lehmer(self, capsys):
        code, out, _ = run(capsys, "partition", "-m", "5", "-n", "4", "--json")
        assert code == 0 and records(out)[0].payload == {"count": 2, "lehmer_unique": False}
        code, out, _ = run(capsys, "lehmer", "-m", "6", "-r", "1:50", "--json")
        assert records(out)[0].values == (1, 2, 3, 7)

    def test_linset(self, capsys):
        code, out, _ = run(capsys, "linset", "-a", "3,1,1,0", "-n", "2", "--json")
        assert records(out)[0].values == (-4, -3, -2, -1, 0, 1, 2, 3, 4)
        _, a, _ = run(capsys, "linset", "-a", "1,1,1,1", "-n", "42", "--json")
        _, b, _ = run(capsys, "set", "-m", "4", "-n", "42", "--json")
        assert records(a)[0].values == records(b)[0].values

    def test_pow4(self, capsys):
        code, out, _ = run(capsys, "pow4", "-a", "3,1,1,0", "-r", "1:2000", "--json")
        recs = records(out)
        assert code == 0 and len(recs) == 2000 and all(r.payload["t"] is not None for r in recs)

    def test_pow4_fails_loudly(self, capsys):
        # 4^t is never a value of (1, 0) since x = +-sqrt(3) is not integral
        code, _, err = run(capsys, "pow4", "-a", "1,0", "-r", "3:3")
        assert code == 1 and "no power of 4" in err

    def test_bench(self, capsys):
        code, out, _ = run(capsys, "bench", "-m", "5", "-N", "1e6,1e12", "--samples", "20", "--json")
        recs = records(out)
        assert code == 0 and [r.n for r in recs] == [10**6, 10**12]
        assert all(r.payload["median_us"] > 0 for r in recs)


class TestExitCodes:
    def test_domain(self, capsys):
        assert run(capsys, "set", "-m", "0", "-n", "3")[0] == 2
        assert run(capsys, "bench", "-m", "12", "-N", "1e6")[0] == 2

    def test_usage(self, capsys):
        with pytest.raises(SystemExit) as e:
            main(["set", "-m", "3", "-n", "2.5"])
        assert e.value.code == 2

    def test_budget(self, capsys):
        assert run(capsys, "crosscheck", "-m", "4:4", "-n", "500:501", "--budget", "10", "--threads", "1")[0] == 3
        assert run(capsys, "set", "-m", "12", "-n", "2e6")[0] == 3

    def test_overflow(self, capsys):
        assert run(capsys, "set", "-m", "3", "-n", "4e18")[0] == 4
        assert run(capsys, "member", "-m", "5", "-n", "2e18", "-T", "1")[0] == 4


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sumsq", "set", "-m", "3", "-n", "43"], capture_output=True, text=True)
    assert proc.returncode == 0 and "±1 ±5 ±11" in proc.stdout
