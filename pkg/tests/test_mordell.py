import pytest

from sumsq.errors import DomainError
from sumsq.mordell import (
    BinaryForm,
    MordellVerdict,
    decompose_degenerate,
    is_psd,
    rank_zero_delta,
    representable,
)
from sumsq.oracle import representable_form

GRID = [(a, h, b) for a in range(31) for b in range(31) for h in range(-30, 31)]


def test_form_basics():
    f = BinaryForm(3, 6, 42)
    assert f.delta == 90
    assert f.content == 3
    assert BinaryForm(0, 0, 5) == BinaryForm(5, 0, 0)


@pytest.mark.parametrize("abh,psd", [((3, 1, 1), True), ((1, 2, 1), False), ((0, 0, 0), True)])
def test_is_psd(abh, psd):
    assert is_psd(BinaryForm(*abh)) is psd


class TestRankZero:
    def test_perfect_square(self):
        assert representable(BinaryForm(4, 6, 9), 1)
        assert rank_zero_delta(BinaryForm(4, 6, 9), 1)
        assert decompose_degenerate(BinaryForm(4, 6, 9)) == (1, 2, 3)

    def test_three_not_two_squares(self):
        v = rank_zero_delta(BinaryForm(3, 3, 3), 2)
        assert not v and v.failed_condition == "sos_m_a"
        assert decompose_degenerate(BinaryForm(3, 3, 3)) == (3, 1, 1)

    def test_two_is_two_squares(self):
        assert rank_zero_delta(BinaryForm(2, 2, 2), 2)

    def test_negative_middle(self):
        assert decompose_degenerate(BinaryForm(2, -2, 2)) == (2, 1, -1)

    def test_domain(self):
        with pytest.raises(DomainError):
            rank_zero_delta(BinaryForm(1, 0, 1), 2)
        with pytest.raises(DomainError):
            rank_zero_delta(BinaryForm(0, 0, 0), 2)


class TestExamples:
    def test_m2_delta_not_square(self):
        v = representable(BinaryForm(2, 4, 9), 2)
        assert not v and v.failed_condition == "sos1_delta"
        assert not representable_form(2, 4, 9, 2)

    def test_n42_table_row(self):
        v = representable(BinaryForm(3, 6, 42), 3)
        assert v == MordellVerdict(False, "beta", 5)

    def test_m4(self):
        assert representable(BinaryForm(4, 1, 7), 4)
        assert representable_form(4, 1, 7, 4)

    def test_m5_always(self):
        for a, h, b in GRID[::97]:
            f = BinaryForm(a, h, b)
            if is_psd(f):
                assert representable(f, 5)

    def test_not_psd(self):
        assert representable(BinaryForm(1, 2, 1), 7).failed_condition == "psd"

    def test_zero_form(self):
        assert all(representable(BinaryForm(0, 0, 0), m) for m in range(1, 6))


def test_verdict_invariant():
    with pytest.raises(ValueError):
        MordellVerdict(True, "alpha")
    with pytest.raises(ValueError):
        MordellVerdict(False, "made_up")


@pytest.mark.parametrize("m", range(1, 7))
def test_matches_exhaustive_search(form_tables, m):
    table = form_tables[m]
    bad = [(a, h, b) for a, h, b in GRID if bool(representable(BinaryForm(a, h, b), m)) != ((a, h, b) in table)]
    assert bad == []


def test_monotone_in_m():
    for a, h, b in GRID:
        flags = [bool(representable(BinaryForm(a, h, b), m)) for m in range(1, 7)]
        assert flags == sorted(flags)


@pytest.mark.parametrize("c", [2, 3])
def test_square_scaling(c):
    c2 = c * c
    for a, h, b in GRID[::7]:
        for m in (2, 3, 4):
            assert bool(representable(BinaryForm(a, h, b), m)) == bool(
                representable(BinaryForm(a * c2, h * c2, b * c2), m)
            )


def test_m3_symmetric_in_a_and_b():
    for a, h, b in GRID:
        assert bool(representable(BinaryForm(a, h, b), 3)) == bool(representable(BinaryForm(b, h, a), 3))
