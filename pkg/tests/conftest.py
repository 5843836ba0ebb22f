from math import isqrt

import numpy as np
import pytest


def _sum_of_squares_table(k: int, limit: int) -> np.ndarray:
    """Boolean table: entry s says s is a sum of k squares, by brute force."""
    squares = np.arange(isqrt(limit) + 1) ** 2
    table = np.zeros(limit + 1, dtype=bool)
    table[0] = True
    for _ in range(k):
        nxt = np.zeros_like(table)
        for sq in squares:
            nxt[sq:] |= table[: limit + 1 - sq]
        table = nxt
    return table


@pytest.fixture(scope="session")
def sos_tables():
    limit = 10**5
    return {k: _sum_of_squares_table(k, limit) for k in (1, 2, 3)}


@pytest.fixture(scope="session")
def form_tables():
    from sumsq.oracle import representable_forms

    return {m: representable_forms(m, 30) for m in range(1, 7)}


# coefficient vectors A with a = sum a_i^2 having a single partition into four squares
UNIQUE_PARTITION_VECTORS = [(1, 1, 0, 0), (2, 1, 0, 0), (3, 2, 1, 1), (3, 1, 1, 0), (2, 1, 1, 1), (3, 2, 1, 0), (2, 1, 1, 0)]


def brute_linear_sets(coeffs, n_max):
    """{n: set of |A.x|} over all integer x with |x|^2 = n <= n_max."""
    from sumsq.oracle import lattice_vectors

    vecs = lattice_vectors(len(coeffs), n_max)
    norms = (vecs * vecs).sum(axis=1)
    dots = np.abs(vecs @ np.array(coeffs))
    keys = np.unique(norms * (10 * n_max * max(coeffs) + 1) + dots)
    out = {n: set() for n in range(n_max + 1)}
    width = 10 * n_max * max(coeffs) + 1
    for k in keys.tolist():
        out[k // width].add(k % width)
    return out


@pytest.fixture(scope="session")
def brute_linear():
    return {A: brute_linear_sets(A, 300) for A in UNIQUE_PARTITION_VECTORS}


# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
