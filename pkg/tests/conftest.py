"""Shared fields and hypothesis strategies."""

import sys

import pytest
from hypothesis import strategies as st

from ffeisen.places import INF, places_upto
from ffeisen.poly import Fn, ring
from ffeisen.sweep import FieldSetup

# (q, D) pairs with k(sqrt D) imaginary; covers odd/even deg D and q in {3, 5, 9}
IMAGINARY = [
    (3, "t"), (3, "t^3-t-1"), (3, "2*t^2+1"), (3, "2*t^4+t+1"), (3, "t^5+t^2+2"),
    (3, "t^3+2*t+2"), (3, "2*t^2+t+1"), (3, "t^3+t"), (3, "t^3+2*t+1"), (3, "2*t^4+1"),
    (5, "t"), (5, "t^3+t+1"), (5, "2*t^4+t^3+1"), (5, "2*t^2+1"), (5, "t^3+2"),
    (5, "2*t^2+2*t+1"), (5, "t^3+t^2+2"), (5, "t^3+t"), (5, "2*t^4+1"), (5, "3*t^2+1"),
]

SMALL_SETUPS = [
    FieldSetup(3, "t", "1"),
    FieldSetup(3, "t", "t+1"),
    FieldSetup(3, "t^3-t-1", "t^2+1"),
    FieldSetup(3, "2*t^2+1", "1"),
    FieldSetup(5, "t", "2"),
]


def polys(q, max_deg=4, nonzero=False):
    """Coefficient tuples (low to high) with nonzero leading coefficient, or () for zero."""
    coeffs = st.lists(st.integers(0, q - 1), min_size=0, max_size=max_deg + 1)

    def strip(c):
        while c and c[-1] == 0:
            c = c[:-1]
        return tuple(c)

    s = coeffs.map(strip)
    return s.filter(bool) if nonzero else s


def fns(q, max_deg=3):
    """Nonzero rational functions over F_q (q prime)."""
    R = ring(q)
    return st.tuples(polys(q, max_deg, True), polys(q, max_deg, True)).map(
        lambda nd: Fn.of(R, nd[0]) / Fn.of(R, nd[1]))


def all_places(R, d=2):
    return places_upto(R, d) + [INF]


@pytest.fixture(scope="session")
def setups():
    return [s.build() for s in SMALL_SETUPS]


def pytest_terminal_summary(terminalreporter):
    acc = sys.modules.get("test_acceptance")
    if acc is None or not acc.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(acc.RESULTS):
        terminalreporter.write_line(acc.RESULTS[n])
