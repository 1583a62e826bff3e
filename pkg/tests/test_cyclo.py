"""Exact arithmetic in Q(zeta_{4p}) and the surd values of Weil indices."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ffeisen.cyclo import Surd, cyclotomic_field, cyclotomic_poly, q_power_surd


@pytest.mark.parametrize("n,expected", [(1, (-1, 1)), (4, (1, 0, 1)), (12, (1, 0, -1, 0, 1))])
def test_cyclotomic_poly(n, expected):
    assert cyclotomic_poly(n) == expected


@pytest.mark.parametrize("p", [3, 5, 7])
def test_field_identities(p):
    Kc = cyclotomic_field(p)
    assert Kc.i * Kc.i == Kc.rational(-1)
    assert Kc.sqrt_p * Kc.sqrt_p == Kc.rational(p)
    assert Kc.zeta(4 * p) == Kc.rational(1)
    total = Kc.rational(0)
    for j in range(p):
        total = total + Kc.zeta_p(j)
    assert total == Kc.rational(0)


surds = st.builds(Surd, st.fractions(max_denominator=9).filter(lambda x: abs(x) < 50), st.integers(0, 3),
                  st.integers(0, 1))


@given(surds, surds, st.sampled_from([3, 5, 7]))
def test_surd_product_matches_field_product(a, b, p):
    assert a.mul(b, p).to_cyc(p) == a.to_cyc(p) * b.to_cyc(p)


@given(st.sampled_from([3, 5]), st.integers(1, 3), st.integers(-4, 4))
def test_q_powers(p, r, e2):
    q = p**r
    s = q_power_surd(p, r, e2)
    assert s.mul(s, p).to_fraction() == Fraction(q) ** e2


def test_ratio_sign():
    assert Surd(1, 1).ratio_sign(Surd(-1, 3)) == 1
    assert Surd(2, 0, 1).ratio_sign(Surd(2, 2, 1)) == -1
    with pytest.raises(ArithmeticError):
        Surd(1, 1).ratio_sign(Surd(1, 0))
