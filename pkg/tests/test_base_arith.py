"""Finite fields, polynomials, places, valuations, residues and ideles."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import fns, polys
from ffeisen.field import get_field
from ffeisen.places import (INF, Idele, conductor_profile, ord_at, parse_idele, parse_place, places_upto,
                            residue_dt, support)
from ffeisen.poly import Fn, parse_fn, ring


@pytest.mark.parametrize("q", [3, 5, 7, 9, 25, 27])
def test_field_axioms_exhaustive(q):
    F = get_field(q)
    els = list(F.elements())
    assert len(els) == q
    for x in els:
        assert F.add(x, F.neg_t[x]) == 0
        if x:
            assert F.mul(x, F.inv(x)) == 1
            assert F.pow(x, q - 1) == 1
    nonsq = F.nonsquare()
    assert F.eta_t[nonsq] == -1
    assert sum(F.eta_t[x] for x in els if x) == 0


@given(st.sampled_from([3, 5, 9]), st.data())
def test_field_distributive(q, data):
    F = get_field(q)
    x, y, z = (data.draw(st.integers(0, q - 1)) for _ in range(3))
    assert F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z))


@given(polys(3, 5), polys(3, 4, nonzero=True))
def test_divmod_identity(a, b):
    R = ring(3)
    quo, r = R.divmod(a, b)
    assert R.add(R.mul(quo, b), r) == a
    assert len(r) < len(b)


@given(polys(5, 4, nonzero=True), polys(5, 4, nonzero=True))
def test_gcd_divides_both(a, b):
    R = ring(5)
    g = R.gcd(a, b)
    assert not R.mod(a, g) and not R.mod(b, g)
    g2, s, t = R.xgcd(a, b)
    assert R.add(R.mul(s, a), R.mul(t, b)) == g2


@settings(max_examples=60)
@given(polys(3, 6, nonzero=True))
def test_factorization_reassembles(a):
    R = ring(3)
    prod = R.const(R.lc(a))
    for P, e in R.factor(a):
        assert R.is_irreducible(P) and P[-1] == 1
        prod = R.mul(prod, R.pow(P, e))
    assert prod == a


@given(polys(5, 3))
def test_sqrt_of_square(a):
    R = ring(5)
    s = R.sqrt(R.mul(a, a))
    assert s is not None and R.mul(s, s) == R.mul(a, a)


def test_irreducible_counts():
    # number of monic irreducibles of degree n over F_q is (1/n) sum_{d|n} mu(d) q^{n/d}
    R = ring(3)
    assert [sum(1 for P in places_upto(R, n) if len(P.P) - 1 == n) for n in (1, 2, 3, 4)] == [3, 3, 8, 18]
    R9 = ring(9)
    assert len(places_upto(R9, 2)) == 9 + 36


@given(polys(3, 5))
def test_parse_fmt_roundtrip(a):
    R = ring(3)
    assert R.parse(R.fmt(a)) == a


def test_parse_loose_forms():
    R = ring(3)
    assert R.parse("t^3+2t+2") == R.parse("t^3 + 2*t + 2") == (2, 2, 0, 1)
    assert R.parse("t^3-t-1") == (2, 2, 0, 1)
    assert parse_fn(R, "1/t^2") == Fn.of(R, 1) / Fn.of(R, R.t) ** 2
    R9 = ring(9)
    assert R9.parse(R9.fmt(R9.parse("t^3+t+a"))) == R9.parse("t^3+t+a")


@given(fns(3), fns(3))
def test_valuation_is_additive(f, g):
    for v in set(support(f)) | set(support(g)) | {INF}:
        assert ord_at(v, f * g) == ord_at(v, f) + ord_at(v, g)


@given(fns(5))
def test_product_formula(f):
    assert sum(ord_at(v, f) * v.deg for v in set(support(f)) | {INF}) == 0


@given(fns(3, 3), fns(3, 2))
def test_residue_theorem(f, g):
    h = f * g
    places = set(support(h)) | {INF}
    assert sum(residue_dt(v, h) for v in places) % 3 == 0


@given(fns(5, 3))
def test_conductors_sum_to_minus_two(c):
    prof = conductor_profile(c)
    assert sum(prof.delta(v) * v.deg for v in prof.places()) == -2


def test_conductor_of_standard_character():
    R = ring(3)
    prof = conductor_profile(parse_fn(R, "1/t^2"))
    assert prof.delta(parse_place(R, "(t)")) == -2
    assert prof.delta(INF) == 0


def test_idele_roundtrip_and_degree():
    R = ring(3)
    y = parse_idele(R, "(t)=t^2,(t+1)=1/(t+1),inf=1/t")
    assert parse_idele(R, y.fmt()) == y
    assert y.degree() == 2 - 1 + 1
    assert parse_idele(R, "1") == Idele(R) and Idele(R).fmt() == "1"


@given(fns(3, 2))
def test_idele_scaling_by_global_element_preserves_norm(c):
    R = ring(3)
    y = parse_idele(R, "(t)=t,inf=1/t")
    assert y.scale(c).norm() == y.norm()


def test_bad_place_rejected():
    R = ring(3)
    with pytest.raises(ValueError):
        parse_place(R, "t^2+2")  # (t+1)(t+2)
