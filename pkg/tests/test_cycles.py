"""Special cycle degrees."""

from fractions import Fraction

import pytest

from conftest import SMALL_SETUPS
from ffeisen.cycles import (counting_ideal, cycle_work, deg_Z, lambda_inf, obstruction_places, verify_main,
                            z_cycle)
from ffeisen.eisenstein import Request
from ffeisen.ideals import FracIdeal, prime_above
from ffeisen.places import INF, parse_idele, places_upto
from ffeisen.poly import Fn, parse_fn
from ffeisen.quad import Splitting
from ffeisen.sweep import FieldSetup, generate


def test_lambda_inf():
    _, K1, _, _ = FieldSetup(3, "t", "1").build()
    _, K2, _, _ = FieldSetup(3, "2*t^2+1", "1").build()
    _, K3, _, _ = FieldSetup(5, "2*t^2+1", "1").build()
    assert lambda_inf(K1) == 1
    assert lambda_inf(K2) == Fraction(2, 4)
    assert lambda_inf(K3) == Fraction(2, 6)


@pytest.mark.parametrize("fs", SMALL_SETUPS)
def test_obstruction_is_the_finite_part_of_diff(fs):
    # the local scalar at a finite place is alpha itself
    for req in generate([fs], 8, seed=4, want_diff_one=False):
        obs = obstruction_places(req.K, req.C.alpha, req.beta)
        assert obs == [v for v in req.diff if not v.is_inf]


def test_counting_ideal_is_multiplicative_shape():
    R, K, C, _ = FieldSetup(3, "t", "1").build()
    t = Fn.of(R, R.t)
    # ramified (t): P^{ord a - ord b}
    assert counting_ideal(K, Fn.of(R, 1), t ** 3) == prime_above(K, places_upto(R, 1)[0]).pow(-3)
    # split (t+2): conj(Pi)^{ord a} Pi^{-ord b}
    v = [w for w in places_upto(R, 1) if K.splitting(w) == Splitting.SPLIT][0]
    P = prime_above(K, v)
    assert counting_ideal(K, Fn.of(R, v.P), Fn.of(R, v.P) ** 2) == P.conj() * P.pow(-2)


def test_deg_Z_rejects_bad_input():
    R, K, C, _ = FieldSetup(3, "t", "1").build()
    half = FracIdeal.of_base(K, 1 / Fn.of(R, R.t))
    with pytest.raises(ValueError):
        deg_Z(K, C.alpha, half, Fn.of(R, 1))
    with pytest.raises(ValueError):
        deg_Z(K, C.alpha, FracIdeal.unit(K), 1 / Fn.of(R, R.t))


def test_deg_Z_is_zero_with_two_obstructions():
    R, K, C, _ = FieldSetup(3, "t", "1").build()
    inert = [v for v in places_upto(R, 2) if K.splitting(v) == Splitting.INERT][:2]
    beta = Fn.of(R, inert[0].P) * Fn.of(R, inert[1].P)
    assert len(obstruction_places(K, C.alpha, beta)) >= 2
    assert deg_Z(K, C.alpha, FracIdeal.unit(K), beta).lnq.c == 0


def test_infinite_case_hand_example():
    R, K, C, prof = FieldSetup(3, "t", "1").build()
    req = Request(C, prof, parse_idele(R, "(t)=t"), 1)
    z = z_cycle(req)
    # multiplicity m_inf + lambda_inf = 1 times the two norm-one units +-1
    assert z.lnq.c == 2 and z.parts == (("inf", 1, 2),)
    assert req.chi_y == -1  # eta = -chi(y)|y|/f_inf * deg z = 2/3


@pytest.mark.parametrize("fs", SMALL_SETUPS)
def test_z_is_invariant_under_rescaling(fs):
    for req in generate([fs], 4, seed=9):
        z = z_cycle(req).lnq
        for c in ("t", "1/(t+1)", "2*t^2+1"):
            assert z_cycle(req.rescaled(parse_fn(req.R, c))).lnq == z


def test_cycle_work_estimate_is_finite():
    for req in generate(SMALL_SETUPS, 3, seed=1):
        assert cycle_work(req) >= 0
        assert verify_main(req).ok
