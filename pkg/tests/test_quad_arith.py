"""Quadratic extensions, Hilbert symbols and incoherent spaces."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import IMAGINARY, all_places, fns
from ffeisen.places import INF, support
from ffeisen.poly import Fn, ring
from ffeisen.quad import (IncoherentSpace, QuadExt, Splitting, hilbert_symbol, hilbert_symbol_bruteforce,
                          product_places)


@given(fns(3, 3), fns(3, 3))
def test_reciprocity_q3(a, b):
    prod = 1
    for v in product_places(a, b):
        prod *= hilbert_symbol(a, b, v)
    assert prod == 1


@given(fns(3, 2), fns(3, 2), fns(3, 2))
def test_symbol_is_bimultiplicative_and_symmetric(a, b, c):
    for v in product_places(a, b, c):
        assert hilbert_symbol(a * b, c, v) == hilbert_symbol(a, c, v) * hilbert_symbol(b, c, v)
        assert hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v)


@given(fns(3, 2))
def test_symbol_with_minus_self_is_trivial(a):
    for v in product_places(a):
        assert hilbert_symbol(a, -a, v) == 1


@settings(max_examples=30, deadline=None)
@given(fns(3, 2), fns(3, 2))
def test_tame_symbol_matches_bruteforce(a, b):
    for v in product_places(a, b):
        if v.deg == 1:
            assert hilbert_symbol(a, b, v) == hilbert_symbol_bruteforce(a, b, v)


@pytest.mark.parametrize("q,D", IMAGINARY[:6])
def test_splitting_matches_symbol(q, D):
    R = ring(q)
    K = QuadExt(R, R.parse(D))
    for v in all_places(R, 2):
        s = K.splitting(v)
        if s != Splitting.RAMIFIED and not v.is_inf:
            # a unit is a norm at unramified v; the uniformizer is a norm iff v splits
            pi = Fn.of(R, v.P)
            assert K.chi_v(v, pi) == (1 if s == Splitting.SPLIT else -1)
    assert (K.splitting(INF) == Splitting.RAMIFIED) == (K.degD % 2 == 1)


def test_real_or_nonsquarefree_rejected():
    R = ring(3)
    with pytest.raises(ValueError):
        QuadExt(R, R.parse("t^2+1"))
    with pytest.raises(ValueError):
        QuadExt(R, R.parse("t^2"))


@pytest.mark.parametrize("q,D", IMAGINARY)
@pytest.mark.parametrize("alpha", ["1", "t", "t^2+1"])
def test_incoherence(q, D, alpha):
    R = ring(q)
    K = QuadExt(R, R.parse(D))
    C = IncoherentSpace(K, R.parse(alpha))
    prod = 1
    for v in C.hasse_places():
        prod *= C.hasse(v)
    assert prod == -1


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(IMAGINARY[:8]), fns(3, 3))
def test_diff_set_is_odd_and_localized(qD, beta):
    q, D = qD
    R = ring(q)
    K = QuadExt(R, R.parse(D))
    C = IncoherentSpace(K, 1)
    beta = Fn.of(R, beta.num) / Fn.of(R, beta.den)
    diff = C.diff_set(beta)
    assert len(diff) % 2 == 1
    allowed = set(support(beta)) | set(K.ramified_finite) | {INF}
    assert set(diff) <= allowed


def test_norms_are_never_in_diff_of_coherent_direction():
    # beta = alpha N(x) is represented at every finite place, so Diff = {inf}
    R = ring(3)
    K = QuadExt(R, R.parse("t"))
    C = IncoherentSpace(K, 1)
    for x, y in [(1, 0), (1, 1), (2, 1)]:
        beta = Fn.of(R, x) ** 2 - K.Dfn * Fn.of(R, y) ** 2
        assert C.diff_set(beta) == [INF]


def test_eps_inf_override_validated():
    R = ring(3)
    K = QuadExt(R, R.parse("t"))
    with pytest.raises(ValueError):
        IncoherentSpace(K, 1, eps_inf=1)
