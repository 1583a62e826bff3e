"""The imaginary quadratic extension K = k(sqrt D), Hilbert symbols and Diff."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .places import (INF, Place, laurent_inf, make_place, ord_at, residue_quadchar,
                     support, unit_part_residue)
from .poly import Fn, Poly, PolyRing


class Splitting(enum.Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


class QuadExt:
    def __init__(self, R: PolyRing, D: Poly):
        if len(D) < 2:
            raise ValueError("D must have degree >= 1")
        if R.gcd(D, R.deriv(D)) != R.one:
            raise ValueError("D must be squarefree")
        d = len(D) - 1
        if d % 2 == 0 and R.F.eta_t[D[-1]] == 1:
            raise ValueError("D is real: infinity splits (even degree, square leading coefficient)")
        self.R, self.D = R, tuple(D)
        self.degD = d
        self.q = R.q
        self.f_inf = 1 if d % 2 else 2
        self.genus = (d - 1) // 2 if d % 2 else d // 2 - 1
        self.Dfn = Fn(R, self.D, R.one, True)

    @cached_property
    def ramified_finite(self) -> list[Place]:
        return [Place(P) for P, _ in self.R.factor(self.D)]

    def splitting(self, v: Place) -> Splitting:
        R = self.R
        if v.is_inf:
            return Splitting.RAMIFIED if self.f_inf == 1 else Splitting.INERT
        r = R.mod(self.D, v.P)
        if not r:
            return Splitting.RAMIFIED
        return Splitting.SPLIT if residue_quadchar(R, v, r) == 1 else Splitting.INERT

    def chi_pi(self, v: Place) -> int:
        """chi_{K,v}(pi_v) for unramified v."""
        s = self.splitting(v)
        return {Splitting.SPLIT: 1, Splitting.INERT: -1, Splitting.RAMIFIED: 0}[s]

    def chi_v(self, v: Place, a) -> int:
        return hilbert_symbol(Fn.of(self.R, a), self.Dfn, v)

    def chi(self, y) -> int:
        out = 1
        for v in y.support():
            out *= self.chi_v(v, y[v])
        return out

    def norm_uniformizer(self, v: Place) -> Fn:
        """A uniformizer at a ramified v lying in N(K_v^x)."""
        R = self.R
        if self.splitting(v) != Splitting.RAMIFIED:
            raise ValueError("norm uniformizer only needed at ramified places")
        minusD = -self.Dfn
        if v.is_inf:
            return minusD / Fn(R, R.t, R.one, True) ** (self.degD + 1)
        return minusD

    def __repr__(self):
        return f"QuadExt(q={self.q}, D={self.R.fmt(self.D)})"


# Hilbert symbols --------------------------------------------------------------


def hilbert_symbol(a: Fn, b: Fn, v: Place) -> int:
    """Tame symbol (a, b)_v for odd residue characteristic."""
    if a.is_zero() or b.is_zero():
        raise ValueError("Hilbert symbol of zero")
    R = a.R
    F = R.F
    m, n = ord_at(v, a), ord_at(v, b)
    ra, rb = unit_part_residue(v, a), unit_part_residue(v, b)
    if v.is_inf:
        u = F.mul(F.pow(ra, n), F.pow(rb, -m))
        if (m * n) % 2:
            u = F.neg_t[u]
        return F.eta_t[u]
    P = v.P
    # residue of (-1)^{mn} a^n b^{-m}
    if n < 0:
        ra, n = R.inv_mod(ra, P), -n
    if m > 0:
        rb = R.inv_mod(rb, P)
    else:
        m = -m
    u = R.mulmod(R.powmod(ra, n, P), R.powmod(rb, m, P), P)
    if (ord_at(v, a) * ord_at(v, b)) % 2:
        u = R.neg(u)
    return residue_quadchar(R, v, u)


def hasse_invariant(coeffs: list[Fn], v: Place) -> int:
    out = 1
    for i in range(len(coeffs)):
        for j in range(i + 1, len(coeffs)):
            out *= hilbert_symbol(coeffs[i], coeffs[j], v)
    return out


def product_places(*fs: Fn) -> list[Place]:
    out = set()
    for f in fs:
        out.update(support(f))
    return sorted(out, key=Place.sort_key) + [INF]


# brute-force oracle -------------------------------------------------------


class ResidueRing:
    """O_v / pi^n as explicit integer codes with numpy add/mul tables."""

    def __init__(self, R: PolyRing, v: Place, n: int):
        self.R, self.v, self.n = R, v, n
        self.modpoly = R.pow(R.t if v.is_inf else v.P, n)
        size = R.q ** (len(self.modpoly) - 1)
        if size > 800:
            raise ValueError("residue ring too large for the brute-force oracle")
        self.size = size
        self.elems = list(R.all_of_degree_below(len(self.modpoly) - 1))
        self.index = {e: i for i, e in enumerate(self.elems)}
        pi = R.t if v.is_inf else v.P
        self.unit = np.array([bool(R.mod(e, pi)) for e in self.elems])
        add = np.empty((size, size), dtype=np.int32)
        mul = np.empty((size, size), dtype=np.int32)
        for i, x in enumerate(self.elems):
            for j in range(i, size):
                y = self.elems[j]
                add[i, j] = add[j, i] = self.index[R.add(x, y)]
                mul[i, j] = mul[j, i] = self.index[R.mulmod(x, y, self.modpoly)]
        self.add, self.mul = add, mul
        self.sq = mul[np.arange(size), np.arange(size)]

    def reduce_unit(self, f: Fn) -> int:
        """Code of a v-unit f modulo pi^n."""
        R = self.R
        if self.v.is_inf:
            o, cs = laurent_inf(f, self.n)
            if o != 0:
                raise ValueError("not a unit at infinity")
            return self.index[tuple(_strip_list(cs))]
        M = self.modpoly
        return self.index[R.mulmod(f.num, R.inv_mod(f.den, M), M)]

    def pi_code(self) -> int:
        R = self.R
        return self.index[R.mod(R.t if self.v.is_inf else self.v.P, self.modpoly)]


def _strip_list(cs):
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def hilbert_symbol_bruteforce(a: Fn, b: Fn, v: Place) -> int:
    """Decide whether aX^2 + bY^2 = Z^2 has a primitive solution modulo pi^3.

    After scaling a and b to valuations 0 or 1 this is equivalent to
    solvability in k_v (Hensel's lemma, odd residue characteristic).
    """
    R = a.R
    if v.qv(R.q) > 9:
        raise ValueError("brute-force Hilbert symbol is gated to q_v <= 9")
    rr = _ring_cache(R, v)
    pi = Fn(R, R.one, R.t, True) if v.is_inf else Fn(R, v.P, R.one, True)
    codes = []
    for f in (a, b):
        o = ord_at(v, f)
        unit = f / pi**o
        c = rr.reduce_unit(unit)
        if o % 2:
            c = int(rr.mul[c, rr.pi_code()])
        codes.append(c)
    ca, cb = codes
    A = rr.mul[ca][rr.sq]
    B = rr.mul[cb][rr.sq]
    S = rr.add[A[:, None], B[None, :]]  # aX^2 + bY^2
    sq = rr.sq
    unit = rr.unit
    unit_sq = np.zeros(rr.size, dtype=bool)
    unit_sq[sq[unit]] = True
    nonunit_sq = np.zeros(rr.size, dtype=bool)
    nonunit_sq[sq[~unit]] = True
    # Z a unit
    if unit_sq[S].any():
        return 1
    # Z a non-unit, X or Y a unit
    mask = unit[:, None] | unit[None, :]
    if (nonunit_sq[S] & mask).any():
        return 1
    return -1


_RR: dict = {}


def _ring_cache(R, v):
    key = (R.q, R.F.modulus, v)
    if key not in _RR:
        _RR[key] = ResidueRing(R, v, 3)
    return _RR[key]


# the incoherent space ---------------------------------------------------------


def _epsilon_candidates(R: PolyRing):
    F = R.F
    n = F.nonsquare()
    t = Fn(R, R.t, R.one, True)
    return [Fn.of(R, (n,)), 1 / t, t, Fn.of(R, (n,)) / t, Fn.of(R, (n,)) * t]


class IncoherentSpace:
    """C = (K_v, alpha eps_v N)_v with eps_v = 1 at finite v."""

    def __init__(self, K: QuadExt, alpha, eps_inf=None):
        R = K.R
        alpha = Fn.of(R, alpha)
        if alpha.is_zero() or not alpha.is_poly():
            raise ValueError("alpha must be a nonzero polynomial")
        self.K, self.R, self.alpha = K, R, alpha
        if eps_inf is None:
            for cand in _epsilon_candidates(R):
                if hilbert_symbol(cand, K.Dfn, INF) == -1:
                    eps_inf = cand
                    break
            else:
                raise ArithmeticError("no candidate eps_inf with (eps, D)_inf = -1")
        eps_inf = Fn.of(R, eps_inf)
        if hilbert_symbol(eps_inf, K.Dfn, INF) != -1:
            raise ValueError("eps_inf must satisfy (eps_inf, D)_inf = -1")
        self.eps_inf = eps_inf
        prod = 1
        for v in self.hasse_places():
            prod *= self.hasse(v)
        if prod != -1:
            raise ArithmeticError("Hasse invariants satisfy the product formula: space is coherent")

    def eps(self, v: Place) -> Fn:
        return self.eps_inf if v.is_inf else Fn.of(self.R, 1)

    def scalar(self, v: Place) -> Fn:
        """alpha * eps_v."""
        return self.alpha * self.eps(v)

    def hasse(self, v: Place) -> int:
        a = self.scalar(v)
        return hasse_invariant([a, -a * self.K.Dfn], v)

    def hasse_places(self) -> list[Place]:
        return sorted(set(support(self.alpha)) | set(self.K.ramified_finite) | set(support(self.eps_inf)),
                      key=Place.sort_key) + [INF]

    def diff_set(self, beta) -> list[Place]:
        beta = Fn.of(self.R, beta)
        if beta.is_zero():
            raise ValueError("Diff needs beta != 0")
        K = self.K
        cands = sorted(set(self.hasse_places()) | set(support(beta)), key=Place.sort_key)
        out_h, out_n = [], []
        for v in cands:
            if self.hasse(v) != K.chi_v(v, beta):
                out_h.append(v)
            if K.chi_v(v, beta / self.scalar(v)) == -1:
                out_n.append(v)
        if out_h != out_n:
            raise ArithmeticError("Hasse and norm characterizations of Diff disagree")
        if len(out_h) % 2 == 0:
            raise ArithmeticError("Diff has even cardinality")
        return out_h
