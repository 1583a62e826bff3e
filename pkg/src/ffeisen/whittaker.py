"""Local Whittaker functions of the dimension-2 incoherent Eisenstein series.

Every local value is a Surd (root of unity times a half-integral power of p)
times an exact rational function of u_v = q_v^{-s}.  The closed forms are
checked against brute-force character sums over residue rings.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .cyclo import Cyc, Surd, cyclotomic_field, q_power_surd
from .lfunc import LnQValue, UPoly, URat, d_ds_at_0
from .places import (ConductorProfile, Place, ord_at, residue_dt, residue_dt_local,
                     residue_quadchar, uniformizer)
from .poly import Fn
from .quad import IncoherentSpace, QuadExt, Splitting, hilbert_symbol

ORACLE_MAX_QV = 9


# Weil indices -----------------------------------------------------------------


def _psi_level(v: Place, c: Fn, prof: ConductorProfile) -> int:
    """n = ord_v(c) + delta_v: psi_v(c x) is trivial on pi^{-n} O_v and on no larger lattice."""
    return ord_at(v, c) + prof.delta(v)


def weil_index_1d(v: Place, c: Fn, prof: ConductorProfile) -> Surd:
    """Weil index of the form c x^2 on k_v, self-dual measure for psi_v(2 c x y)."""
    R = c.R
    F = R.F
    n = _psi_level(v, c, prof)
    if n % 2 == 0:
        return Surd(1)
    pi = uniformizer(R, v)
    rho = residue_dt_local(v, c * pi ** (-(n + 1)) * prof.c)
    leg = residue_quadchar(R, v, rho)
    f = F.r * v.deg
    sign = -1 if (f - 1) % 2 else 1
    tag = f if F.p % 4 == 3 else 0
    return Surd(leg * sign, tag)


def weil_index_norm_form(K: QuadExt, v: Place, a: Fn, prof: ConductorProfile) -> Surd:
    """Weil index of (K_v, a N) = <a> + <-a D>."""
    p = K.R.F.p
    return weil_index_1d(v, a, prof).mul(weil_index_1d(v, -a * K.Dfn, prof), p)


# residue-ring enumeration for the oracles ------------------------------------


class _Digits:
    """F_p-coordinates on O_v / pi^M: element = sum digit * basis[idx]."""

    def __init__(self, R, v: Place, M: int, shift: int = 0):
        F = R.F
        pi = uniformizer(R, v)
        t = Fn.of(R, R.t)
        self.basis = []
        for j in range(M):
            for i in range(v.deg):
                for g in F.gen_basis():
                    self.basis.append(Fn.of(R, (g,)) * t**i * pi ** (j + shift))
        self.dim = len(self.basis)
        self.block = v.deg * F.r
        self.p = F.p
        if self.p**self.dim > 10**5:
            raise ValueError("residue ring too large for the oracle")
        self.points = np.array(list(itertools.product(range(self.p), repeat=self.dim)), dtype=np.int64)


def _lam(v: Place, prof: ConductorProfile, w: Fn) -> int:
    """psi_v(w) = zeta_p^{lam(w)}."""
    if w.is_zero():
        return 0
    return w.R.F.tr_t[residue_dt(v, w * prof.c)]


def _residue_chars(R, v: Place, dig: _Digits) -> np.ndarray:
    """Quadratic character of the residue class of every point (0 on non-units)."""
    F = R.F
    gb = F.gen_basis()
    head = dig.points[:, : dig.block]
    out = np.zeros(len(dig.points), dtype=np.int64)
    cache = {}
    for row, h in enumerate(map(tuple, head)):
        if h not in cache:
            coeffs = []
            for i in range(v.deg):
                x = 0
                for k, g in enumerate(gb):
                    d = h[i * len(gb) + k]
                    if d:
                        x = F.add(x, F.mul(F.from_int(d), g))
                coeffs.append(x)
            while coeffs and coeffs[-1] == 0:
                coeffs.pop()
            if not coeffs:
                cache[h] = 0
            elif v.is_inf:
                cache[h] = F.eta_t[coeffs[0]]
            else:
                cache[h] = residue_quadchar(R, v, tuple(coeffs))
        out[row] = cache[h]
    return out


def _units_mask(dig: _Digits) -> np.ndarray:
    return dig.points[:, : dig.block].any(axis=1)


def _counts(values: np.ndarray, weights: np.ndarray, p: int) -> list[int]:
    return [int(weights[values % p == j].sum()) for j in range(p)]


def weil_index_1d_bruteforce(v: Place, c: Fn, prof: ConductorProfile) -> Cyc:
    """The defining integral of the Weil index over pi^{-N} O_v, as an exact cyclotomic number.

    The integrand is summed over a residue grid fine enough that it is
    constant on cells; N is increased once to confirm stabilization.
    """
    R = c.R
    F = R.F
    if v.qv(R.q) > ORACLE_MAX_QV:
        raise ValueError(f"brute-force Weil index is gated to q_v <= {ORACLE_MAX_QV}")
    n = _psi_level(v, c, prof)
    pi = uniformizer(R, v)
    rv = F.r * v.deg
    vals = []
    for N in (n // 2 + 1, n // 2 + 2):
        Mp = max(1, 2 * N - n)
        dig = _Digits(R, v, Mp)
        cc = c * pi ** (-2 * N)
        B = np.array([[_lam(v, prof, cc * ei * ej) for ej in dig.basis] for ei in dig.basis], dtype=np.int64)
        Q = np.einsum("ni,ij,nj->n", dig.points, B, dig.points) % F.p
        s = cyclotomic_field(F.p).from_counts(_counts(Q, np.ones(len(Q), dtype=np.int64), F.p))
        # vol(pi^{-N} O) q_v^{-M'} with vol(O) = q_v^{-n/2}
        vals.append(q_power_surd(F.p, rv, 2 * (N - Mp) - n).to_cyc(F.p) * s)
    if vals[0] != vals[1]:
        raise ArithmeticError("Weil index integral did not stabilize")
    return vals[0]


def weil_index_norm_form_bruteforce(K: QuadExt, v: Place, a: Fn, prof: ConductorProfile) -> Cyc:
    return weil_index_1d_bruteforce(v, a, prof) * weil_index_1d_bruteforce(v, -a * K.Dfn, prof)


# local data -----------------------------------------------------------------


@dataclass(frozen=True)
class LocalW:
    """scalar * F(u_v), with u_v = u^deg."""

    scalar: Surd
    F: URat
    deg: int
    p: int

    @classmethod
    def zero(cls, deg, p):
        return cls(Surd(0), URat.of(0), deg, p)

    def is_zero(self) -> bool:
        return self.scalar.coef == 0 or self.F.is_zero()

    def global_u(self) -> URat:
        return self.F.subs_power(self.deg)

    def at(self, uv) -> Cyc:
        return self.scalar.to_cyc(self.p) * self.F(uv)

    def value0(self) -> tuple[Surd, Fraction]:
        return self.scalar, self.F(1)

    def deriv0(self) -> tuple[Surd, LnQValue]:
        """d/ds at s = 0 in units of ln q (global q)."""
        return self.scalar, d_ds_at_0(self.global_u())

    def coeffs(self) -> list:
        """Power-series coefficients in u_v when F is a polynomial."""
        if self.F.den != UPoly.const(1):
            raise ValueError("not a polynomial in u_v")
        return list(self.F.num.c)


class LocalCase:
    """Everything the local Whittaker functions at v depend on."""

    def __init__(self, C: IncoherentSpace, prof: ConductorProfile, v: Place, yv, beta):
        K = C.K
        R = K.R
        self.C, self.K, self.R, self.prof, self.v = C, K, R, prof, v
        self.yv = Fn.of(R, yv)
        self.beta = Fn.of(R, beta)
        if self.beta.is_zero() or self.yv.is_zero():
            raise ValueError("LocalCase needs nonzero y_v and beta")
        self.splitting = K.splitting(v)
        self.delta = prof.delta(v)
        self.b = self.yv * self.yv * self.beta
        self.m = ord_at(v, self.b) + self.delta
        self.e = -self.delta - ord_at(v, C.scalar(v))
        self.e_prime = -self.delta - ord_at(v, self.beta)
        self.qv = v.qv(R.q)
        self.deg = v.deg
        self.p = R.F.p
        self.rv = R.F.r * v.deg  # q_v = p^rv

    @cached_property
    def in_diff(self) -> bool:
        return self.K.chi_v(self.v, self.beta / self.C.scalar(self.v)) == -1

    @cached_property
    def eps_C(self) -> Surd:
        return weil_index_norm_form(self.K, self.v, self.C.scalar(self.v), self.prof)

    @cached_property
    def eps_Vbeta(self) -> Surd:
        return weil_index_norm_form(self.K, self.v, self.beta, self.prof)

    @cached_property
    def chi_pi(self) -> int:
        if self.splitting == Splitting.RAMIFIED:
            pi = self.K.norm_uniformizer(self.v)
            val = hilbert_symbol(pi, self.K.Dfn, self.v)
            if val != 1:
                raise ArithmeticError("norm uniformizer is not a local norm")
            return 1
        return self.K.chi_pi(self.v)

    def pi(self) -> Fn:
        if self.splitting == Splitting.RAMIFIED:
            return self.K.norm_uniformizer(self.v)
        return uniformizer(self.R, self.v)

    def vol(self) -> Surd:
        """vol(O_v) = q_v^{-delta_v/2}."""
        return q_power_surd(self.p, self.rv, -self.delta)

    def section(self, which: str) -> tuple[Surd, int]:
        """(Weil index of the space, lattice parity) for the alpha or tilde section."""
        if which == "alpha":
            return self.eps_C, self.e
        if which == "tilde":
            return self.eps_Vbeta, self.e_prime
        raise ValueError("section must be 'alpha' or 'tilde'")

    def phi_hat0(self, which: str) -> Surd:
        """Value at 0 of the Fourier transform of the lattice indicator."""
        _, par = self.section(which)
        if self.splitting == Splitting.SPLIT:
            return Surd(1)
        if self.splitting == Splitting.RAMIFIED:
            return q_power_surd(self.p, self.rv, -1)
        return Surd(1) if par % 2 == 0 else Surd(Fraction(1, self.qv))

    def __repr__(self):
        return (f"LocalCase(v={self.v.label(self.R)}, {self.splitting.value}, delta={self.delta}, "
                f"m={self.m}, e={self.e}, e'={self.e_prime})")


# closed forms -------------------------------------------------------------------


def w_good(v: Place, K: QuadExt) -> LocalW:
    """L_v(s+1, chi_v)^{-1} = 1 - chi(pi_v) u_v / q_v at an unramified place."""
    s = K.splitting(v)
    if s == Splitting.RAMIFIED:
        raise ValueError("good places are unramified")
    qv = v.qv(K.q)
    return LocalW(Surd(1), URat.of(UPoly([1, Fraction(-K.chi_pi(v), qv)])), v.deg, K.R.F.p)


def _geometric(sign: int, m: int, qv: int, c0) -> UPoly:
    """c0 + (1 - 1/q_v) sum_{r=1}^m (sign u)^r - (sign u)^{m+1} / q_v."""
    coeffs = [Fraction(c0)]
    for r in range(1, m + 1):
        coeffs.append((1 - Fraction(1, qv)) * sign**r)
    coeffs.append(-Fraction(sign ** (m + 1), qv))
    return UPoly(coeffs)


def w_split(case: LocalCase) -> LocalW:
    if case.splitting != Splitting.SPLIT:
        raise ValueError("w_split needs a split place")
    if case.m < 0:
        return LocalW.zero(case.deg, case.p)
    return LocalW(case.vol(), URat.of(_geometric(1, case.m, case.qv, 1)), case.deg, case.p)


def _w_inert(case: LocalCase, parity: int) -> LocalW:
    if case.splitting != Splitting.INERT:
        raise ValueError("inert closed form needs an inert place")
    if case.m < 0:
        return LocalW.zero(case.deg, case.p)
    c0 = 1 if parity % 2 == 0 else -Fraction(1, case.qv)
    return LocalW(case.vol(), URat.of(_geometric(-1, case.m, case.qv, c0)), case.deg, case.p)


def w_inert_tilde(case: LocalCase) -> LocalW:
    return _w_inert(case, case.e_prime)


def w_inert_alpha(case: LocalCase) -> LocalW:
    return _w_inert(case, case.e)


def _w_ram(case: LocalCase, eps_sec: Surd) -> LocalW:
    if case.splitting != Splitting.RAMIFIED:
        raise ValueError("ramified closed form needs a ramified place")
    if case.m < 0:
        return LocalW.zero(case.deg, case.p)
    sign = case.eps_Vbeta.ratio_sign(eps_sec)
    scalar = case.vol().mul(q_power_surd(case.p, case.rv, -1), case.p).mul(eps_sec, case.p)
    return LocalW(scalar, URat.of(UPoly([1] + [0] * case.m + [sign])), case.deg, case.p)


def w_ram_tilde(case: LocalCase) -> LocalW:
    """vol eps(V_beta) q_v^{-1/2} (1 + u_v^{m+1})."""
    return _w_ram(case, case.eps_Vbeta)


def w_ram_alpha(case: LocalCase) -> LocalW:
    """vol q_v^{-1/2} (eps(C_v) + eps(V_beta) u_v^{m+1})."""
    return _w_ram(case, case.eps_C)


def local_whittaker(case: LocalCase, which: str = "alpha") -> LocalW:
    if case.splitting == Splitting.SPLIT:
        return w_split(case)
    if case.splitting == Splitting.INERT:
        return w_inert_alpha(case) if which == "alpha" else w_inert_tilde(case)
    return w_ram_alpha(case) if which == "alpha" else w_ram_tilde(case)


def inert_alpha_derivative_bracket(case: LocalCase) -> LnQValue:
    """The displayed derivative at 0 of the inert alpha form (global ln q units).

    q_v^{-delta/2} (-1)^{e'-1}/2 ln q_v [(m+1-c) + q_v^{-1}(m+1+c)], c = (1+(-1)^{e'})/2.
    The vol factor q_v^{-delta/2} is returned separately by the caller's scalar.
    """
    c = 1 if case.e_prime % 2 == 0 else 0
    sign = 1 if (case.e_prime - 1) % 2 == 0 else -1
    m = case.m
    val = Fraction(sign, 2) * ((m + 1 - c) + Fraction(m + 1 + c, case.qv))
    return LnQValue(val * case.deg)


# brute-force oracle -----------------------------------------------------------


@dataclass(frozen=True)
class OracleResult:
    boundary: Cyc
    terms: list  # J_r (chi(pi)^r included), r = 1..R
    samples: dict

    def value(self, uv) -> Cyc:
        out = self.boundary
        for r, J in enumerate(self.terms, start=1):
            out = out + J * Fraction(uv) ** r
        return out


def oracle_whittaker(case: LocalCase, which: str = "alpha", samples=None, extra: int = 2) -> OracleResult:
    """Boundary term plus the r-sum of unit-integral character sums, all exact.

    W(u_v) = eps * phihat(0) * int_O psi(-b x) dx
             + sum_r (chi(pi) u_v)^r int_{O^x} chi(u) psi(b pi^{-r} u) du
    """
    R = case.R
    v, p, prof = case.v, case.p, case.prof
    if case.qv > ORACLE_MAX_QV:
        raise ValueError(f"oracle is gated to q_v <= {ORACLE_MAX_QV}")
    Kc = cyclotomic_field(p)
    vol = case.vol().to_cyc(p)
    # boundary: psi(-b x) trivial on O_v?
    M0 = max(1, -case.m)
    dig0 = _Digits(R, v, M0)
    trivial = all(_lam(v, prof, -case.b * e) == 0 for e in dig0.basis)
    if which == "alpha":
        eps = weil_index_norm_form_bruteforce(case.K, v, case.C.scalar(v), prof)
    else:
        eps = weil_index_norm_form_bruteforce(case.K, v, case.beta, prof)
    boundary = eps * case.phi_hat0(which).to_cyc(p) * vol if trivial else Kc.rational(0)
    ramified = case.splitting == Splitting.RAMIFIED
    chi_pi = case.chi_pi
    pi = case.pi()
    terms = []
    rmax = max(case.m + 1, 0) + extra
    for r in range(1, rmax + 1):
        M = max(1, r - case.m)
        dig = _Digits(R, v, M)
        w = case.b * pi ** (-r)
        lam = np.array([_lam(v, prof, w * e) for e in dig.basis], dtype=np.int64)
        vals = dig.points @ lam % p
        if ramified:
            weights = _residue_chars(R, v, dig)
        else:
            weights = _units_mask(dig).astype(np.int64)
        s = Kc.from_counts(_counts(vals, weights, p))
        J = s * vol * Fraction(1, case.qv**M) * Fraction(chi_pi**r)
        terms.append(J)
    if samples is None:
        samples = [Fraction(1), Fraction(1, case.qv), Fraction(case.qv)]
    res = OracleResult(boundary, terms, {})
    for uv in samples:
        res.samples[Fraction(uv)] = res.value(uv)
    return res


def closed_equals_oracle(case: LocalCase, which: str = "alpha", samples=None) -> bool:
    W = local_whittaker(case, which)
    orc = oracle_whittaker(case, which, samples)
    return all(W.at(uv) == val for uv, val in orc.samples.items())
