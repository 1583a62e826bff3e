"""Fourier coefficients of the central derivative of the modified Eisenstein series.

Two independent routes to the non-constant coefficient eta_beta(y):

* eta_coeff_closed: the closed form through the unique place v0 where the
  local space fails to represent beta, times a class-group-averaged count of
  norm-one elements.
* eta_coeff_whittaker: the full product of local Whittaker functions over the
  bad places, times the partial L-function factor, differentiated exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from .cyclo import Surd
from .ideals import ClassGroup, FracIdeal, class_group, class_sum, prime_above
from .lfunc import (LData, LnQValue, URat, d_ds_at_0, dirichlet_L, euler_factor, L_logderiv0,
                    L_value0, mono, series_at_center, vanishing_order)
from .places import INF, ConductorProfile, Idele, Place, ord_at, support
from .poly import Fn
from .quad import IncoherentSpace, QuadExt, Splitting
from .whittaker import LocalCase, LocalW, local_whittaker


class StandingAssumptionError(ValueError):
    pass


# cached field data ------------------------------------------------------------


def _kkey(K: QuadExt):
    return (K.q, K.R.F.modulus, K.D)


_FIELD_CACHE: dict = {}


def field_data(K: QuadExt) -> tuple[LData, ClassGroup]:
    key = _kkey(K)
    if key not in _FIELD_CACHE:
        ld = dirichlet_L(K)
        cg = class_group(K, expected_h=int(K.f_inf * L_value0(ld)))
        _FIELD_CACHE[key] = (ld, cg)
    return _FIELD_CACHE[key]


# values -------------------------------------------------------------------------


@dataclass(frozen=True)
class EtaValue:
    """prefactor * (lnq.c * ln q)."""

    prefactor: Fraction
    lnq: LnQValue

    @classmethod
    def zero(cls):
        return cls(Fraction(0), LnQValue(0))

    @property
    def total(self) -> LnQValue:
        return LnQValue(self.prefactor * self.lnq.c)

    def is_zero(self) -> bool:
        return self.total.c == 0

    def __eq__(self, o):
        return isinstance(o, EtaValue) and self.total == o.total

    def __hash__(self):
        return hash(self.total)

    def to_json(self):
        return {"prefactor": str(self.prefactor), "lnq_coeff": str(self.lnq.c),
                "total": self.total.to_json()}


# requests ---------------------------------------------------------------------


class Request:
    """An incoherent space, an additive character, an idele y and beta in k."""

    def __init__(self, C: IncoherentSpace, prof: ConductorProfile, y: Idele, beta):
        K = C.K
        R = K.R
        self.C, self.K, self.R, self.prof, self.y = C, K, R, prof, y
        self.beta = Fn.of(R, beta)
        for v in self._check_places():
            if K.splitting(v) == Splitting.INERT and (ord_at(v, C.alpha) + prof.delta(v)) % 2:
                raise StandingAssumptionError(
                    f"ord(alpha) + delta is odd at the inert place {v.label(R)}; "
                    "retwist psi (choose c with a different valuation there) or rescale alpha")

    def _check_places(self):
        pl = set(support(self.C.alpha)) | set(self.prof.finite) | {INF}
        return sorted(pl, key=Place.sort_key)

    @cached_property
    def S(self) -> list[Place]:
        """Places outside which every local datum is unramified and unit-valued."""
        pl = set(self.y.support()) | set(self.K.ramified_finite) | set(support(self.C.alpha))
        pl |= set(self.prof.finite) | {INF}
        if not self.beta.is_zero():
            pl |= set(support(self.beta))
        return sorted(pl, key=Place.sort_key)

    def case(self, v: Place) -> LocalCase:
        return LocalCase(self.C, self.prof, v, self.y[v], self.beta)

    @cached_property
    def chi_y(self) -> int:
        return self.K.chi(self.y)

    @cached_property
    def abs_y(self) -> Fraction:
        return self.y.norm()

    @cached_property
    def diff(self) -> list[Place]:
        return self.C.diff_set(self.beta)

    def support_ok(self) -> bool:
        return all(self.case(v).m >= 0 for v in self.S)

    def key(self):
        return (self.K.q, self.R.fmt(self.K.D), str(self.C.alpha), str(self.prof.c), self.y.fmt(), str(self.beta))

    def rescaled(self, c) -> "Request":
        """(c^{-1} y, c^2 beta)."""
        c = Fn.of(self.R, c)
        return Request(self.C, self.prof, self.y.scale(1 / c, self.K.ramified_finite), self.beta * c * c)


# constant term ------------------------------------------------------------------


def _inert_odd_places(req: Request) -> list[Place]:
    K = req.K
    out = []
    for v in sorted(set(req.S) | set(K.ramified_finite), key=Place.sort_key):
        if K.splitting(v) == Splitting.INERT:
            e = -req.prof.delta(v) - ord_at(v, req.C.scalar(v))
            if e % 2:
                out.append(v)
    return out


def inert_odd_product(req: Request) -> URat:
    """prod over inert v with e_v odd of q_v^{-s} L_v(1+s) / L_v(1-s)."""
    K = req.K
    out = URat.of(1)
    for v in _inert_odd_places(req):
        Lv = euler_factor(K, v)
        out = out * mono(v.deg) * Lv.scale_var(Fraction(1, K.q)) / Lv.inv_var(K.q)
    return out


def E0_series(req: Request) -> tuple[Fraction, URat]:
    """(chi(y)|y|, bracket) with the constant term equal to their product.

    bracket(u) = |y|^s L~(-s) - |y|^{-s} L~(s) prod_{inert, e odd} q_v^{-s} L_v(1+s)/L_v(1-s).
    """
    if not req.beta.is_zero():
        raise ValueError("E0_series is the beta = 0 coefficient")
    ld, _ = field_data(req.K)
    d = req.y.degree()
    Lt = ld.completed()
    bracket = mono(d) * Lt.inv_var(1) - mono(-d) * Lt * inert_odd_product(req)
    return Fraction(req.chi_y) * req.abs_y, bracket


def antisymmetry_holds(req: Request) -> bool:
    """F(s) = -P(s) F(-s) for the constant-term bracket F."""
    _, F = E0_series(req)
    P = inert_odd_product(req)
    return F == -(P * F.inv_var(1))


def eta_constant(req: Request) -> EtaValue:
    pref, F = E0_series(req)
    return EtaValue(pref, d_ds_at_0(F))


def eta_constant_formula(req: Request) -> EtaValue:
    """2 chi(y)|y| L(0) [ln|y| - g_K ln q - L'(0)/L(0) + 1/2 sum (q_v-1)/(q_v+1) ln q_v]."""
    ld, _ = field_data(req.K)
    q = req.K.q
    br = Fraction(-req.y.degree() - ld.genus) - L_logderiv0(ld).c
    for v in _inert_odd_places(req):
        qv = v.qv(q)
        br += Fraction(1, 2) * Fraction(qv - 1, qv + 1) * v.deg
    return EtaValue(2 * req.chi_y * req.abs_y * L_value0(ld), LnQValue(br))


# special ideals -------------------------------------------------------------------


def y_ideal(req: Request) -> FracIdeal:
    """The O_K-ideal generated locally by the finite components of y."""
    K, R = req.K, req.R
    f = Fn.of(R, 1)
    for v in req.y.support():
        if not v.is_inf:
            f = f * Fn.of(R, v.P) ** ord_at(v, req.y[v])
    return FracIdeal.of_base(K, f)


def delta_ideal(req: Request, x: Fn) -> FracIdeal:
    """Pi_v^{delta_v + ord_v x} (ramified, split), pi_v^{floor((delta_v + ord_v x)/2)} (inert)."""
    K, R = req.K, req.R
    out = FracIdeal.unit(K)
    places = set(support(x)) | set(req.prof.finite)
    for v in sorted(places, key=Place.sort_key):
        n = req.prof.delta(v) + ord_at(v, x)
        if n == 0:
            continue
        if K.splitting(v) == Splitting.INERT:
            out = out * FracIdeal.of_base(K, Fn.of(R, v.P) ** (n // 2))
        else:
            out = out * prime_above(K, v).pow(n)
    return out


def theta_ideal(req: Request) -> FracIdeal:
    """y^{-1} D_beta^{-1}."""
    return (y_ideal(req) * delta_ideal(req, req.beta)).inverse()


def theta_count(req: Request) -> int:
    _, cg = field_data(req.K)
    return class_sum(cg, theta_ideal(req), 1)


def theta_coeff(req: Request) -> Fraction:
    """chi(y)|y| / #Pic(O_K) * sum over classes of norm-one counts."""
    if req.beta.is_zero():
        raise ValueError("theta_coeff needs beta != 0")
    if not req.support_ok():
        return Fraction(0)
    _, cg = field_data(req.K)
    return Fraction(req.chi_y) * req.abs_y * Fraction(theta_count(req), cg.h)


# non-constant coefficients ----------------------------------------------------------


def eta_coeff_closed(req: Request) -> EtaValue:
    if req.beta.is_zero():
        raise ValueError("use eta_constant for beta = 0")
    diff = req.diff
    if len(diff) > 1 or not req.support_ok():
        return EtaValue.zero()
    v0 = diff[0]
    c0 = req.case(v0)
    N = theta_count(req)
    pref = -Fraction(req.chi_y) * req.abs_y / req.K.f_inf
    m = c0.m
    if c0.splitting == Splitting.RAMIFIED:
        lin = Fraction(m + 1)
    elif c0.splitting == Splitting.INERT:
        c = 1 if c0.e_prime % 2 == 0 else 0
        lin = Fraction(c0.qv * (m + 1 - c) + (m + 1 + c), 1 + c0.qv)
    else:
        raise ArithmeticError("a Diff place cannot split")
    return EtaValue(pref, LnQValue(v0.deg * lin * N))


@dataclass(frozen=True)
class WhittakerProduct:
    """E~_beta(y, s) = scalar * F(u)."""

    scalar: Fraction
    F: URat
    local: dict

    def vanishing_order(self, max_order: int = 3) -> int:
        if self.scalar == 0:
            return max_order + 1
        return vanishing_order(self.F, max_order)

    def series(self, order: int = 3) -> list[Fraction]:
        return [self.scalar * a for a in series_at_center(self.F, order)]


def whittaker_product(req: Request) -> WhittakerProduct:
    """L~(s+1) chi(y)|y|^{1-s} Lambda^S(s) prod_{v in S} W_v(s), as scalar * URat(u)."""
    K = req.K
    q = K.q
    p = K.R.F.p
    ld, _ = field_data(K)
    shift = Fraction(1, q)
    Lt1 = ld.completed().scale_var(shift)  # L~(s+1)
    L1 = ld.as_urat().scale_var(shift)  # L(s+1)
    lam = URat.of(1) / L1  # Lambda^S = L^S(s+1)^{-1}
    scalar = Surd(1)
    F = URat.of(1)
    local = {}
    for v in req.S:
        lam = lam * euler_factor(K, v).scale_var(shift)
        W = local_whittaker(req.case(v), "alpha")
        local[v] = W
        scalar = scalar.mul(W.scalar, p)
        F = F * W.global_u()
    F = Lt1 * lam * mono(-req.y.degree()) * F
    total = Fraction(req.chi_y) * req.abs_y
    if scalar.coef == 0:
        return WhittakerProduct(Fraction(0), URat.of(0), local)
    return WhittakerProduct(total * scalar.to_fraction(), F, local)


def eta_coeff_whittaker(req: Request) -> EtaValue:
    if req.beta.is_zero():
        raise ValueError("use eta_constant for beta = 0")
    wp = whittaker_product(req)
    if wp.scalar == 0:
        return EtaValue.zero()
    vanishing = [v for v, W in wp.local.items() if W.F(1) == 0]
    if len(req.diff) == 1 and len(vanishing) > 1:
        raise ArithmeticError("more than one local factor vanishes at s = 0 with a single Diff place")
    return EtaValue(wp.scalar, d_ds_at_0(wp.F))
