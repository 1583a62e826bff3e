"""Degrees of the special 0-cycles Z(I, beta) and z(y, beta).

The geometric degree is computed through lattice counts: points of a
Drinfeld-module special cycle over a non-split prime correspond to elements
of norm one in A conj(A)^{-1} I G(alpha, beta), where the counting ideal G
depends only on the valuations of alpha and beta.  At infinity the cycle is
a rational divisor supported on the points above infinity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .eisenstein import EtaValue, Request, eta_coeff_closed, eta_coeff_whittaker, field_data, y_ideal
from .ideals import FracIdeal, class_sum, class_sum_size, prime_above
from .lfunc import LnQValue
from .places import INF, Place, ord_at, support
from .poly import Fn
from .quad import Splitting


@dataclass(frozen=True)
class CycleDegree:
    """total = lnq * ln q; parts lists (place label, multiplicity, class count)."""

    lnq: LnQValue
    parts: tuple = field(default_factory=tuple)

    @classmethod
    def zero(cls):
        return cls(LnQValue(0), ())

    def to_json(self):
        return {"total": self.lnq.to_json(),
                "parts": [{"place": pl, "multiplicity": str(mu), "count": n} for pl, mu, n in self.parts]}


def lambda_inf(K) -> Fraction:
    """(3 + (-1)^f + q_inf (1 - (-1)^f)) / (2 (1 + q_inf)), evaluated as written."""
    f = K.f_inf
    qi = K.q  # deg(inf) = 1
    sgn = (-1) ** f
    return Fraction(3 + sgn + qi * (1 - sgn), 2 * (1 + qi))


def obstruction_places(K, alpha: Fn, beta: Fn) -> list[Place]:
    """Finite places where beta/alpha is not a local norm."""
    ratio = beta / alpha
    cands = set(support(ratio)) | set(K.ramified_finite)
    return sorted((v for v in cands if K.chi_v(v, ratio) == -1), key=Place.sort_key)


def counting_ideal(K, alpha: Fn, beta: Fn) -> FracIdeal:
    """G(alpha, beta): P^{ord a - ord b} (ramified), conj(Pi)^{ord a} Pi^{-ord b} (split),
    pi^{ceil((ord a - ord b)/2)} (inert)."""
    R = K.R
    out = FracIdeal.unit(K)
    for v in sorted(set(support(alpha)) | set(support(beta)), key=Place.sort_key):
        a, b = ord_at(v, alpha), ord_at(v, beta)
        s = K.splitting(v)
        if s == Splitting.RAMIFIED:
            out = out * prime_above(K, v).pow(a - b)
        elif s == Splitting.SPLIT:
            P = prime_above(K, v)
            out = out * P.conj().pow(a) * P.pow(-b)
        else:
            out = out * FracIdeal.of_base(K, Fn.of(R, v.P) ** (-((b - a) // 2)))
    return out


def deg_Z(K, alpha: Fn, I: FracIdeal, beta: Fn) -> CycleDegree:
    """deg Z(I, beta) for an integral ideal I and 0 != beta in A."""
    R = K.R
    alpha, beta = Fn.of(R, alpha), Fn.of(R, beta)
    if not I.is_integral():
        raise ValueError("Z(I, beta) needs an integral ideal I")
    if beta.is_zero() or not beta.is_poly():
        raise ValueError("Z(I, beta) needs 0 != beta in A")
    obs = obstruction_places(K, alpha, beta)
    if len(obs) != 1:
        return CycleDegree.zero()
    v0 = obs[0]
    if K.splitting(v0) == Splitting.SPLIT:
        raise ArithmeticError("beta/alpha is a local norm at every split place")
    mult = ord_at(v0, beta / (alpha * I.norm())) + 1
    if mult <= 0:
        return CycleDegree.zero()
    # the local ring at each point has length nu with nu f = mult
    f = 2 if K.splitting(v0) == Splitting.INERT else 1
    if mult % f:
        raise ArithmeticError("cycle multiplicity is not divisible by the residue degree")
    _, cg = field_data(K)
    n = class_sum(cg, I * counting_ideal(K, alpha, beta), 1)
    total = LnQValue(v0.deg * mult * n)
    return CycleDegree(total, ((v0.label(R), Fraction(mult), n),))


def _rescaling(req: Request) -> Fn:
    """a in A with a^2 beta in A and a * I_y integral."""
    R = req.R
    Iy = (y_ideal(req) * _conj_delta_alpha(req)).inverse()
    return Fn.of(R, R.mul(req.beta.den, Iy.d))


def _conj_delta_alpha(req: Request) -> FracIdeal:
    from .eisenstein import delta_ideal

    return delta_ideal(req, req.C.alpha).conj()


def z_cycle(req: Request) -> CycleDegree:
    """deg z(y, beta)."""
    K, R = req.K, req.R
    beta, alpha = req.beta, req.C.alpha
    if beta.is_zero():
        raise ValueError("z(y, beta) needs beta != 0")
    if not req.support_ok():
        return CycleDegree.zero()
    obs = obstruction_places(K, alpha, beta)
    if len(obs) >= 2:
        return CycleDegree.zero()
    if not obs:
        # the obstruction sits at infinity: a divisor on the points above infinity
        Iy = (y_ideal(req) * _conj_delta_alpha(req)).inverse()
        _, cg = field_data(K)
        n = class_sum(cg, Iy.conj(), beta / alpha)
        m_inf = ord_at(INF, req.y[INF] ** 2 * beta) + req.prof.delta(INF)
        mult = m_inf + lambda_inf(K)
        # each point above infinity has degree f_inf over F_q, cancelling the 1/f_inf weight
        return CycleDegree(LnQValue(mult * n), (("inf", mult, n),))
    a = _rescaling(req)
    req2 = req.rescaled(a)
    Iy = (y_ideal(req2) * _conj_delta_alpha(req2)).inverse()
    if not Iy.is_integral() or not req2.beta.is_poly():
        raise ArithmeticError("rescaling failed to make I_y integral and beta integral")
    return deg_Z(K, alpha, Iy, req2.beta)


def cycle_work(req: Request) -> int:
    """Candidates the norm-one search behind z_cycle would try (0 when it is skipped)."""
    K = req.K
    if req.beta.is_zero() or not req.support_ok():
        return 0
    obs = obstruction_places(K, req.C.alpha, req.beta)
    if len(obs) >= 2:
        return 0
    _, cg = field_data(K)
    if not obs:
        Iy = (y_ideal(req) * _conj_delta_alpha(req)).inverse()
        return class_sum_size(cg, Iy.conj(), req.beta / req.C.alpha)
    req2 = req.rescaled(_rescaling(req))
    Iy = (y_ideal(req2) * _conj_delta_alpha(req2)).inverse()
    return class_sum_size(cg, Iy * counting_ideal(K, req.C.alpha, req2.beta), 1)


@dataclass
class MainReport:
    key: tuple
    closed: EtaValue
    whittaker: EtaValue
    cycle: EtaValue
    diff: list

    @property
    def ok(self) -> bool:
        return self.closed == self.whittaker == self.cycle

    def to_json(self):
        return {"instance": list(self.key), "diff": self.diff,
                "paths": {"closed": self.closed.to_json(), "whittaker": self.whittaker.to_json(),
                          "cycle": self.cycle.to_json()},
                "ok": self.ok}


def eta_from_cycle(req: Request) -> EtaValue:
    z = z_cycle(req)
    return EtaValue(-Fraction(req.chi_y) * req.abs_y / req.K.f_inf, z.lnq)


def verify_main(req: Request) -> MainReport:
    return MainReport(req.key(), eta_coeff_closed(req), eta_coeff_whittaker(req), eta_from_cycle(req),
                      [v.label(req.R) for v in req.diff])
