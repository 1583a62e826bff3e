"""Instance generation for the main-identity sweep."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .eisenstein import Request, StandingAssumptionError, field_data, theta_ideal
from .cycles import cycle_work
from .ideals import class_sum_size
from .places import INF, Idele, Place, conductor_profile, ord_at, places_upto, support
from .poly import Fn, PolyRing, ring
from .quad import IncoherentSpace, QuadExt, Splitting

DEFAULT_FIELDS = [
    (3, "t", "1"),
    (3, "t", "t+1"),
    (3, "t^3-t-1", "1"),
    (3, "t^3-t-1", "t^2+1"),
    (3, "2*t^2+1", "1"),
    (3, "2*t^2+1", "t^2+t+2"),
    (3, "2*t^4+t+1", "1"),
    (3, "t^5+t^2+2", "1"),
    (5, "t", "2"),
    (5, "t^3+t+1", "1"),
    (5, "2*t^4+t^3+1", "1"),
    (9, "t^3+t+a", "1"),
]


def standard_twist(C: IncoherentSpace) -> Fn:
    """A twist c with ord_v(alpha) + delta_v even at every inert v.

    Starts from c = t^{-2} (delta = -2 at (t), 0 elsewhere finite) and divides by
    the inert primes where alpha has odd valuation; tries small corrections
    when infinity is inert.
    """
    K, R = C.K, C.R
    t = Fn.of(R, R.t)
    base = 1 / t**2
    for v in support(C.alpha):
        if K.splitting(v) == Splitting.INERT and ord_at(v, C.alpha) % 2:
            base = base / Fn.of(R, v.P)
    fixes = [Fn.of(R, 1), 1 / t, t]
    for P in places_upto(R, 1):
        fixes += [1 / Fn.of(R, P.P), Fn.of(R, P.P)]
    for h in fixes:
        c = base * h
        try:
            prof = conductor_profile(c)
        except ArithmeticError:
            continue
        ok = True
        for v in set(support(C.alpha)) | set(prof.finite) | {INF}:
            if K.splitting(v) == Splitting.INERT and (ord_at(v, C.alpha) + prof.delta(v)) % 2:
                ok = False
        if ok:
            return c
    raise StandingAssumptionError("no small twist satisfies the parity assumption")


@dataclass(frozen=True)
class FieldSetup:
    q: int
    D: str
    alpha: str
    modulus: tuple | None = None

    def build(self):
        R = ring(self.q, self.modulus)
        K = QuadExt(R, R.parse(self.D))
        C = IncoherentSpace(K, R.parse(self.alpha))
        prof = conductor_profile(standard_twist(C))
        return R, K, C, prof


def _random_poly(R: PolyRing, rng: random.Random, d: int):
    q = R.q
    return tuple(rng.randrange(q) for _ in range(d)) + (rng.randrange(1, q),)


def random_beta(R: PolyRing, rng: random.Random, max_deg: int, places: list[Place]) -> Fn:
    beta = Fn.of(R, _random_poly(R, rng, rng.randint(0, max_deg)))
    if rng.random() < 0.25:
        beta = beta / Fn.of(R, places[rng.randrange(len(places))].P)
    return beta


def random_global(R: PolyRing, rng: random.Random, max_deg: int = 2) -> Fn:
    """A random element of k^x: a ratio of two random nonzero polynomials."""
    num = _random_poly(R, rng, rng.randint(0, max_deg))
    den = _random_poly(R, rng, rng.randint(0, max_deg))
    return Fn.of(R, num) / Fn.of(R, den)


def supporting_idele(R, prof, beta: Fn, rng: random.Random | None, bump: float = 0.3, places=()) -> Idele:
    """y with ord_v(y_v^2 beta) + delta_v >= 0 everywhere, occasionally with a little slack.

    With rng None the result is the minimal such y, supported where it has to be.
    """
    comps = {}
    pl = set(support(beta)) | set(prof.finite) | {INF} | set(places)
    for v in sorted(pl, key=Place.sort_key):
        need = ord_at(v, beta) + prof.delta(v)
        k = max(0, -((need) // 2))  # smallest k with 2k + need >= 0
        if rng is not None and rng.random() < bump:
            k += 1
        if rng is not None and rng.random() < 0.2 and 2 * (k - 1) + need >= 0:
            k -= 1
        pi = Fn.of(R, R.t) ** -1 if v.is_inf else Fn.of(R, v.P)
        if k:
            comps[v] = pi**k
    return Idele(R, comps)


def minimal_idele(R, prof, beta: Fn) -> Idele:
    return supporting_idele(R, prof, beta, None)


def all_betas(R: PolyRing, max_deg: int):
    """Every nonzero polynomial of degree <= max_deg, in canonical order."""
    for d in range(max_deg + 1):
        for f in R.all_of_degree_below(d + 1):
            if len(f) - 1 == d:
                yield Fn.of(R, f)


def generate(fields, per_field: int, seed: int = 0, max_deg: int = 4, want_diff_one: bool = True,
             violate: float = 0.05, max_work: int = 20000):
    """Yield Requests; with want_diff_one only #Diff = 1 instances are kept.

    Instances whose norm-one count would try more than max_work candidates are skipped.
    """
    rng = random.Random(seed)
    for fs in fields:
        if not isinstance(fs, FieldSetup):
            fs = FieldSetup(*fs)
        R, K, C, prof = fs.build()
        places = places_upto(R, 2)
        n, tries = 0, 0
        while n < per_field and tries < 50 * per_field:
            tries += 1
            beta = random_beta(R, rng, max_deg, places)
            extra = [places[rng.randrange(len(places))]] if rng.random() < 0.3 else []
            y = supporting_idele(R, prof, beta, rng, places=extra)
            if rng.random() < violate and y.comps:
                v = rng.choice(list(y.comps))
                y = Idele(R, {**y.comps, v: y.comps[v] / (Fn.of(R, R.t) ** -1 if v.is_inf else Fn.of(R, v.P))})
            req = Request(C, prof, y, beta)
            if want_diff_one and len(req.diff) != 1:
                continue
            if max_work and (class_sum_size(field_data(K)[1], theta_ideal(req), 1) > max_work
                             or cycle_work(req) > max_work):
                continue
            n += 1
            yield req
