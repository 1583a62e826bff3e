"""Places of k = F_q(t), valuations, residues and conductor bookkeeping."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .poly import Fn, Poly, PolyRing


@dataclass(frozen=True)
class Place:
    """A finite place (monic irreducible P) or infinity (P is None)."""

    P: Poly | None = None

    @property
    def is_inf(self) -> bool:
        return self.P is None

    @property
    def deg(self) -> int:
        return 1 if self.P is None else len(self.P) - 1

    def qv(self, q: int) -> int:
        return q**self.deg

    def sort_key(self):
        return (1, 0, ()) if self.P is None else (0, len(self.P), self.P)

    def label(self, R: PolyRing) -> str:
        return "inf" if self.P is None else f"({R.fmt(self.P)})"


INF = Place(None)


def make_place(R: PolyRing, P: Poly) -> Place:
    if not P:
        raise ValueError("zero polynomial is not a place")
    if P[-1] != 1:
        raise ValueError("a finite place is given by a monic polynomial")
    if not R.is_irreducible(P):
        raise ValueError(f"{R.fmt(P)} is not irreducible")
    return Place(tuple(P))


def parse_place(R: PolyRing, text: str) -> Place:
    text = text.strip()
    if text in ("inf", "oo", "infinity"):
        return INF
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    return make_place(R, R.monic(R.parse(text)))


def places_upto(R: PolyRing, d: int) -> list[Place]:
    out = []
    for n in range(1, d + 1):
        for P in R.monics(n):
            if R.is_irreducible(P):
                out.append(Place(P))
    return out


# valuations -----------------------------------------------------------------


def poly_ord(R: PolyRing, P: Poly, a: Poly) -> int:
    if not a:
        raise ValueError("valuation of zero")
    n = 0
    while True:
        qt, r = R.divmod(a, P)
        if r:
            return n
        a, n = qt, n + 1


def ord_at(v: Place, f: Fn) -> int:
    if f.is_zero():
        raise ValueError("valuation of zero is +infinity")
    R = f.R
    if v.is_inf:
        return (len(f.den) - 1) - (len(f.num) - 1)
    return poly_ord(R, v.P, f.num) - poly_ord(R, v.P, f.den)


def support(f: Fn) -> list[Place]:
    """Finite places where f has nonzero valuation."""
    R = f.R
    out = [Place(P) for P, _ in R.factor(f.num)] if len(f.num) > 1 else []
    if len(f.den) > 1:
        out += [Place(P) for P, _ in R.factor(f.den)]
    return sorted(set(out), key=Place.sort_key)


def uniformizer(R: PolyRing, v: Place) -> Fn:
    if v.is_inf:
        return Fn(R, R.one, R.t, True)
    return Fn(R, v.P, R.one, True)


def unit_part_residue(v: Place, f: Fn):
    """Residue class of f * pi_v^{-ord_v f}; a poly mod P, or an F_q code at infinity."""
    R = f.R
    if f.is_zero():
        raise ValueError("zero has no unit part")
    if v.is_inf:
        return R.F.mul(f.num[-1], R.F.inv(f.den[-1]))
    P = v.P
    num, den = f.num, f.den
    while not R.mod(num, P):
        num = R.exact_div(num, P)
    while not R.mod(den, P):
        den = R.exact_div(den, P)
    return R.mulmod(num, R.inv_mod(den, P), P)


def residue_quadchar(R: PolyRing, v: Place, r) -> int:
    """Quadratic character of a residue-field element (Euler criterion)."""
    F = R.F
    if v.is_inf:
        return F.eta_t[r]
    if not r:
        return 0
    e = R.powmod(r, (v.qv(R.q) - 1) // 2, v.P)
    if e == R.one:
        return 1
    if e == (F.minus_one,):
        return -1
    raise ArithmeticError("Euler criterion produced a non-sign")


def legendre(R: PolyRing, a, P: Poly) -> int:
    """Quadratic residue symbol (a / P) for a polynomial a and monic irreducible P."""
    a = a.num if isinstance(a, Fn) and a.is_poly() else a
    if isinstance(a, Fn):
        raise ValueError("legendre expects a polynomial")
    r = R.mod(a, P)
    return residue_quadchar(R, Place(P), r) if r else 0


def jacobi(R: PolyRing, a: Poly, b: Poly) -> int:
    """Jacobi symbol (a / b) for b monic, via quadratic reciprocity in F_q[t]."""
    F = R.F
    half = (R.q - 1) // 2
    res = 1
    while True:
        if len(b) == 1:
            return res
        a = R.mod(a, b)
        if not a:
            return 0
        c = a[-1]
        if c != 1:
            if F.eta_t[c] == -1 and (len(b) - 1) % 2:
                res = -res
            a = R.monic(a)
        if (half * (len(a) - 1) * (len(b) - 1)) % 2:
            res = -res
        a, b = b, a


# Laurent data at infinity and residues of differentials --------------------


def laurent_inf(f: Fn, n: int) -> tuple[int, list[int]]:
    """Expansion of f at infinity in s = 1/t: f = s^o * (c_0 + c_1 s + ... + c_{n-1} s^{n-1} + ...)."""
    R = f.R
    F = R.F
    o = (len(f.den) - 1) - (len(f.num) - 1)
    num = list(reversed(f.num))
    den = list(reversed(f.den))
    inv0 = F.inv(den[0])
    out = []
    rem = num + [0] * n
    for k in range(n):
        c = F.mul(rem[k], inv0) if k < len(rem) else 0
        out.append(c)
        if c:
            for j, d in enumerate(den):
                if k + j < len(rem):
                    rem[k + j] = F.sub(rem[k + j], F.mul(c, d))
    return o, out


def coeff_inf(f: Fn, k: int) -> int:
    """Coefficient of t^k in the expansion of f at infinity."""
    if f.is_zero():
        return 0
    o, _ = laurent_inf(f, 1)
    # t^k = s^{-k}; position in the series is -k - o
    pos = -k - o
    if pos < 0:
        return 0
    _, cs = laurent_inf(f, pos + 1)
    return cs[pos]


def principal_part(v: Place, f: Fn) -> tuple[Poly, int]:
    """At finite v: (Rp, n) with f = Rp/P^n + (v-integral), deg Rp < n deg P; n >= 0."""
    R = f.R
    P = v.P
    o = ord_at(v, f) if not f.is_zero() else 0
    if f.is_zero() or o >= 0:
        return (), 0
    n = -o
    Pn = R.pow(P, n)
    M = R.exact_div(f.den, Pn)
    return R.mulmod(f.num, R.inv_mod(M, Pn), Pn), n


def residue_dt(v: Place, f: Fn) -> int:
    """Res_v(f dt) traced down to F_q."""
    R = f.R
    if f.is_zero():
        return 0
    if v.is_inf:
        return R.F.neg_t[coeff_inf(f, -1)]
    Rp, n = principal_part(v, f)
    if not n:
        return 0
    k = n * v.deg - 1
    return Rp[k] if k < len(Rp) else 0


def residue_dt_local(v: Place, f: Fn):
    """Residue of f dt in the residue field F_v, for f with at most a simple pole."""
    R = f.R
    if v.is_inf:
        return residue_dt(v, f)
    Rp, n = principal_part(v, f)
    if n == 0:
        return ()
    if n != 1:
        raise ValueError("residue_dt_local needs at most a simple pole")
    P = v.P
    return R.mulmod(Rp, R.inv_mod(R.deriv(P), P), P)


# conductors and ideles -----------------------------------------------------


@dataclass(frozen=True)
class ConductorProfile:
    """delta_v of psi_v(x) = psi_0(Tr Res_v(x c dt)): ord_v(c dt)."""

    c: Fn
    finite: dict = field(default_factory=dict)
    inf: int = -2

    def delta(self, v: Place) -> int:
        return self.inf if v.is_inf else self.finite.get(v, 0)

    def places(self):
        return sorted(self.finite, key=Place.sort_key) + [INF]


def conductor_profile(c: Fn) -> ConductorProfile:
    if c.is_zero():
        raise ValueError("twist element must be nonzero")
    fin = {}
    for v in support(c):
        d = ord_at(v, c)
        if d:
            fin[v] = d
    inf = -2 + ord_at(INF, c)
    total = sum(d * v.deg for v, d in fin.items()) + inf
    if total != -2:
        raise ArithmeticError("conductor degrees do not sum to 2g-2")
    return ConductorProfile(c, fin, inf)


class Idele:
    """Finitely supported family (y_v) with y_v in k^x; omitted components are 1."""

    def __init__(self, R: PolyRing, comps: dict | None = None):
        self.R = R
        clean = {}
        for v, f in (comps or {}).items():
            f = Fn.of(R, f)
            if f.is_zero():
                raise ValueError(f"zero component at {v.label(R)}")
            if f != 1:
                clean[v] = f
        self.comps = clean

    def __getitem__(self, v: Place) -> Fn:
        return self.comps.get(v, Fn.of(self.R, 1))

    def support(self):
        return sorted(self.comps, key=Place.sort_key)

    def degree(self) -> int:
        """d with |y| = q^{-d}."""
        return sum(v.deg * ord_at(v, f) for v, f in self.comps.items())

    def norm(self) -> Fraction:
        return Fraction(1, self.R.q) ** self.degree()

    def scale(self, c: Fn, extra=()) -> "Idele":
        """Componentwise multiplication by a global element c.

        Components are recorded where y or c is not a unit, at infinity, and at the
        extra places (for instance ramified places, where a unit can be a non-norm).
        """
        c = Fn.of(self.R, c)
        places = set(self.comps) | set(support(c)) | {INF} | set(extra)
        return Idele(self.R, {v: self[v] * c for v in places})

    def finite_part(self) -> "Idele":
        return Idele(self.R, {v: f for v, f in self.comps.items() if not v.is_inf})

    def __eq__(self, other):
        return isinstance(other, Idele) and self.comps == other.comps

    def __hash__(self):
        return hash(tuple(sorted(((v.sort_key(), f) for v, f in self.comps.items()), key=lambda x: x[0])))

    def fmt(self) -> str:
        if not self.comps:
            return "1"
        return ",".join(f"{v.label(self.R)}={f}" for v, f in sorted(self.comps.items(), key=lambda kv: kv[0].sort_key()))


def parse_idele(R: PolyRing, text: str) -> Idele:
    from .poly import parse_fn

    comps = {}
    text = text.strip()
    if not text or text == "1":
        return Idele(R)
    for part in _split_top(text, ","):
        if "=" not in part:
            raise ValueError(f"idele component {part!r} lacks '='")
        left, right = part.split("=", 1)
        comps[parse_place(R, left)] = parse_fn(R, right.strip())
    return Idele(R, comps)


def _split_top(text, sep):
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    return [s for s in out if s.strip()]
