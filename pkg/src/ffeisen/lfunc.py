"""Exact rational functions in u = q^{-s}, ln q-valued derivatives, and L(s, chi_K)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from .places import INF, Place, jacobi, places_upto
from .quad import QuadExt, Splitting

ZERO = Fraction(0)
ONE = Fraction(1)


def _strip(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class UPoly:
    """Polynomial in u with Fraction coefficients (lowest degree first)."""

    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        self.c = _strip(Fraction(x) for x in coeffs)

    @classmethod
    def const(cls, x):
        return cls((x,))

    @classmethod
    def mono(cls, x, n):
        return cls([0] * n + [x])

    @property
    def deg(self):
        return len(self.c) - 1

    def __bool__(self):
        return bool(self.c)

    def __add__(self, o):
        o = _up(o)
        n = max(len(self.c), len(o.c))
        a = self.c + (ZERO,) * (n - len(self.c))
        b = o.c + (ZERO,) * (n - len(o.c))
        return UPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return UPoly(-x for x in self.c)

    def __sub__(self, o):
        return self + (-_up(o))

    def __rsub__(self, o):
        return _up(o) - self

    def __mul__(self, o):
        if isinstance(o, URat):
            return NotImplemented
        o = _up(o)
        if not self.c or not o.c:
            return UPoly()
        out = [ZERO] * (len(self.c) + len(o.c) - 1)
        for i, x in enumerate(self.c):
            if x:
                for j, y in enumerate(o.c):
                    out[i + j] += x * y
        return UPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        acc = UPoly.const(1)
        for _ in range(n):
            acc = acc * self
        return acc

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            o = UPoly.const(o)
        return isinstance(o, UPoly) and self.c == o.c

    def __hash__(self):
        return hash(self.c)

    def __call__(self, x):
        acc = ZERO
        for c in reversed(self.c):
            acc = acc * x + c
        return acc

    def deriv(self):
        return UPoly(i * c for i, c in enumerate(self.c) if i)

    def subs_power(self, k):
        """p(u^k)."""
        out = [ZERO] * (k * max(len(self.c) - 1, 0) + 1)
        for i, c in enumerate(self.c):
            out[i * k] = c
        return UPoly(out)

    def scale_var(self, a):
        """p(a u)."""
        a = Fraction(a)
        return UPoly(c * a**i for i, c in enumerate(self.c))

    def taylor_shift(self, a):
        """p(u + a)."""
        a = Fraction(a)
        out = [ZERO] * len(self.c)
        for c in reversed(self.c):
            # out = out*(u+a) + c
            new = [ZERO] * len(self.c)
            for i, x in enumerate(out):
                if x:
                    if i + 1 < len(new):
                        new[i + 1] += x
                    new[i] += a * x
            new[0] += c
            out = new
        return UPoly(out)

    def divmod(self, o):
        if not o:
            raise ZeroDivisionError("UPoly division by zero")
        r = list(self.c)
        dq = len(r) - len(o.c) + 1
        if dq <= 0:
            return UPoly(), UPoly(r)
        qt = [ZERO] * dq
        lead = o.c[-1]
        for k in range(len(r) - 1, len(o.c) - 2, -1):
            c = r[k] / lead
            qt[k - len(o.c) + 1] = c
            if c:
                for j, y in enumerate(o.c):
                    r[k - len(o.c) + 1 + j] -= c * y
        return UPoly(qt), UPoly(r[: len(o.c) - 1])

    def monic(self):
        return UPoly(x / self.c[-1] for x in self.c) if self.c else self

    def coeffs(self):
        return list(self.c)

    def __repr__(self):
        return f"UPoly({[str(x) for x in self.c]})"


def _up(x):
    if isinstance(x, UPoly):
        return x
    return UPoly.const(x)


def upoly_gcd(a: UPoly, b: UPoly) -> UPoly:
    while b:
        a, b = b, a.divmod(b)[1]
    return a.monic()


class URat:
    """num/den in lowest terms with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced=False):
        num = _up(num)
        den = UPoly.const(1) if den is None else _up(den)
        if not den:
            raise ZeroDivisionError("URat with zero denominator")
        if not _reduced:
            if not num:
                den = UPoly.const(1)
            else:
                g = upoly_gcd(num, den)
                if g.deg > 0:
                    num, den = num.divmod(g)[0], den.divmod(g)[0]
            lead = den.c[-1]
            if lead != 1:
                num = UPoly(x / lead for x in num.c)
                den = UPoly(x / lead for x in den.c)
        self.num, self.den = num, den

    @staticmethod
    def of(x):
        if isinstance(x, URat):
            return x
        return URat(_up(x), None, True) if not isinstance(x, UPoly) else URat(x, None, True)

    def __add__(self, o):
        o = URat.of(o)
        return URat(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return URat(-self.num, self.den, True)

    def __sub__(self, o):
        return self + (-URat.of(o))

    def __rsub__(self, o):
        return URat.of(o) - self

    def __mul__(self, o):
        o = URat.of(o)
        return URat(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = URat.of(o)
        if not o.num:
            raise ZeroDivisionError("URat division by zero")
        return URat(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, o):
        return URat.of(o) / self

    def __pow__(self, n):
        if n < 0:
            return URat.of(1) / self ** (-n)
        return URat(self.num**n, self.den**n, True)

    def __eq__(self, o):
        if isinstance(o, (int, Fraction, UPoly)):
            o = URat.of(o)
        return isinstance(o, URat) and self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __call__(self, x):
        d = self.den(Fraction(x))
        if d == 0:
            raise ZeroDivisionError("pole")
        return self.num(Fraction(x)) / d

    def is_zero(self):
        return not self.num

    def subs_power(self, k):
        return URat(self.num.subs_power(k), self.den.subs_power(k))

    def scale_var(self, a):
        return URat(self.num.scale_var(a), self.den.scale_var(a))

    def inv_var(self, a=1):
        """F(1/(a u)) as a rational function of u."""
        a = Fraction(a)
        n = max(self.num.deg, self.den.deg, 0)

        def flip(p):
            # u^n p(1/(a u))
            out = [ZERO] * (n + 1)
            for i, c in enumerate(p.c):
                out[n - i] = c / a**i
            return UPoly(out)

        return URat(flip(self.num), flip(self.den))

    def deriv(self):
        return URat(self.num.deriv() * self.den - self.num * self.den.deriv(), self.den * self.den)

    def __repr__(self):
        return f"URat({self.num!r} / {self.den!r})"


def mono(k: int) -> URat:
    """u^k for any integer k."""
    if k >= 0:
        return URat(UPoly.mono(1, k), None, True)
    return URat(UPoly.const(1), UPoly.mono(1, -k), True)


# ln q values ------------------------------------------------------------------


@total_ordering
@dataclass(frozen=True)
class LnQValue:
    """The real number c * ln q, c rational."""

    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", Fraction(self.c))

    def __add__(self, o):
        return LnQValue(self.c + o.c)

    def __sub__(self, o):
        return LnQValue(self.c - o.c)

    def __neg__(self):
        return LnQValue(-self.c)

    def __mul__(self, r):
        if isinstance(r, LnQValue):
            raise TypeError("product of two ln q values is not an LnQValue")
        return LnQValue(self.c * Fraction(r))

    __rmul__ = __mul__

    def __lt__(self, o):
        return self.c < o.c

    def __str__(self):
        return f"{self.c} * ln q"

    def to_json(self):
        return {"lnq_coeff": str(self.c)}


def d_ds_at_0(F: URat) -> LnQValue:
    """dF/ds at s = 0 for F a rational function of u = q^{-s}."""
    return LnQValue(-F.deriv()(1))


def series_at_center(F: URat, order: int) -> list[Fraction]:
    """Coefficients a_k with F(q^{-s}) = sum a_k (s ln q)^k + O(s^{order+1})."""
    n = order + 1
    num = F.num.taylor_shift(1).c
    den = F.den.taylor_shift(1).c
    num = list(num) + [ZERO] * n
    den = list(den) + [ZERO] * n
    # power series in w = u - 1
    if den[0] == 0:
        raise ZeroDivisionError("pole at the center")
    ser = []
    rem = num[:n]
    for k in range(n):
        c = rem[k] / den[0]
        ser.append(c)
        for j in range(k, n):
            rem[j] -= c * den[j - k]
    # w = e^{-x} - 1
    w = [ZERO] + [Fraction((-1) ** k, _fact(k)) for k in range(1, n)]
    out = [ZERO] * n
    power = [ONE] + [ZERO] * (n - 1)
    for k in range(n):
        for i in range(n):
            out[i] += ser[k] * power[i]
        power = _ser_mul(power, w, n)
    return out


def _fact(k):
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def _ser_mul(a, b, n):
    out = [ZERO] * n
    for i, x in enumerate(a):
        if x:
            for j in range(n - i):
                out[i + j] += x * b[j]
    return out


def vanishing_order(F: URat, max_order: int = 3) -> int:
    """Order of vanishing at s = 0, capped at max_order + 1."""
    if F.is_zero():
        return max_order + 1
    ser = series_at_center(F, max_order)
    for k, c in enumerate(ser):
        if c:
            return k
    return max_order + 1


# Euler factors, zeta functions and L(s, chi_K) --------------------------------


def euler_factor(K: QuadExt, v: Place) -> URat:
    s = K.splitting(v)
    if s == Splitting.RAMIFIED:
        return URat.of(1)
    eps = 1 if s == Splitting.SPLIT else -1
    return URat(UPoly.const(1), UPoly.const(1) - UPoly.mono(eps, v.deg))


def zeta_A(q: int) -> URat:
    return URat(UPoly.const(1), UPoly([1, -q]))


def zeta_v(v: Place) -> URat:
    return URat(UPoly.const(1), UPoly.const(1) - UPoly.mono(1, v.deg))


ENUM_BUDGET = 8000


@dataclass(frozen=True)
class LData:
    K: QuadExt
    L: UPoly
    genus: int
    enum_degree: int

    @property
    def completed_shift(self) -> int:
        """L~(s) = q^{shift s} L(s); shift = f_K(g_K - 1) - (g_k - 1) with f_K = 1, g_k = 0."""
        return self.genus

    def as_urat(self) -> URat:
        return URat.of(self.L)

    def completed(self) -> URat:
        """L~ as a function of u: u^{-g} L(u)."""
        return mono(-self.genus) * self.as_urat()

    def functional_equation_holds(self) -> bool:
        Lt = self.completed()
        # s -> 1 - s is u -> 1/(q u)
        return Lt == Lt.inv_var(self.K.q)


def character_sums(K: QuadExt, dmax: int) -> list[int]:
    """a_d = sum over monic f of degree d of chi_K(f) = (D / f)."""
    R = K.R
    out = []
    for d in range(dmax + 1):
        s = 0
        for f in R.monics(d):
            s += jacobi(R, K.D, f)
        out.append(s)
    return out


def dirichlet_L(K: QuadExt, dmax: int | None = None) -> LData:
    q, g = K.q, K.genus
    cap = 2 * K.degD + 2
    if dmax is None:
        dmax = max(2 * g + 1, K.degD)
        while dmax < cap and q ** (dmax + 1) <= ENUM_BUDGET:
            dmax += 1
    a = character_sums(K, dmax)
    coeffs = []
    for d in range(dmax + 1):
        if K.f_inf == 1:
            coeffs.append(a[d])
        else:
            # effective divisors include multiples of the inert infinite place
            coeffs.append(sum(a[j] * (-1) ** (d - j) for j in range(d + 1)))
    if coeffs[0] != 1:
        raise ArithmeticError("constant coefficient of L is not 1")
    if any(coeffs[2 * g + 1:]):
        raise ArithmeticError("L coefficients do not stabilize at degree 2 g_K")
    L = UPoly(coeffs[: 2 * g + 1])
    ld = LData(K, L, g, dmax)
    if L.deg != 2 * g or not ld.functional_equation_holds():
        raise ArithmeticError("functional equation of L(s, chi_K) fails")
    return ld


def L_value0(ld: LData) -> Fraction:
    v = ld.L(1)
    if v == 0:
        raise ArithmeticError("L(0, chi_K) = 0: not an imaginary extension")
    return v


def L_logderiv0(ld: LData) -> LnQValue:
    """L'(0)/L(0) as a multiple of ln q."""
    return LnQValue(-ld.L.deriv()(1) / L_value0(ld))


def euler_product_truncated(K: QuadExt, B: int) -> UPoly:
    """Product of Euler factors over all places of degree <= B, modulo u^{B+1}."""
    acc = [ONE] + [ZERO] * B
    for v in places_upto(K.R, B) + [INF]:
        s = K.splitting(v)
        if s == Splitting.RAMIFIED:
            continue
        eps = 1 if s == Splitting.SPLIT else -1
        # multiply by 1/(1 - eps u^d) = sum eps^k u^{dk}
        d = v.deg
        new = list(acc)
        for i in range(d, B + 1):
            new[i] += eps * new[i - d]
        acc = new
    return UPoly(acc)
