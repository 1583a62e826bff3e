"""Exact arithmetic in Q(zeta_N), N = 4p, and 4th-root-of-unity surds.

Only the oracles need this: character sums take values in Q(zeta_p), and
Weil indices bring in i and sqrt(p).  The embedding is the complex one with
zeta_N = exp(2 pi i / N), so Gauss's sign for quadratic Gauss sums holds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


def _polydiv_int(a, b):
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for k in range(len(a) - 1, len(b) - 2, -1):
        c = a[k] // b[-1]
        out[k - len(b) + 1] = c
        for j, y in enumerate(b):
            a[k - len(b) + 1 + j] -= c * y
    assert not any(a[: len(b) - 1])
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _polydiv_int(num, cyclotomic_poly(d))
    return tuple(num)


class CyclotomicField:
    def __init__(self, p: int):
        self.p = p
        self.N = 4 * p
        self.phi = cyclotomic_poly(self.N)
        self.dim = len(self.phi) - 1

    def reduce(self, coeffs) -> tuple[Fraction, ...]:
        c = [Fraction(x) for x in coeffs]
        for k in range(len(c) - 1, self.dim - 1, -1):
            x = c[k]
            if x:
                for j, y in enumerate(self.phi):
                    c[k - self.dim + j] -= x * y
        c = c[: self.dim] + [Fraction(0)] * (self.dim - len(c[: self.dim]))
        return tuple(c)

    def zeta(self, k: int) -> "Cyc":
        k %= self.N
        v = [0] * (k + 1)
        v[k] = 1
        return Cyc(self, self.reduce(v))

    def rational(self, x) -> "Cyc":
        return Cyc(self, self.reduce([x]))

    def zeta_p(self, j: int) -> "Cyc":
        return self.zeta(4 * j)

    @property
    def i(self) -> "Cyc":
        return self.zeta(self.p)

    def from_counts(self, counts) -> "Cyc":
        """sum_j counts[j] zeta_p^j."""
        v = [0] * self.N
        for j, n in enumerate(counts):
            v[(4 * j) % self.N] += n
        return Cyc(self, self.reduce(v))

    @property
    def sqrt_p(self) -> "Cyc":
        p = self.p
        G = self.from_counts([_legendre_int(a, p) for a in range(p)])
        return G if p % 4 == 1 else self.i * G * self.rational(-1)


def _legendre_int(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


@dataclass(frozen=True)
class Cyc:
    K: CyclotomicField
    v: tuple

    def __add__(self, o):
        o = self._lift(o)
        return Cyc(self.K, tuple(x + y for x, y in zip(self.v, o.v)))

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.K, tuple(-x for x in self.v))

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __mul__(self, o):
        o = self._lift(o)
        out = [Fraction(0)] * (2 * self.K.dim)
        for i, x in enumerate(self.v):
            if x:
                for j, y in enumerate(o.v):
                    if y:
                        out[i + j] += x * y
        return Cyc(self.K, self.K.reduce(out))

    __rmul__ = __mul__

    def _lift(self, o):
        if isinstance(o, Cyc):
            return o
        return self.K.rational(o)

    def __eq__(self, o):
        if not isinstance(o, Cyc):
            o = self.K.rational(o)
        return self.v == o.v

    def __hash__(self):
        return hash(self.v)

    def is_rational(self):
        return not any(self.v[1:])

    def __repr__(self):
        return f"Cyc({[str(x) for x in self.v]})"


@lru_cache(maxsize=None)
def cyclotomic_field(p: int) -> CyclotomicField:
    return CyclotomicField(p)


@dataclass(frozen=True)
class Surd:
    """coef * i^tag * sqrt(p)^half, with tag mod 4 and half in {0, 1}."""

    coef: Fraction
    tag: int = 0
    half: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coef", Fraction(self.coef))
        object.__setattr__(self, "tag", self.tag % 4)
        object.__setattr__(self, "half", self.half % 2)

    def mul(self, o: "Surd", p: int) -> "Surd":
        coef = self.coef * o.coef
        if self.half and o.half:
            coef *= p
        return Surd(coef, self.tag + o.tag, self.half + o.half)

    def is_real_rational(self) -> bool:
        return self.coef == 0 or (self.tag % 2 == 0 and self.half == 0)

    def to_fraction(self) -> Fraction:
        if not self.is_real_rational():
            raise ArithmeticError(f"{self} is not rational")
        return self.coef * (-1 if self.tag == 2 else 1)

    def to_cyc(self, p: int) -> Cyc:
        Kc = cyclotomic_field(p)
        out = Kc.rational(self.coef) * Kc.zeta(self.tag * p)
        if self.half:
            out = out * Kc.sqrt_p
        return out

    def ratio_sign(self, o: "Surd") -> int:
        """s in {+1, -1} with self = s * o, for unit-modulus tags of equal size."""
        if self.half != o.half or abs(self.coef) != abs(o.coef):
            raise ArithmeticError("surds differ beyond a sign")
        d = (self.tag - o.tag) % 4
        s = 1 if self.coef * o.coef > 0 else -1
        if d == 0:
            return s
        if d == 2:
            return -s
        raise ArithmeticError("surds differ by a factor of i")

    def __str__(self):
        parts = [str(self.coef)]
        if self.tag:
            parts.append(["", "i", "(-1)", "(-i)"][self.tag])
        if self.half:
            parts.append("sqrt(p)")
        return "*".join(parts)


def q_power_surd(p: int, r: int, exp2: int) -> Surd:
    """q^{exp2/2} for q = p^r, as a Surd."""
    e = r * exp2  # exponent of p, in halves
    whole, half = divmod(e, 2)
    return Surd(Fraction(p) ** whole, 0, half)
