"""Polynomials over F_q and the rational function field k = F_q(t).

Polynomials are tuples of field codes, lowest degree first, with no
trailing zeros; the zero polynomial is ().  `PolyRing` carries the field
and implements the arithmetic; `Fn` wraps a reduced fraction num/den with
monic denominator and supports the usual operators.
"""

from __future__ import annotations

import random
import re
from itertools import product

from .field import GF, get_field

Poly = tuple


def _strip(c):
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


class PolyRing:
    def __init__(self, F: GF):
        self.F = F
        self.q = F.q
        self.one = (1,)
        self.zero = ()
        self.t = (0, 1)

    # construction ---------------------------------------------------------
    def const(self, c: int) -> Poly:
        return (c,) if c else ()

    def from_ints(self, coeffs) -> Poly:
        return _strip([self.F.from_int(c) for c in coeffs])

    def monomial(self, c, n):
        return _strip([0] * n + [c])

    # basic arithmetic -----------------------------------------------------
    @staticmethod
    def deg(a: Poly) -> int:
        return len(a) - 1

    @staticmethod
    def lc(a: Poly) -> int:
        return a[-1] if a else 0

    def add(self, a, b):
        if len(a) < len(b):
            a, b = b, a
        at = self.F.add_t
        out = list(a)
        for i, y in enumerate(b):
            if y:
                out[i] = at[out[i]][y]
        return _strip(out)

    def neg(self, a):
        nt = self.F.neg_t
        return tuple(nt[x] for x in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def scale(self, c, a):
        if not c:
            return ()
        mt = self.F.mul_t[c]
        return tuple(mt[x] for x in a)

    def mul(self, a, b):
        if not a or not b:
            return ()
        mt, at = self.F.mul_t, self.F.add_t
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                row = mt[x]
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = at[out[i + j]][row[y]]
        return _strip(out)

    def shift(self, a, n):
        return tuple([0] * n + list(a)) if a else ()

    def divmod(self, a, b):
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.F
        db = len(b) - 1
        if len(a) - 1 < db:
            return (), a
        inv = F.inv(b[-1])
        r = list(a)
        qt = [0] * (len(a) - db)
        mt, at, nt = F.mul_t, F.add_t, F.neg_t
        for k in range(len(a) - 1, db - 1, -1):
            c = r[k]
            if c:
                c = mt[c][inv]
                qt[k - db] = c
                nc = nt[c]
                row = mt[nc]
                for j in range(db + 1):
                    if b[j]:
                        r[k - db + j] = at[r[k - db + j]][row[b[j]]]
        return _strip(qt), _strip(r[:db])

    def mod(self, a, b):
        return self.divmod(a, b)[1]

    def exact_div(self, a, b):
        qt, r = self.divmod(a, b)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return qt

    def divides(self, b, a):
        return not self.mod(a, b)

    def monic(self, a):
        if not a:
            return a
        return self.scale(self.F.inv(a[-1]), a)

    def gcd(self, a, b):
        while b:
            a, b = b, self.mod(a, b)
        return self.monic(a)

    def xgcd(self, a, b):
        """Return (g, s, u) with s*a + u*b = g monic."""
        r0, r1 = a, b
        s0, s1 = self.one, ()
        u0, u1 = (), self.one
        while r1:
            qt, r = self.divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, self.sub(s0, self.mul(qt, s1))
            u0, u1 = u1, self.sub(u0, self.mul(qt, u1))
        if not r0:
            return (), (), ()
        c = self.F.inv(r0[-1])
        return self.scale(c, r0), self.scale(c, s0), self.scale(c, u0)

    def inv_mod(self, a, m):
        g, s, _ = self.xgcd(self.mod(a, m), m)
        if g != self.one:
            raise ZeroDivisionError("not invertible modulo m")
        return self.mod(s, m)

    def mulmod(self, a, b, m):
        return self.mod(self.mul(a, b), m)

    def powmod(self, a, n, m):
        acc = self.mod(self.one, m)
        a = self.mod(a, m)
        while n:
            if n & 1:
                acc = self.mulmod(acc, a, m)
            a = self.mulmod(a, a, m)
            n >>= 1
        return acc

    def pow(self, a, n):
        acc = self.one
        while n:
            if n & 1:
                acc = self.mul(acc, a)
            a = self.mul(a, a)
            n >>= 1
        return acc

    def deriv(self, a):
        F = self.F
        out = []
        for i in range(1, len(a)):
            c = 0
            for _ in range(i % F.p):
                c = F.add(c, a[i])
            out.append(c)
        return _strip(out)

    def evaluate(self, a, x):
        acc = 0
        for c in reversed(a):
            acc = self.F.add(self.F.mul(acc, x), c)
        return acc

    # enumeration ----------------------------------------------------------
    def monics(self, d):
        """All monic polynomials of exact degree d."""
        for tail in product(range(self.q), repeat=d):
            yield tuple(tail) + (1,)

    def all_of_degree_below(self, d):
        """All polynomials of degree < d (including zero)."""
        for coeffs in product(range(self.q), repeat=d):
            yield _strip(coeffs)

    # irreducibility & factorization ---------------------------------------
    def is_irreducible(self, P) -> bool:
        if not P:
            raise ValueError("zero polynomial")
        n = len(P) - 1
        if n <= 0:
            return False
        if n == 1:
            return True
        P = self.monic(P)
        x = self.t
        # Rabin's test
        if self.powmod(x, self.q**n, P) != self.mod(x, P):
            return False
        for r in _prime_factors(n):
            h = self.sub(self.powmod(x, self.q ** (n // r), P), x)
            if self.gcd(h, P) != self.one:
                return False
        return True

    def factor(self, a) -> list[tuple[Poly, int]]:
        """Monic irreducible factorization, sorted; the unit is dropped."""
        if not a:
            raise ValueError("cannot factor zero")
        a = self.monic(a)
        out: dict[Poly, int] = {}
        for f, e in self._squarefree(a):
            for g in self._ddf_edf(f):
                out[g] = out.get(g, 0) + e
        return sorted(out.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def _squarefree(self, a):
        # Yun-style with p-th root handling
        res = []
        if len(a) <= 1:
            return res
        d = self.deriv(a)
        if not d:
            return [(f, e * self.F.p) for f, e in self._squarefree(self._pth_root(a))]
        c = self.gcd(a, d)
        w = self.exact_div(a, c)
        i = 1
        while w != self.one:
            y = self.gcd(w, c)
            z = self.exact_div(w, y)
            if z != self.one:
                res.append((z, i))
            i += 1
            w = y
            c = self.exact_div(c, y)
        if c != self.one:
            res += [(f, e * self.F.p) for f, e in self._squarefree(self._pth_root(c))]
        return res

    def _pth_root(self, a):
        F = self.F
        p = F.p
        out = []
        for i in range(0, len(a), p):
            # Frobenius inverse on F_q: x -> x^{q/p}
            out.append(F.pow(a[i], F.q // p))
        return _strip(out)

    def _ddf_edf(self, f):
        if len(f) - 1 == 1:
            return [f]
        res = []
        x = self.t
        h = self.mod(x, f)
        d = 0
        rest = f
        while len(rest) - 1 >= 2 * (d + 1):
            d += 1
            h = self.powmod(h, self.q, rest)
            g = self.gcd(self.sub(h, x), rest)
            if g != self.one:
                res += self._edf(g, d)
                rest = self.exact_div(rest, g)
                h = self.mod(h, rest)
        if rest != self.one:
            res.append(rest)
        return res

    def _edf(self, f, d):
        n = len(f) - 1
        if n == d:
            return [f]
        rng = random.Random(12345 + n)
        while True:
            r = _strip([rng.randrange(self.q) for _ in range(n)])
            if len(r) < 2:
                continue
            g = self.gcd(r, f)
            if g != self.one and g != f:
                break
            e = (self.q**d - 1) // 2
            g = self.gcd(self.sub(self.powmod(r, e, f), self.one), f)
            if g != self.one and g != f:
                break
        return self._edf(g, d) + self._edf(self.exact_div(f, g), d)

    # squares --------------------------------------------------------------
    def sqrt(self, a) -> Poly | None:
        """Square root with canonical leading coefficient, or None."""
        if not a:
            return ()
        n2 = len(a) - 1
        if n2 % 2:
            return None
        F = self.F
        s = F.sqrt_t[a[-1]]
        if s is None or (a[0] and F.sqrt_t[a[0]] is None):
            return None
        n = n2 // 2
        b = [0] * (n + 1)
        b[n] = s
        inv2s = F.inv(F.add(s, s))
        for k in range(n - 1, -1, -1):
            # coefficient of t^{n+k} in b^2 must equal a[n+k]
            acc = 0
            for i in range(k + 1, n + 1):
                j = n + k - i
                if k < j <= n:
                    acc = F.add(acc, F.mul(b[i], b[j]))
            b[k] = F.mul(F.sub(a[n + k], acc), inv2s)
        bp = _strip(b)
        return bp if self.mul(bp, bp) == a else None

    # text -----------------------------------------------------------------
    def fmt(self, a) -> str:
        if not a:
            return "0"
        F = self.F
        terms = []
        for i in range(len(a) - 1, -1, -1):
            c = a[i]
            if not c:
                continue
            cs = F.fmt(c)
            if F.r > 1 and not cs.isdigit():
                cs = f"({cs})"
            if i == 0:
                terms.append(cs)
                continue
            mon = "t" if i == 1 else f"t^{i}"
            terms.append(mon if c == 1 else f"{cs}*{mon}")
        return "+".join(terms)

    def parse(self, text: str) -> Poly:
        return parse_poly(self, text)


def _prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(\d+|[ta]|\^|\*|\+|-|\(|\)|/)")


def _tokens(text):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse {text!r} at position {pos}")
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    """Tiny recursive-descent parser for expressions in t (and a, the
    generator of F_q over F_p) with +, -, *, ^ and juxtaposition."""

    def __init__(self, R: PolyRing, text: str):
        self.R = R
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, tok=None):
        cur = self.peek()
        if tok is not None and cur != tok:
            raise ValueError(f"expected {tok!r}, got {cur!r}")
        self.i += 1
        return cur

    def parse(self):
        v = self.expr()
        if self.peek() is not None:
            raise ValueError(f"trailing input: {self.toks[self.i:]}")
        return v

    def expr(self):
        R = self.R
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        v = self.term()
        if sign < 0:
            v = R.neg(v)
        while self.peek() in ("+", "-"):
            op = self.take()
            w = self.term()
            v = R.add(v, w) if op == "+" else R.sub(v, w)
        return v

    def term(self):
        R = self.R
        v = self.power()
        while self.peek() not in (None, "+", "-", ")", "/"):
            if self.peek() == "*":
                self.take()
            v = R.mul(v, self.power())
        return v

    def power(self):
        v = self.atom()
        if self.peek() == "^":
            self.take()
            n = int(self.take())
            v = self.R.pow(v, n)
        return v

    def atom(self):
        R = self.R
        tok = self.take()
        if tok == "(":
            v = self.expr()
            self.take(")")
            return v
        if tok == "t":
            return R.t
        if tok == "a":
            if R.F.r == 1:
                raise ValueError("'a' only denotes the generator of a non-prime field")
            return R.const(R.F.p)
        if tok is not None and tok.isdigit():
            return R.const(R.F.from_int(int(tok)))
        raise ValueError(f"unexpected token {tok!r}")


def parse_poly(R: PolyRing, text: str) -> Poly:
    return _Parser(R, text).parse()


# ---------------------------------------------------------------------------
# rational functions


class Fn:
    """Element num/den of k = F_q(t); den monic, gcd(num, den) = 1."""

    __slots__ = ("R", "num", "den")

    def __init__(self, R: PolyRing, num: Poly, den: Poly = (1,), _reduced=False):
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            g = R.gcd(num, den)
            if g != R.one:
                num, den = R.exact_div(num, g), R.exact_div(den, g)
            c = den[-1]
            if c != 1:
                ci = R.F.inv(c)
                num, den = R.scale(ci, num), R.scale(ci, den)
        self.R, self.num, self.den = R, num, den

    @classmethod
    def of(cls, R, x):
        if isinstance(x, Fn):
            return x
        if isinstance(x, int):
            return cls(R, R.const(R.F.from_int(x)), R.one, True)
        if isinstance(x, str):
            return parse_fn(R, x)
        return cls(R, tuple(x), R.one, True)

    def is_zero(self):
        return not self.num

    def is_poly(self):
        return self.den == self.R.one

    def __mul__(self, o):
        o = Fn.of(self.R, o)
        R = self.R
        return Fn(R, R.mul(self.num, o.num), R.mul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = Fn.of(self.R, o)
        if o.is_zero():
            raise ZeroDivisionError("division by zero in k")
        R = self.R
        return Fn(R, R.mul(self.num, o.den), R.mul(self.den, o.num))

    def __rtruediv__(self, o):
        return Fn.of(self.R, o) / self

    def __add__(self, o):
        o = Fn.of(self.R, o)
        R = self.R
        return Fn(R, R.add(R.mul(self.num, o.den), R.mul(o.num, self.den)), R.mul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return Fn(self.R, self.R.neg(self.num), self.den, True)

    def __sub__(self, o):
        return self + (-Fn.of(self.R, o))

    def __rsub__(self, o):
        return Fn.of(self.R, o) - self

    def __pow__(self, n: int):
        R = self.R
        if n < 0:
            return (Fn(R, R.one, R.one, True) / self) ** (-n)
        return Fn(R, R.pow(self.num, n), R.pow(self.den, n), True)

    def __eq__(self, o):
        if isinstance(o, int):
            o = Fn.of(self.R, o)
        return isinstance(o, Fn) and self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"Fn({fmt_fn(self)!r})"

    def __str__(self):
        return fmt_fn(self)


def fmt_fn(f: Fn) -> str:
    R = f.R
    if f.is_poly():
        return R.fmt(f.num)
    num = R.fmt(f.num)
    return f"({num})/({R.fmt(f.den)})"


def parse_fn(R: PolyRing, text: str) -> Fn:
    """Parse 'N' or 'N/M' (top-level slash, parentheses optional)."""
    depth = 0
    cut = None
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0:
            if cut is not None:
                raise ValueError("at most one '/' allowed")
            cut = i
    if cut is None:
        return Fn(R, parse_poly(R, text), R.one)
    num, den = parse_poly(R, text[:cut]), parse_poly(R, text[cut + 1:])
    return Fn(R, num, den)


def ring(q: int, modulus=None) -> PolyRing:
    return _ring_cache(q, tuple(modulus) if modulus is not None else None)


_RINGS: dict = {}


def _ring_cache(q, modulus):
    key = (q, modulus)
    if key not in _RINGS:
        _RINGS[key] = PolyRing(get_field(q, modulus))
    return _RINGS[key]
