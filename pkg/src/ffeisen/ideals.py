"""Fractional ideals of O_K = A[sqrt D], class groups and norm-equation counts.

A fractional ideal is stored as L/d where L = A*a + A*(b + c sqrt D) is an
integral lattice in Hermite normal form (a, c monic, deg b < deg a, c | a,
c | b) and d is a monic polynomial, minimal with d*I inside O_K.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .places import Place, ord_at, residue_quadchar, support
from .poly import Fn, Poly, PolyRing
from .quad import QuadExt, Splitting


@dataclass(frozen=True)
class KElem:
    """x + y sqrt D with x, y in k."""

    x: Fn
    y: Fn

    def norm(self, K: QuadExt) -> Fn:
        return self.x * self.x - K.Dfn * self.y * self.y

    def conj(self) -> "KElem":
        return KElem(self.x, -self.y)

    def mul(self, o: "KElem", K: QuadExt) -> "KElem":
        return KElem(self.x * o.x + K.Dfn * self.y * o.y, self.x * o.y + self.y * o.x)


def _hnf(R: PolyRing, vecs):
    """HNF (a, b, c) of the A-module spanned by integral vectors (x, y)."""
    pivot = None
    xs = []
    for v in vecs:
        x, y = v
        if not y:
            if x:
                xs.append(x)
            continue
        if pivot is None:
            pivot = (x, y)
            continue
        px, py = pivot
        # Euclid on the second coordinate
        while y:
            qt, r = R.divmod(py, y)
            nx = R.sub(px, R.mul(qt, x))
            px, py, x, y = x, y, nx, r
        pivot = (px, py)
        if x:
            xs.append(x)
    if pivot is None:
        raise ValueError("generators do not span a rank-2 lattice")
    a = ()
    for x in xs:
        a = R.gcd(a, x) if a else R.monic(x)
    if not a:
        raise ValueError("generators do not span a rank-2 lattice")
    b, c = pivot
    u = R.F.inv(c[-1])
    b, c = R.scale(u, b), R.scale(u, c)
    b = R.mod(b, a)
    return a, b, c


class FracIdeal:
    __slots__ = ("K", "d", "a", "b", "c")

    def __init__(self, K: QuadExt, a: Poly, b: Poly, c: Poly, d: Poly = (1,), check=True):
        R = K.R
        # strip common content against the denominator
        h = R.gcd(R.gcd(R.gcd(a, b) if b else a, c), d)
        if h != R.one:
            a, b, c, d = (R.exact_div(z, h) if z else z for z in (a, b, c, d))
        self.K, self.a, self.b, self.c, self.d = K, a, b, c, d
        if check:
            self._check()

    def _check(self):
        R, K = self.K.R, self.K
        a, b, c = self.a, self.b, self.c
        if not (R.divides(c, a) and (not b or R.divides(c, b))):
            raise ArithmeticError("HNF content condition fails")
        a1, b1 = R.exact_div(a, c), R.exact_div(b, c) if b else ()
        if not R.divides(a1, R.sub(R.mul(b1, b1), K.D)):
            raise ArithmeticError("lattice is not an O_K-module")

    # constructors -----------------------------------------------------------
    @classmethod
    def unit(cls, K):
        R = K.R
        return cls(K, R.one, (), R.one)

    @classmethod
    def from_gens(cls, K: QuadExt, gens: list[KElem]) -> "FracIdeal":
        """The O_K-ideal generated by the given elements."""
        R = K.R
        den = R.one
        for g in gens:
            for z in (g.x, g.y):
                den = R.mul(den, R.exact_div(z.den, R.gcd(den, z.den)))
        sq = KElem(Fn.of(R, 0), Fn.of(R, 1))
        vecs = []
        for g in gens:
            for h in (g, g.mul(sq, K)):
                x = R.exact_div(R.mul(h.x.num, den), h.x.den)
                y = R.exact_div(R.mul(h.y.num, den), h.y.den)
                vecs.append((x, y))
        a, b, c = _hnf(R, vecs)
        return cls(K, a, b, c, den)

    @classmethod
    def principal(cls, K, x: KElem):
        return cls.from_gens(K, [x])

    @classmethod
    def of_base(cls, K, f: Fn):
        """f O_K for f in k^x."""
        R = K.R
        n = R.monic(f.num)
        return cls(K, n, (), n, f.den)

    # basic data -------------------------------------------------------------
    def key(self):
        return (self.d, self.a, self.b, self.c)

    def __eq__(self, o):
        return isinstance(o, FracIdeal) and self.key() == o.key()

    def __hash__(self):
        return hash(self.key())

    def basis(self) -> list[KElem]:
        R = self.K.R
        d = Fn(R, R.one, self.d)
        return [KElem(Fn(R, self.a, self.d), Fn.of(R, 0)),
                KElem(Fn(R, self.b, self.d) if self.b else Fn.of(R, 0), Fn(R, self.c, self.d))]

    def norm(self) -> Fn:
        R = self.K.R
        return Fn(R, R.mul(self.a, self.c), R.mul(self.d, self.d))

    def is_integral(self) -> bool:
        return self.d == self.K.R.one

    def mul(self, o: "FracIdeal") -> "FracIdeal":
        K = self.K
        R = K.R
        D = K.D
        v1 = [(self.a, ()), (self.b, self.c)]
        v2 = [(o.a, ()), (o.b, o.c)]
        vecs = []
        for x1, y1 in v1:
            for x2, y2 in v2:
                vecs.append((R.add(R.mul(x1, x2), R.mul(D, R.mul(y1, y2))),
                             R.add(R.mul(x1, y2), R.mul(x2, y1))))
        a, b, c = _hnf(R, vecs)
        return FracIdeal(K, a, b, c, R.mul(self.d, o.d))

    __mul__ = mul

    def scale(self, f: Fn) -> "FracIdeal":
        R = self.K.R
        if f.is_zero():
            raise ValueError("scaling by zero")
        n = f.num
        u = R.F.inv(n[-1])
        n = R.scale(u, n)
        return FracIdeal(self.K, R.mul(n, self.a), R.mul(n, self.b), R.mul(n, self.c), R.mul(self.d, f.den))

    def conj(self) -> "FracIdeal":
        R = self.K.R
        a, b, c = _hnf(R, [(self.a, ()), (self.b, R.neg(self.c))])
        return FracIdeal(self.K, a, b, c, self.d)

    def inverse(self) -> "FracIdeal":
        return self.conj().scale(Fn.of(self.K.R, 1) / self.norm())

    def pow(self, n: int) -> "FracIdeal":
        base = self if n >= 0 else self.inverse()
        acc = FracIdeal.unit(self.K)
        for _ in range(abs(n)):
            acc = acc * base
        return acc

    def contains(self, x: KElem) -> bool:
        R = self.K.R
        # d*x must be (s a + w b) + w c sqrt D with s, w in A
        X, Y = x.x * Fn.of(R, self.d), x.y * Fn.of(R, self.d)
        if not (X.is_poly() and Y.is_poly()):
            return False
        w, r = R.divmod(Y.num, self.c)
        if r:
            return False
        return not R.mod(R.sub(X.num, R.mul(w, self.b)), self.a)

    def to_json(self):
        R = self.K.R
        return {"den": R.fmt(self.d), "a": R.fmt(self.a), "b": R.fmt(self.b), "c": R.fmt(self.c)}

    def __repr__(self):
        j = self.to_json()
        return f"FracIdeal([{j['a']}, {j['b']} + ({j['c']})sqrtD] / {j['den']})"


# primes ---------------------------------------------------------------------


def sqrt_mod(R: PolyRing, a: Poly, P: Poly) -> Poly | None:
    """Square root of a in F_q[t]/P (Tonelli-Shanks), canonical between +-r."""
    a = R.mod(a, P)
    if not a:
        return ()
    v = Place(P)
    if residue_quadchar(R, v, a) != 1:
        return None
    Q = v.qv(R.q) - 1
    S = 0
    while Q % 2 == 0:
        Q //= 2
        S += 1
    z = None
    for cand in R.all_of_degree_below(len(P) - 1):
        if cand and residue_quadchar(R, v, cand) == -1:
            z = cand
            break
    M, c = S, R.powmod(z, Q, P)
    t = R.powmod(a, Q, P)
    r = R.powmod(a, (Q + 1) // 2, P)
    while t != R.one:
        i, tt = 0, t
        while tt != R.one:
            tt = R.mulmod(tt, tt, P)
            i += 1
        b = c
        for _ in range(M - i - 1):
            b = R.mulmod(b, b, P)
        M = i
        c = R.mulmod(b, b, P)
        t = R.mulmod(t, c, P)
        r = R.mulmod(r, b, P)
    other = R.mod(R.neg(r), P)
    return min(r, other)


def prime_above(K: QuadExt, v: Place) -> FracIdeal:
    """The distinguished prime of O_K over a finite place v."""
    R = K.R
    if v.is_inf:
        raise ValueError("prime_above needs a finite place")
    P = v.P
    s = K.splitting(v)
    if s == Splitting.RAMIFIED:
        return FracIdeal(K, P, (), R.one)
    if s == Splitting.INERT:
        return FracIdeal(K, P, (), P)
    r = sqrt_mod(R, K.D, P)
    return FracIdeal(K, P, r, R.one)


def primes_above(K: QuadExt, v: Place) -> list[FracIdeal]:
    p = prime_above(K, v)
    if K.splitting(v) == Splitting.SPLIT:
        return [p, p.conj()]
    return [p]


# norm equations -----------------------------------------------------------------


def _target(I: FracIdeal, c: Fn):
    R = I.K.R
    if c.is_zero():
        raise ValueError("rep_count needs c != 0")
    T = c * Fn.of(R, R.mul(I.d, I.d))
    if not T.is_poly():
        return None
    return T.num


def _w_bound(I: FracIdeal, T: Poly) -> int:
    """Largest admissible degree of w (v = c w), or -1 when only w = 0 fits."""
    K = I.K
    m = (len(T) - 1 - K.degD)
    if m < 0:
        return -1
    return m // 2 - (len(I.c) - 1)


def _pin_nonsplit(I: FracIdeal, c: Fn) -> FracIdeal | None:
    """The sublattice of I holding every x with N(x) = c, or None when there is none.

    At a prime P over an inert or ramified place, P = conj(P), so ord_P(x) is fixed
    by ord(c); raising I to that exponent drops no solutions and shrinks the search.
    """
    K = I.K
    N = I.norm()
    for v in sorted(set(support(N)) | set(support(c)), key=Place.sort_key):
        if v.is_inf:
            continue
        s = K.splitting(v)
        if s == Splitting.SPLIT:
            continue
        oc, oI = ord_at(v, c), ord_at(v, N)
        if s == Splitting.INERT:
            if oc % 2:
                return None
            want, have = oc // 2, oI // 2
        else:
            want, have = oc, oI
        if have > want:
            return None
        if want > have:
            I = I * prime_above(K, v).pow(want - have)
    return I


def iter_solutions(I: FracIdeal, c: Fn):
    """Yield (u, v) polys with (u + v sqrt D)/d in I and norm c."""
    K = I.K
    R = K.R
    I = _pin_nonsplit(I, c)
    if I is None:
        return
    T = _target(I, c)
    if T is None:
        return
    nw = _w_bound(I, T)
    D = K.D
    ws = [()] if nw < 0 else R.all_of_degree_below(nw + 1)
    for w in ws:
        v = R.mul(I.c, w)
        S = R.add(T, R.mul(D, R.mul(v, v)))
        u = R.sqrt(S)
        if u is None:
            continue
        bw = R.mul(I.b, w)
        for uu in ((u,) if not u else (u, R.neg(u))):
            if not R.mod(R.sub(uu, bw), I.a):
                yield uu, v


def enumeration_size(I: FracIdeal, c) -> int:
    """Number of w candidates iter_solutions would try."""
    c = Fn.of(I.K.R, c)
    I = _pin_nonsplit(I, c)
    if I is None:
        return 0
    T = _target(I, c)
    if T is None:
        return 0
    nw = _w_bound(I, T)
    return 1 if nw < 0 else I.K.q ** (nw + 1)


def rep_count(I: FracIdeal, c) -> int:
    """#{x in I : N(x) = c}."""
    c = Fn.of(I.K.R, c)
    return sum(1 for _ in iter_solutions(I, c))


def rep_count_bruteforce(I: FracIdeal, c) -> int:
    """Enumerate every (u, v) under the anisotropy degree bound; no square roots."""
    K = I.K
    R = K.R
    c = Fn.of(R, c)
    T = _target(I, c)
    if T is None:
        return 0
    degT = len(T) - 1
    nw = _w_bound(I, T)
    ws = [()] if nw < 0 else list(R.all_of_degree_below(nw + 1))
    n = 0
    for w in ws:
        v = R.mul(I.c, w)
        bw = R.mul(I.b, w)
        for u in R.all_of_degree_below(degT // 2 + 1):
            if R.mod(R.sub(u, bw), I.a):
                continue
            if R.sub(R.mul(u, u), R.mul(K.D, R.mul(v, v))) == T:
                n += 1
    return n


def is_principal(I: FracIdeal) -> KElem | None:
    K = I.K
    R = K.R
    nI = I.norm()
    d = Fn.of(R, I.d)
    for lam in range(1, R.q):
        for u, v in iter_solutions(I, nI * Fn.of(R, (lam,))):
            return KElem(Fn.of(R, u) / d, Fn.of(R, v) / d)
    return None


# class group -------------------------------------------------------------------


def reduce_ideal(I: FracIdeal) -> FracIdeal:
    """An integral primitive ideal [a, b + sqrt D] equivalent to I, deg a small."""
    K = I.K
    R = K.R
    a, b = R.exact_div(I.a, I.c), R.exact_div(I.b, I.c) if I.b else ()
    bound = K.genus if K.f_inf == 1 else K.genus + 1
    while len(a) - 1 > bound:
        a = R.monic(R.exact_div(R.sub(K.D, R.mul(b, b)), a))
        b = R.mod(R.neg(b), a)
    return FracIdeal(K, a, b, R.one)


def same_class(I: FracIdeal, J: FracIdeal) -> bool:
    return is_principal(I * J.conj()) is not None


class ClassGroup:
    def __init__(self, K: QuadExt, reps: list[FracIdeal], bound: int):
        self.K, self.reps, self.bound = K, reps, bound
        self.h = len(reps)
        self._keys = {}
        for i, r in enumerate(reps):
            self._keys[r.key()] = i
        self._table = None

    def index(self, I: FracIdeal) -> int:
        J = reduce_ideal(I)
        if J.key() in self._keys:
            if self.K.f_inf == 1:
                return self._keys[J.key()]
        for i, r in enumerate(self.reps):
            if (self.K.f_inf == 1 and J.key() == r.key()) or (self.K.f_inf == 2 and same_class(J, r)):
                self._keys[J.key()] = i
                return i
        raise ArithmeticError("ideal class not found among representatives")

    def table(self):
        if self._table is None:
            self._table = [[self.index(a * b) for b in self.reps] for a in self.reps]
        return self._table


def class_group(K: QuadExt, bound: int | None = None, expected_h: int | None = None) -> ClassGroup:
    """Close the primes of degree <= bound under multiplication.

    With an explicit bound the closure is returned as is, with no reference to L.
    Otherwise the bound grows from g+1 until the count matches f_inf * L(0).
    """
    from .lfunc import L_value0, dirichlet_L
    from .places import places_upto

    def closure(B):
        gens = [reduce_ideal(prime_above(K, v)) for v in places_upto(K.R, max(B, 1))]
        return _closure(K, gens, B)

    if bound is not None:
        return closure(bound)
    if expected_h is None:
        expected_h = int(K.f_inf * L_value0(dirichlet_L(K)))
    last = None
    for B in (K.genus + 1, K.genus + 2):
        cg = last = closure(B)
        if cg.h == expected_h:
            return cg
    raise ArithmeticError(f"class group closure found h={last.h}, L-value predicts {expected_h}")


def _closure(K, gens, B):
    unit = FracIdeal.unit(K)
    reps = [unit]
    cg = ClassGroup(K, reps, B)
    frontier = [unit]
    while frontier:
        nxt = []
        for r in frontier:
            for g in gens:
                J = reduce_ideal(r * g)
                try:
                    cg.index(J)
                except ArithmeticError:
                    reps.append(J)
                    cg = ClassGroup(K, reps, B)
                    nxt.append(J)
        frontier = nxt
    return cg


def class_sum_size(cg: ClassGroup, J: FracIdeal, c) -> int:
    """Total enumeration work of class_sum(cg, J, c)."""
    return sum(enumeration_size(A * A.conj().inverse() * J, c) for A in cg.reps)


def class_sum(cg: ClassGroup, J: FracIdeal, c) -> int:
    """sum over classes [A] of #{x in A conj(A)^{-1} J : N(x) = c}."""
    total = 0
    for A in cg.reps:
        total += rep_count(A * A.conj().inverse() * J, c)
    return total
