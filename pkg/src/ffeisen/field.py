"""Finite fields F_q for odd q, with elements encoded as small integers.

An element of F_q = F_p[g]/(f) is stored as the integer sum c_i p^i of its
coefficient vector in the basis 1, g, ..., g^{r-1}.  Prime-field elements
therefore keep their usual residue as code, and equality is structural.
All arithmetic goes through precomputed tables.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product


def factor_prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ValueError(f"q={q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    r, n = 0, q
    while n % p == 0:
        n //= p
        r += 1
    if n != 1:
        raise ValueError(f"q={q} is not a prime power")
    return p, r


def _polymulmod_p(a, b, mod, p):
    # plain coefficient lists over F_p, mod is monic
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    r = len(mod) - 1
    for k in range(len(out) - 1, r - 1, -1):
        c = out[k]
        if c:
            for j in range(r + 1):
                out[k - r + j] = (out[k - r + j] - c * mod[j]) % p
    out = out[:r] + [0] * (r - len(out[:r]))
    return out


def _is_irreducible_p(mod, p):
    # brute force: no root-free factorization check needed for the tiny
    # degrees used here; test divisibility by every monic poly of degree <= r/2
    r = len(mod) - 1
    for d in range(1, r // 2 + 1):
        for tail in product(range(p), repeat=d):
            div = list(tail) + [1]
            rem = list(mod)
            for k in range(len(rem) - 1, d - 1, -1):
                c = rem[k]
                if c:
                    for j in range(d + 1):
                        rem[k - d + j] = (rem[k - d + j] - c * div[j]) % p
            if not any(rem[:d]):
                return False
    return True


def default_modulus(p: int, r: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible of degree r over F_p."""
    for tail in product(range(p), repeat=r):
        mod = list(reversed(tail)) + [1]
        if mod[0] and _is_irreducible_p(mod, p):
            return tuple(mod)
    raise RuntimeError("no irreducible modulus found")


class GF:
    """The field F_q, q odd.  Elements are ints in range(q)."""

    def __init__(self, q: int, modulus: tuple[int, ...] | None = None):
        p, r = factor_prime_power(q)
        if p == 2:
            raise ValueError("q must be odd")
        self.q, self.p, self.r = q, p, r
        if r == 1:
            self.modulus = (0, 1)
        else:
            if modulus is None:
                modulus = default_modulus(p, r)
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != r + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree log_p q")
            if not _is_irreducible_p(list(modulus), p):
                raise ValueError("modulus is reducible")
            self.modulus = modulus
        self._build()

    def _vec(self, x):
        v = []
        for _ in range(self.r):
            v.append(x % self.p)
            x //= self.p
        return v

    def _code(self, v):
        return sum(c * self.p**i for i, c in enumerate(v))

    def _build(self):
        q, p = self.q, self.p
        vecs = [self._vec(x) for x in range(q)]
        self.add_t = [[self._code([(a + b) % p for a, b in zip(vecs[x], vecs[y])])
                       for y in range(q)] for x in range(q)]
        self.neg_t = [self._code([(-a) % p for a in vecs[x]]) for x in range(q)]
        if self.r == 1:
            self.mul_t = [[(x * y) % p for y in range(q)] for x in range(q)]
        else:
            self.mul_t = [[self._code(_polymulmod_p(vecs[x], vecs[y], list(self.modulus), p))
                           for y in range(q)] for x in range(q)]
        self.inv_t = [0] * q
        for x in range(1, q):
            for y in range(1, q):
                if self.mul_t[x][y] == 1:
                    self.inv_t[x] = y
                    break
        self.sqrt_t = [None] * q
        for x in range(q):
            s = self.mul_t[x][x]
            if self.sqrt_t[s] is None:
                self.sqrt_t[s] = x  # smallest code wins: the canonical root
        # quadratic character
        self.eta_t = [0] + [1 if self.sqrt_t[x] is not None else -1 for x in range(1, q)]
        self.minus_one = self.neg_t[1]
        # absolute trace to F_p
        self.tr_t = []
        for x in range(q):
            acc, y = 0, x
            for _ in range(self.r):
                acc = self.add_t[acc][y]
                y = self.pow(y, p)
            self.tr_t.append(acc)  # lands in the prime field, code < p

    # scalar helpers
    def add(self, x, y):
        return self.add_t[x][y]

    def sub(self, x, y):
        return self.add_t[x][self.neg_t[y]]

    def mul(self, x, y):
        return self.mul_t[x][y]

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of 0 in F_q")
        return self.inv_t[x]

    def pow(self, x, n):
        if n < 0:
            x, n = self.inv(x), -n
        acc = 1
        while n:
            if n & 1:
                acc = self.mul_t[acc][x]
            x = self.mul_t[x][x]
            n >>= 1
        return acc

    def from_int(self, n: int) -> int:
        return n % self.p

    def elements(self):
        return range(self.q)

    def nonsquare(self) -> int:
        return next(x for x in range(1, self.q) if self.eta_t[x] == -1)

    def gen_basis(self) -> list[int]:
        """F_p-basis 1, g, ..., g^{r-1} of F_q."""
        return [self.p**i for i in range(self.r)]

    def __eq__(self, other):
        return isinstance(other, GF) and (self.q, self.modulus) == (other.q, other.modulus)

    def __hash__(self):
        return hash((self.q, self.modulus))

    def __repr__(self):
        return f"GF({self.q})" if self.r == 1 else f"GF({self.q}, modulus={self.modulus})"

    def fmt(self, x: int) -> str:
        """Text form: integer for prime fields, polynomial in 'a' otherwise."""
        if self.r == 1:
            return str(x)
        v = self._vec(x)
        terms = []
        for i in range(self.r - 1, -1, -1):
            c = v[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mon = "a" if i == 1 else f"a^{i}"
                terms.append(mon if c == 1 else f"{c}*{mon}")
        return "+".join(terms) if terms else "0"


@lru_cache(maxsize=None)
def get_field(q: int, modulus: tuple[int, ...] | None = None) -> GF:
    return GF(q, modulus)
