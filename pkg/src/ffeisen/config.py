"""Run configuration: field, incoherent space and additive character, in canonical text."""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from functools import cached_property

from .places import ConductorProfile, conductor_profile
from .poly import Fn, parse_fn, ring
from .quad import IncoherentSpace, QuadExt


def _prime_power(q: int) -> tuple[int, int]:
    if q < 3:
        raise ValueError("q must be an odd prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    r, n = 0, q
    while n % p == 0:
        n //= p
        r += 1
    if n != 1 or p == 2:
        raise ValueError("q must be an odd prime power")
    return p, r


def parse_modulus(q: int, text: str | None) -> tuple | None:
    """Coefficients (low to high) of the F_p-polynomial in a defining F_q, or None."""
    p, r = _prime_power(q)
    if text is None or not text.strip():
        return None
    Rp = ring(p)
    m = Rp.parse(text.replace("a", "t"))
    if len(m) - 1 != r or m[-1] != 1 or not Rp.is_irreducible(m):
        raise ValueError(f"modulus must be monic irreducible of degree {r} over F_{p}")
    return tuple(m)


def format_modulus(q: int, m: tuple | None) -> str | None:
    if m is None:
        return None
    p, _ = _prime_power(q)
    return ring(p).fmt(m).replace("t", "a")


@dataclass(frozen=True)
class Config:
    """Everything a computation is parametrized by; text fields are kept canonical."""

    q: int
    D: str
    alpha: str = "1"
    modulus: str | None = None
    epsilon_inf: str | None = None
    twist_c: str | None = None

    @classmethod
    def make(cls, q, D, alpha="1", modulus=None, epsilon_inf=None, twist_c=None) -> "Config":
        """Parse loosely written input and store canonical text."""
        q = int(q)
        mod = parse_modulus(q, modulus)
        R = ring(q, mod)
        D_c = R.fmt(R.parse(D))
        alpha_c = R.fmt(R.parse(alpha))
        eps_c = str(parse_fn(R, epsilon_inf)) if epsilon_inf else None
        c_c = str(parse_fn(R, twist_c)) if twist_c else None
        return cls(q, D_c, alpha_c, format_modulus(q, mod), eps_c, c_c)

    # text form ---------------------------------------------------------------

    def to_text(self) -> str:
        lines = []
        for f in fields(self):
            val = getattr(self, f.name)
            if val is not None:
                lines.append(f"{f.name}={val}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Config":
        kv = parse_keyvalues(text)
        unknown = set(kv) - {f.name for f in fields(cls)}
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        if "q" not in kv or "D" not in kv:
            raise ValueError("config needs q and D")
        return cls.make(**kv)

    def with_(self, **kw) -> "Config":
        return replace(self, **kw)

    # objects -------------------------------------------------------------------

    @cached_property
    def R(self):
        return ring(self.q, parse_modulus(self.q, self.modulus))

    @cached_property
    def K(self) -> QuadExt:
        return QuadExt(self.R, self.R.parse(self.D))

    @cached_property
    def C(self) -> IncoherentSpace:
        eps = parse_fn(self.R, self.epsilon_inf) if self.epsilon_inf else None
        return IncoherentSpace(self.K, self.R.parse(self.alpha), eps)

    @cached_property
    def twist(self) -> Fn:
        if self.twist_c:
            return parse_fn(self.R, self.twist_c)
        from .sweep import standard_twist

        return standard_twist(self.C)

    @cached_property
    def prof(self) -> ConductorProfile:
        return conductor_profile(self.twist)


def parse_keyvalues(text: str) -> dict:
    """key=value lines; blank lines and lines starting with '#' are ignored."""
    out = {}
    for n, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"line {n}: expected key=value")
        k, v = line.split("=", 1)
        out[k.strip()] = v.strip()
    return out
