"""Cusps of Gamma_0(N): representatives, equivalence, widths and multiplicities."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .levels import check_level
from .numtheory import divisors


@dataclass(frozen=True, order=True)
class CuspRep:
    """The cusp u/v in lowest terms with v >= 0; infinity is 1/0."""

    u: int
    v: int

    def __post_init__(self):
        u, v = self.u, self.v
        if v < 0 or (v == 0 and u < 0):
            u, v = -u, -v
        g = gcd(u, v)
        if g == 0:
            raise ValueError("0/0 is not a cusp")
        if v == 0:
            u = 1
        object.__setattr__(self, "u", u // g if v else u)
        object.__setattr__(self, "v", v // g)

    @classmethod
    def parse(cls, x):
        """Accept a CuspRep, an int/Fraction, the string 'u/v', 'inf' or None (infinity)."""
        if isinstance(x, CuspRep):
            return x
        if x is None:
            return cls(1, 0)
        if isinstance(x, str):
            s = x.strip().lower()
            if s in ("inf", "infinity", "oo", "1/0", "-1/0"):
                return cls(1, 0)
            if "/" in s:
                u, v = s.split("/")
                return cls(int(u), int(v))
            return cls(int(s), 1)
        x = Fraction(x)
        return cls(x.numerator, x.denominator)

    @property
    def is_infinity(self):
        return self.v == 0

    def __str__(self):
        return "inf" if self.v == 0 else f"{self.u}/{self.v}"


def cusp_modulus(s, N):
    """(v, N/(v, N)), the modulus in the multiplicity congruence; 1 at infinity."""
    if s.v == 0:
        return 1
    g = gcd(s.v, N)
    return gcd(s.v, N // g)


@lru_cache(maxsize=None)
def _cusp_set(N):
    out = []
    for v in divisors(N):
        m = gcd(v, N // v)
        seen = set()
        for u in range(N):
            if gcd(u, N) != 1 or u % m in seen:
                continue
            seen.add(u % m)
            out.append(CuspRep(u, v))
    return tuple(out)


def cusp_set(N):
    """Inequivalent cusps u/v with v | N, 0 <= u < N, (u, N) = 1 and u least per class mod (v, N/v).

    Ordered by v then u; the last entry 1/N is the class of infinity.
    """
    check_level(N)
    return list(_cusp_set(N))


def cusp_equivalent(x, y, N):
    """Gamma_0(N)-equivalence of two cusps.

    u/v ~ u'/v' iff v' = t v (mod N) and u' = t^-1 u (mod (v, N)) for some unit t mod N.
    """
    x, y = CuspRep.parse(x), CuspRep.parse(y)
    g = gcd(x.v, N)
    for t in range(1, N + 1):
        if gcd(t, N) != 1:
            continue
        if (y.v - t * x.v) % N:
            continue
        tinv = pow(t, -1, N) if N > 1 else 0
        if (y.u - tinv * x.u) % g == 0:
            return True
    return False


def normalize_cusp(x, N):
    """The member of cusp_set(N) equivalent to x."""
    for s in cusp_set(N):
        if cusp_equivalent(x, s, N):
            return s
    raise AssertionError(f"no representative found for {x} at level {N}")


def cusp_width(s, N):
    s = CuspRep.parse(s)
    if s.v == 0:
        return 1
    if N % s.v:
        raise ValueError(f"denominator {s.v} does not divide {N}")
    return N // (s.v * gcd(s.v, N // s.v))


def nu(s, n, N):
    """Sum of min(d, n/d) over the divisors d of n with n = d^2 modulo the cusp modulus."""
    if gcd(n, N) != 1:
        raise ValueError(f"n={n} is not coprime to N={N}")
    s = CuspRep.parse(s)
    m = cusp_modulus(s, N)
    return sum(min(d, n // d) for d in divisors(n) if (n - d * d) % m == 0)


def selfmap_cusp_predicate(a, b, s, n, N):
    """Whether (a, b; 0, n/a) maps the cusp s to an equivalent cusp."""
    s = CuspRep.parse(s)
    m = cusp_modulus(s, N)
    if m == 1:
        return True
    d = gcd(a * s.u + b * s.v, n // a)
    return (n - d * d) % m == 0
