"""Truncated Puiseux series in q with exact rational coefficients.

Besides the general :class:`PuiseuxSeries` this module produces the
expansion of the normalized Hauptmodul

    j_N = (eta(tau)/eta(N tau))^(24/(N-1)) + 24/(N-1) = 1/q + c_1 q + c_2 q^2 + ...

and evaluates series numerically with an error bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, inf

from mpmath.ctx_mp import MPContext

from ._intseries import IntSeries, power_via_miller
from .exceptions import TruncationError
from .levels import check_level, hauptmodul_exponent


def _lcm(a, b):
    return a * b // gcd(a, b)


class PuiseuxSeries:
    """A series sum c_e q^(e/r), known exactly for every exponent below ``trunc``.

    ``terms`` maps the exponent numerator e (in units of 1/r) to a nonzero
    Fraction.  ``trunc`` is a Fraction, or None for an exact (finite) series.
    Instances are immutable and kept in canonical form (r minimal).
    """

    __slots__ = ("r", "terms", "trunc")

    def __init__(self, terms=None, r=1, trunc=None):
        if r < 1:
            raise ValueError("ramification must be positive")
        trunc = None if trunc is None or trunc == inf else Fraction(trunc)
        clean = {}
        for e, c in (terms or {}).items():
            c = Fraction(c)
            if c == 0:
                continue
            if trunc is not None and Fraction(e, r) >= trunc:
                continue
            clean[int(e)] = c
        g = r
        for e in clean:
            g = gcd(g, e)
        if g > 1:
            r //= g
            clean = {e // g: c for e, c in clean.items()}
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "trunc", trunc)

    def __setattr__(self, name, value):
        raise AttributeError("PuiseuxSeries is immutable")

    # constructors -----------------------------------------------------
    @classmethod
    def from_exponents(cls, mapping, trunc=None):
        """Build from {Fraction exponent: coefficient}."""
        mapping = {Fraction(e): c for e, c in mapping.items()}
        r = 1
        for e in mapping:
            r = _lcm(r, e.denominator)
        return cls({int(e * r): c for e, c in mapping.items()}, r, trunc)

    @classmethod
    def constant(cls, c, trunc=None):
        return cls({0: c}, 1, trunc)

    @classmethod
    def q(cls, exponent=1, c=1, trunc=None):
        return cls.from_exponents({Fraction(exponent): c}, trunc)

    @classmethod
    def from_intseries(cls, s):
        return cls({s.val + i: c for i, c in enumerate(s.coeffs) if c}, 1, s.prec)

    # inspection -------------------------------------------------------
    @property
    def trunc_order(self):
        return inf if self.trunc is None else self.trunc

    @property
    def is_exact(self):
        return self.trunc is None

    def items(self):
        """(Fraction exponent, coefficient) pairs in increasing exponent order."""
        return [(Fraction(e, self.r), c) for e, c in sorted(self.terms.items())]

    def coefficient(self, exponent):
        exponent = Fraction(exponent)
        if self.trunc is not None and exponent >= self.trunc:
            raise TruncationError(f"q^{exponent} lies beyond the truncation order {self.trunc}")
        e = exponent * self.r
        if e.denominator != 1:
            return Fraction(0)
        return self.terms.get(int(e), Fraction(0))

    def valuation(self):
        """Lowest exponent with nonzero coefficient; the truncation order for O(q^T) alone."""
        if self.terms:
            return Fraction(min(self.terms), self.r)
        return self.trunc_order

    def __repr__(self):
        parts = []
        for e, c in self.items():
            parts.append(f"{c}*q^({e})" if e else f"{c}")
        if self.trunc is not None:
            parts.append(f"O(q^({self.trunc}))")
        return " + ".join(parts) or "0"

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PuiseuxSeries.constant(other)
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        return (self.r, self.terms, self.trunc) == (other.r, other.terms, other.trunc)

    def __hash__(self):
        return hash((self.r, tuple(sorted(self.terms.items())), self.trunc))

    # arithmetic -------------------------------------------------------
    def _rescaled(self, r):
        k = r // self.r
        return {e * k: c for e, c in self.terms.items()}

    @staticmethod
    def _coerce(x):
        if isinstance(x, PuiseuxSeries):
            return x
        return PuiseuxSeries.constant(x)

    def __add__(self, other):
        other = self._coerce(other)
        r = _lcm(self.r, other.r)
        out = dict(self._rescaled(r))
        for e, c in other._rescaled(r).items():
            out[e] = out.get(e, 0) + c
        return PuiseuxSeries(out, r, _min_trunc(self.trunc, other.trunc))

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxSeries({e: -c for e, c in self.terms.items()}, self.r, self.trunc)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        r = _lcm(self.r, other.r)
        bounds = []
        if other.trunc is not None:
            bounds.append(self.valuation() + other.trunc)
        if self.trunc is not None:
            bounds.append(other.valuation() + self.trunc)
        trunc = min(bounds) if bounds else None
        a, b = self._rescaled(r), other._rescaled(r)
        limit = None if trunc is None else trunc * r
        out = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = e1 + e2
                if limit is not None and e >= limit:
                    continue
                out[e] = out.get(e, 0) + c1 * c2
        return PuiseuxSeries(out, r, trunc)

    __rmul__ = __mul__

    def truncate(self, order):
        order = Fraction(order)
        if self.trunc is not None and order > self.trunc:
            raise TruncationError(f"cannot raise truncation order {self.trunc} to {order}")
        return PuiseuxSeries(self.terms, self.r, order)

    def inverse(self, order=None):
        """Multiplicative inverse.

        An exact series generally has an infinite inverse, so ``order`` must be
        given for it; for a truncated series the valid order is derived.
        """
        if not self.terms:
            raise ZeroDivisionError("inverse of a series with no known nonzero term")
        v = self.valuation()
        lead = self.coefficient(v)
        unit = PuiseuxSeries.q(-v, 1 / lead)
        if self.trunc is None:
            if len(self.terms) == 1:
                return unit
            if order is None:
                raise ValueError("inverse of an exact non-monomial series needs an explicit order")
            rel = Fraction(order) + v
        else:
            rel = self.trunc - v
            if order is not None:
                rel = min(rel, Fraction(order) + v)
        # self = lead q^v (1 + h) with h of positive valuation
        h = (self * unit - 1).truncate(rel)
        acc = power = PuiseuxSeries.constant(1, rel)
        mu = h.valuation()
        steps = 0 if mu == inf or mu >= rel else int(rel / mu) + 1
        for _ in range(steps):
            power = (power * -h).truncate(rel)
            acc = acc + power
        return acc * unit

    def __pow__(self, k):
        if not isinstance(k, int):
            raise TypeError("only integer powers are supported")
        if k < 0:
            return self.inverse() ** (-k)
        result = PuiseuxSeries.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def substitute_power(self, s):
        """f(q) -> f(q^s) for a positive integer s."""
        return PuiseuxSeries({e * s: c for e, c in self.terms.items()}, self.r,
                             None if self.trunc is None else self.trunc * s)


def _min_trunc(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def series_combine(op, f, g_or_k):
    """Apply ``op`` in {'add', 'mul', 'pow', 'truncate'} to ``f`` and its second operand."""
    if op == "add":
        return f + g_or_k
    if op == "mul":
        return f * g_or_k
    if op == "pow":
        return f ** g_or_k
    if op == "truncate":
        return f.truncate(g_or_k)
    raise ValueError(f"unknown series operation {op!r}")


# ---------------------------------------------------------------------------
# Euler product and Hauptmodul


def pentagonal_exponents(limit):
    """Pairs (exponent, sign) of prod(1 - q^n) with exponent < limit, ascending."""
    out = [(0, 1)]
    k = 1
    while True:
        e1 = k * (3 * k - 1) // 2
        if e1 >= limit:
            break
        sign = -1 if k % 2 else 1
        out.append((e1, sign))
        e2 = k * (3 * k + 1) // 2
        if e2 < limit:
            out.append((e2, sign))
        k += 1
    return out


def _euler_intseries(M):
    coeffs = [0] * M
    for e, s in pentagonal_exponents(M):
        coeffs[e] = s
    return IntSeries(0, coeffs, M)


def euler_product_series(M):
    """prod_{n>=1} (1 - q^n), exact below q^M, via Euler's pentagonal number theorem."""
    if M < 0:
        raise ValueError("M must be nonnegative")
    return PuiseuxSeries({e: s for e, s in pentagonal_exponents(M)}, 1, M)


@dataclass(frozen=True)
class HauptmodulSeries:
    """Coefficients c_{-1}, c_0, c_1, ..., c_M of j_N.  ``coeffs[0]`` is c_{-1}."""

    level: int
    coeffs: tuple

    @property
    def M(self):
        return len(self.coeffs) - 2

    def c(self, m):
        if m < -1 or m > self.M:
            raise TruncationError(f"c_{m} not available (have -1..{self.M})")
        return self.coeffs[m + 1]

    def as_dict(self):
        return {m: self.c(m) for m in range(-1, self.M + 1)}

    def to_puiseux(self):
        return PuiseuxSeries({m: c for m, c in self.as_dict().items()}, 1, self.M + 1)

    def to_intseries(self):
        return IntSeries(-1, list(self.coeffs), self.M + 1)


@lru_cache(maxsize=32)
def _hauptmodul_cached(N, M):
    e = hauptmodul_exponent(N)
    L = M + 2  # F = q*(j_N - e) is needed through q^(M+1)
    E = _euler_intseries(L)
    A = power_via_miller(E, e, L)
    Lb = -(-L // N)
    B = power_via_miller(_euler_intseries(Lb), -e, Lb).substitute_power(N).truncate(L)
    F = A * B
    j = F.shift(-1) + e
    return j


def hauptmodul_intseries(N, M):
    """j_N as an :class:`IntSeries`, exact through q^M."""
    check_level(N)
    if M < 1:
        raise ValueError("M must be at least 1")
    return _hauptmodul_cached(N, M)


def hauptmodul_series(N, M):
    j = hauptmodul_intseries(N, M)
    return HauptmodulSeries(N, tuple(j[m] for m in range(-1, M + 1)))


# ---------------------------------------------------------------------------
# numeric evaluation

_CONTEXTS = {}


def mp_context(prec):
    """A private mpmath context at ``prec`` bits (one per precision, reused)."""
    ctx = _CONTEXTS.get(prec)
    if ctx is None:
        ctx = MPContext()
        ctx.prec = prec
        _CONTEXTS[prec] = ctx
    return ctx


def _hauptmodul_tail_bound(ctx, N, M, x):
    """Bound for |sum_{m>M} c_m q^m| at |q| = x.

    q (j_N - e) = E(q)^e E(q^N)^-e is coefficientwise dominated by
    G(y) = prod (1 - y^n)^(-2e) <= exp(2e y/(1-y)^2), and a nonnegative
    series satisfies sum_{i>=K} b_i x^i <= (x/y)^K G(y) for x < y < 1.
    """
    e = hauptmodul_exponent(N)
    y = ctx.sqrt(x)
    G = ctx.exp(2 * e * y / (1 - y) ** 2)
    return (x / y) ** (M + 2) * G / x


def series_eval_complex(f, q0, prec=128):
    """Evaluate a series at q = q0 and return (value, err).

    ``err`` covers the floating-point rounding and the truncation tail.  For a
    :class:`HauptmodulSeries` the tail bound is rigorous (from an explicit
    majorant); for a generic truncated :class:`PuiseuxSeries` the unknown
    coefficients are assumed to grow at most geometrically at the largest rate
    seen among the known ones.  Exact series have no tail.
    """
    if prec < 53:
        raise ValueError("prec must be at least 53 bits")
    ctx = mp_context(prec)
    q0 = ctx.mpc(q0)
    x = abs(q0)
    if x >= 1:
        raise ValueError("|q0| must be < 1 for a convergent evaluation")
    if x == 0:
        raise ValueError("q0 = 0 is not supported (negative exponents)")
    u = ctx.ldexp(ctx.mpf(1), -prec)
    if isinstance(f, HauptmodulSeries):
        items = [(Fraction(m), Fraction(c)) for m, c in f.as_dict().items() if c]
        tail = _hauptmodul_tail_bound(ctx, f.level, f.M, x)
        const = 0
    else:
        items = f.items()
        tail = _generic_tail(ctx, f, x)
        const = 0
    logq = ctx.log(q0)
    total = ctx.mpc(const)
    abs_sum = ctx.mpf(0)
    round_err = ctx.mpf(0)
    for e, c in items:
        if e.denominator == 1 and e >= 0:
            term_pow = q0 ** int(e) if e else ctx.mpc(1)
            rel = (2 * int(e).bit_length() + 4) * u
        else:
            z = ctx.mpf(e.numerator) / e.denominator * logq
            term_pow = ctx.exp(z)
            rel = (4 * abs(z) + 8) * u
        term = ctx.mpf(c.numerator) / c.denominator * term_pow
        mag = abs(term)
        abs_sum += mag
        round_err += mag * (rel + 4 * u)
        total += term
    round_err += 2 * len(items) * u * abs_sum
    err = 2 * round_err + tail
    return total, err


def _generic_tail(ctx, f, x):
    if f.trunc is None:
        return ctx.mpf(0)
    T = f.trunc
    pos = [(e, c) for e, c in f.items() if e > 0]
    if not pos:
        # nothing to extrapolate from: only the O(q^T) term itself
        return x ** ctx.mpf(T) / (1 - x)
    rate = max(ctx.mpf(abs(c)) ** (1 / ctx.mpf(e)) for e, c in pos)
    rate = max(rate, ctx.mpf(1))
    if rate * x >= 1:
        raise ValueError("series coefficients grow too fast to bound the tail at this |q0|")
    step = ctx.mpf(1) / f.r
    return (rate * x) ** ctx.mpf(T) / (1 - (rate * x) ** step)
