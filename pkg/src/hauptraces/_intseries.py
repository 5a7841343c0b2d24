"""Dense truncated Laurent series in q with integer coefficients.

This is the workhorse behind the Hauptmodul expansions and the modular
polynomial construction, where series run to a few thousand terms with
coefficients of hundreds of digits.  Products go through Kronecker
substitution (pack into one big integer, multiply with GMP, unpack).

A series stores ``coeffs[i]`` as the coefficient of ``q**(val + i)`` and is
exact for every exponent ``< prec``; ``prec=None`` marks an exact Laurent
polynomial.
"""

from __future__ import annotations

from math import inf

import gmpy2

from .exceptions import NonIntegralCoefficient, TruncationError

_SCHOOLBOOK_CUTOFF = 24


def _schoolbook(a, b, n):
    out = [0] * n
    for i, x in enumerate(a):
        if not x or i >= n:
            continue
        lim = min(len(b), n - i)
        for j in range(lim):
            y = b[j]
            if y:
                out[i + j] += x * y
    return out


def _pack(coeffs, width, half):
    h = half
    raw = b"".join((c + h).to_bytes(width, "little") for c in coeffs)
    offset = int.from_bytes(h.to_bytes(width, "little") * len(coeffs), "little")
    return int.from_bytes(raw, "little") - offset


def mul_coeffs(a, b, n):
    """First ``n`` coefficients of the product of two coefficient lists."""
    if n <= 0 or not a or not b:
        return [0] * max(n, 0)
    a = a[:n]
    b = b[:n]
    if min(len(a), len(b)) <= _SCHOOLBOOK_CUTOFF:
        return _schoolbook(a, b, n)
    ma = max(abs(x) for x in a)
    mb = max(abs(x) for x in b)
    if ma == 0 or mb == 0:
        return [0] * n
    bits = ma.bit_length() + mb.bit_length() + min(len(a), len(b)).bit_length() + 2
    width = (bits + 7) // 8 + 1
    half = 1 << (8 * width - 1)
    A = gmpy2.mpz(_pack(a, width, half))
    B = gmpy2.mpz(_pack(b, width, half))
    m = min(n, len(a) + len(b) - 1)
    P = int(A * B)
    P += int.from_bytes(half.to_bytes(width, "little") * m, "little")
    nbytes = width * m
    raw = (P & ((1 << (8 * nbytes)) - 1)).to_bytes(nbytes, "little")
    out = [
        int.from_bytes(raw[i * width:(i + 1) * width], "little") - half
        for i in range(m)
    ]
    return out + [0] * (n - m)


class IntSeries:
    __slots__ = ("val", "coeffs", "prec")

    def __init__(self, val, coeffs, prec=None):
        self.val = val
        self.coeffs = list(coeffs)
        self.prec = prec
        if prec is not None:
            n = prec - val
            if n < 0:
                self.val, self.coeffs = prec, []
            elif len(self.coeffs) > n:
                del self.coeffs[n:]
            else:
                self.coeffs.extend([0] * (n - len(self.coeffs)))

    @classmethod
    def monomial(cls, exponent, c=1):
        return cls(exponent, [c])

    @property
    def order(self):
        return inf if self.prec is None else self.prec

    def __repr__(self):
        terms = [f"{c}*q^{self.val + i}" for i, c in enumerate(self.coeffs) if c]
        body = " + ".join(terms[:6]) or "0"
        tail = "" if self.prec is None else f" + O(q^{self.prec})"
        return f"IntSeries({body}{' + ...' if len(terms) > 6 else ''}{tail})"

    def __getitem__(self, e):
        if self.prec is not None and e >= self.prec:
            raise TruncationError(f"coefficient of q^{e} requested, series known below q^{self.prec}")
        i = e - self.val
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def valuation(self):
        """Exponent of the first nonzero coefficient, or None for the zero series."""
        for i, c in enumerate(self.coeffs):
            if c:
                return self.val + i
        return None

    def truncate(self, prec):
        if self.prec is not None and prec > self.prec:
            raise TruncationError(f"cannot extend precision from {self.prec} to {prec}")
        return IntSeries(self.val, self.coeffs, prec)

    def __add__(self, other):
        if isinstance(other, int):
            other = IntSeries(0, [other])
        prec = _min_prec(self.prec, other.prec)
        val = min(self.val, other.val)
        hi = max(self.val + len(self.coeffs), other.val + len(other.coeffs))
        if prec is not None:
            hi = min(hi, prec)
        out = [0] * max(hi - val, 0)
        for s in (self, other):
            off = s.val - val
            for i, c in enumerate(s.coeffs):
                if c and off + i < len(out):
                    out[off + i] += c
        return IntSeries(val, out, prec)

    __radd__ = __add__

    def __neg__(self):
        return IntSeries(self.val, [-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return IntSeries(self.val, [c * x for x in self.coeffs], self.prec)

    def exact_div(self, k):
        out = []
        for x in self.coeffs:
            qt, r = divmod(x, k)
            if r:
                raise NonIntegralCoefficient(f"coefficient {x} not divisible by {k}")
            out.append(qt)
        return IntSeries(self.val, out, self.prec)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        val = self.val + other.val
        cands = []
        if other.prec is not None:
            cands.append(self.val + other.prec)
        if self.prec is not None:
            cands.append(other.val + self.prec)
        if cands:
            prec = min(cands)
            n = prec - val
        else:
            prec = None
            n = len(self.coeffs) + len(other.coeffs) - 1
        return IntSeries(val, mul_coeffs(self.coeffs, other.coeffs, max(n, 0)), prec)

    __rmul__ = __mul__

    def substitute_power(self, s):
        """f(q) -> f(q^s)."""
        out = [0] * ((len(self.coeffs) - 1) * s + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[i * s] = c
        # unknown terms of f start at q^prec, so f(q^s) is exact below q^(s*prec)
        return IntSeries(self.val * s, out, None if self.prec is None else s * self.prec)

    def shift(self, e):
        """Multiply by q^e."""
        return IntSeries(self.val + e, self.coeffs, None if self.prec is None else self.prec + e)

    def is_zero_below(self, e):
        return all(c == 0 for i, c in enumerate(self.coeffs) if self.val + i < e)


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def power_via_miller(f, alpha, prec):
    """f**alpha for f = 1 + O(q) with integer coefficients and any integer alpha.

    Uses the J.C.P. Miller recurrence n*g_n = sum_k ((alpha+1)k - n) f_k g_{n-k},
    which only touches the nonzero coefficients of f (cheap for sparse f such
    as the pentagonal series).
    """
    if f.val != 0 or f[0] != 1:
        raise ValueError("f must start with constant term 1")
    fprec = f.order
    if prec > fprec:
        raise TruncationError("requested precision exceeds that of f")
    nz = [(k, f[k]) for k in range(1, prec) if f[k]]
    g = [1] + [0] * (prec - 1)
    for n in range(1, prec):
        acc = 0
        for k, fk in nz:
            if k > n:
                break
            acc += ((alpha + 1) * k - n) * fk * g[n - k]
        qt, r = divmod(acc, n)
        if r:
            raise NonIntegralCoefficient("Miller recurrence left a remainder")
        g[n] = qt
    return IntSeries(0, g, prec)
