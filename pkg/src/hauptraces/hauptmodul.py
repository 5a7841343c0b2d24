"""Values of the Hauptmodul j_N at points of the upper half plane and at cusps.

Numerically j_N(tau) = q^-1 (E(q)/E(q^N))^e + e with e = 24/(N-1),
E(x) = prod (1 - x^n) summed through the pentagonal number theorem and
q = exp(2 pi i tau).  Every evaluation returns (value, err) with err an
upper bound on the absolute error, covering series tails and rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cusps import CuspRep, cusp_equivalent, cusp_set, cusp_width, normalize_cusp
from .exceptions import PoleError, PrecisionError
from .forms import CMPoint
from .levels import check_level, hauptmodul_exponent
from .qseries import mp_context

MAX_PREC = 2048


def _euler_sum(ctx, tau, scale):
    """E(exp(2 pi i scale tau)) with an absolute error bound.

    Each term is exp(2 pi i scale e tau) evaluated directly; the unused terms
    are bounded by sum_{m >= e_next} |x|^m = |x|^e_next / (1 - |x|).
    """
    u = ctx.ldexp(ctx.mpf(1), -ctx.prec)
    w = 2 * ctx.pi * ctx.mpc(0, 1) * scale * tau
    x = ctx.exp(w.real)
    if x >= 1:
        raise ValueError("point is not in the upper half plane")
    eps = ctx.ldexp(ctx.mpf(1), -ctx.prec - 8)
    total = ctx.mpc(1)
    abs_sum = ctx.mpf(1)
    round_err = ctx.mpf(0)
    nterms = 1
    k = 1
    while True:
        e1 = k * (3 * k - 1) // 2
        tail = x ** e1 / (1 - x)
        if tail < eps * abs(total) and k > 1:
            break
        sign = -1 if k % 2 else 1
        for e in (e1, e1 + k):
            z = w * e
            t = ctx.exp(z)
            mag = abs(t)
            total += sign * t
            abs_sum += mag
            round_err += mag * (6 * abs(z) + 4) * u
            nterms += 1
        k += 1
    round_err += nterms * u * abs_sum
    return total, round_err + tail


def _bounded_power_rel(r, k):
    """Relative error bound for a k-th power given relative error r of the base."""
    return k * r * (1 + 2 * k * r) if k * r < 0.25 else float("inf")


def j_eval(tau, N, prec=128):
    """j_N at a complex point ``tau`` (Im tau > 0), returning (value, err)."""
    check_level(N)
    if prec < 53:
        raise ValueError("prec must be at least 53 bits")
    ctx = mp_context(prec)
    tau = ctx.mpc(tau)
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half plane")
    k = hauptmodul_exponent(N)
    u = ctx.ldexp(ctx.mpf(1), -prec)
    A, eA = _euler_sum(ctx, tau, 1)
    B, eB = _euler_sum(ctx, tau, N)
    if abs(A) <= eA or abs(B) <= eB:
        return ctx.mpc(0), ctx.inf
    rA = eA / (abs(A) - eA)
    rB = eB / (abs(B) - eB)
    rR = rA + rB + rA * rB + 2 * u
    R = A / B
    P = R ** k
    rP = _bounded_power_rel(rR, k) + k * 4 * u
    z = -2 * ctx.pi * ctx.mpc(0, 1) * tau
    qinv = ctx.exp(z)
    rq = (6 * abs(z) + 4) * u
    main = qinv * P
    rel = rP + rq + rP * rq + 2 * u
    value = main + k
    err = 2 * (abs(main) * rel + abs(value) * u)
    return value, err


def j_eval_cm(tau, N, prec=128):
    """j_N at an exact CM point (a CMPoint or a QuadForm's root)."""
    if not isinstance(tau, CMPoint):
        tau = CMPoint(*tau)
    ctx = mp_context(prec + 16)
    return j_eval(tau.to_complex(ctx), N, prec)


def certified(fn, tol, prec=128, max_prec=MAX_PREC):
    """Call fn(prec) -> (value, err), doubling prec until err < tol."""
    p = prec
    while True:
        value, err = fn(p)
        if err < tol:
            return value, err, p
        if p >= max_prec:
            raise PrecisionError(f"error {err} still above {tol} at {p} bits")
        p = min(2 * p, max_prec)


# ---------------------------------------------------------------------------
# cusps


@dataclass(frozen=True)
class CuspValueTable:
    level: int
    values: dict

    def __getitem__(self, s):
        return self.values[s]


@lru_cache(maxsize=None)
def cusp_value_table(N):
    """Exact j_N at every cusp of cusp_set(N) other than the class of infinity."""
    check_level(N)
    values = {}
    for s in cusp_set(N):
        if cusp_equivalent(s, None, N):
            continue
        values[s] = j_at_cusp(s, N)
    return CuspValueTable(N, values)


def j_at_cusp(s, N):
    """Exact value at a finite cusp: 24/(N-1) on the class of 0, and -8 at 1/2 for N = 4."""
    check_level(N)
    s = CuspRep.parse(s)
    if cusp_equivalent(s, None, N):
        raise PoleError(f"j_{N} has its pole at the cusp {s}")
    if cusp_equivalent(s, 0, N):
        return Fraction(hauptmodul_exponent(N))
    if N == 4 and cusp_equivalent(s, Fraction(1, 2), N):
        return Fraction(-8)
    raise AssertionError(f"cusp {s} of level {N} missing from the value table")


def cusp_chart(s):
    """rho in SL_2(Z) with rho(infinity) = s = u/v."""
    s = CuspRep.parse(s)
    u, v = s.u, s.v
    if v == 0:
        return (1, 0, 0, 1)
    # u x - v y = 1
    x = pow(u, -1, v) if v > 1 else 1
    y = (u * x - 1) // v
    assert u * x - v * y == 1
    return (u, y, v, x)


def j_at_cusp_numeric(s, N, t0=10, prec=128):
    """Approach the cusp s along rho(i t0 h), h the width of s.

    In the local parameter q_h = exp(2 pi i tau/h) this point has
    |q_h| = exp(-2 pi t0), so the gap to the limit is of that size.
    """
    check_level(N)
    s = CuspRep.parse(s)
    if cusp_equivalent(s, None, N):
        raise PoleError(f"j_{N} has its pole at the cusp {s}")
    ctx = mp_context(prec + 16)
    h = cusp_width(normalize_cusp(s, N), N)
    a, b, c, d = cusp_chart(s)
    w = ctx.mpc(0, ctx.mpf(t0) * h)
    tau = (a * w + b) / (c * w + d)
    return j_eval(tau, N, prec)

