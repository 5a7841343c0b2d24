"""Traces of singular moduli and checks of the class number and trace relations.

For n coprime to N the relations come from comparing the divisor of
Phi_n(j_N, j_N) with its factorisation over CM points and cusps:

* class numbers:  sum_r H(r^2-4n, N) + sum_s nu_s = 2 sigma(n)  (n not a square),
  with the extra terms sum_{|r|<2} H(r^2-4, N) + #cusps - 2 on the right when n is a square;
* traces:  sum_r t(r^2-4n, N) + sum_{s != inf} nu_s j_N(s) = 2 or 0 as 4n+1
  is a square or not, and for square n
  sum_r t(r^2-4n, N) + sum_{s != inf} (nu_s - 1) j_N(s) = sum_{|r|<2} t(r^2-4, N);
* factorisation:  Phi_n(X, X) = +-prod_r H_{r^2-4n,N}(X) prod_s (X - j_N(s))^nu_s,
  compared through sixth powers so that the exponents 1/omega become integers.

Prime levels also get the closed form with 2 sum_{d|n} min(d, n/d).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Optional

from .cusps import cusp_equivalent, cusp_set, nu
from .exceptions import NonrealTrace, RoundingUncertified
from .forms import class_number_H, enumerate_classes, omega
from .hauptmodul import MAX_PREC, cusp_value_table, j_eval_cm
from .levels import PRIME_LEVELS, check_level
from .modpoly import build_modular_polynomial, diagonal, diagonal_quotient, poly_eval
from .numtheory import divisor_stats, divisors, euler_phi, square_root_if_perfect
from .qseries import mp_context

FACTOR_TOL = 1e-6
DEFAULT_SAMPLES = (Fraction(-3), Fraction(1, 2), Fraction(17))
THEOREM_GROUPS = ("cor24", "thm11", "thm22", "thm25")


@dataclass(frozen=True)
class ClassFactorData:
    """j_N(tau_Q) (with error bound) and omega for every class of discriminant D."""

    D: int
    N: int
    entries: tuple  # of (form, value, err, omega)

    def __len__(self):
        return len(self.entries)


@dataclass
class VerificationReport:
    level: int
    n: int
    theorem_id: str
    lhs: object = None
    rhs: object = None
    abs_error: object = 0
    status: str = "pass"  # pass | fail | skip
    runtime_ms: float = 0.0
    detail: str = ""
    max_err: Optional[object] = None

    @property
    def passed(self):
        return {"pass": True, "fail": False}.get(self.status)

    def sort_key(self):
        return (self.level, self.n, self.theorem_id)

    def to_json(self):
        from .serialize import encode
        out = {
            "level": self.level,
            "n": self.n,
            "theorem": self.theorem_id,
            "lhs": encode(self.lhs),
            "rhs": encode(self.rhs),
            "abs_error": encode(self.abs_error),
            "pass": self.passed,
            "status": self.status,
            "runtime_ms": round(self.runtime_ms, 3),
            "detail": self.detail,
        }
        if self.max_err is not None:
            out["max_err"] = encode(self.max_err)
        return out


def _r_values(n):
    """Integers r with r^2 < 4n."""
    b = isqrt(4 * n - 1)
    return range(-b, b + 1)


def _finite_cusps(N):
    return [s for s in cusp_set(N) if not cusp_equivalent(s, None, N)]


# ---------------------------------------------------------------------------
# class data and traces


@lru_cache(maxsize=8192)
def class_factor_data(D, N, prec=128):
    check_level(N)
    entries = []
    for Q in sorted(enumerate_classes(D, N)):
        value, err = j_eval_cm(Q.tau, N, prec)
        entries.append((Q, value, err, omega(Q, N)))
    return ClassFactorData(D, N, tuple(entries))


def _trace_sum(D, N, prec):
    ctx = mp_context(prec)
    total = ctx.mpc(0)
    err = ctx.mpf(0)
    for _, value, e, w in class_factor_data(D, N, prec).entries:
        total += value / w
        err += e / w
    u = ctx.ldexp(ctx.mpf(1), -prec)
    err += 4 * u * (abs(total) + 1) * (len(class_factor_data(D, N, prec)) + 1)
    return total, err


@lru_cache(maxsize=8192)
def trace_t(D, N, prec=128):
    """t(D, N) exactly, together with the certified error of the sum before rounding."""
    check_level(N)
    if not enumerate_classes(D, N):
        return Fraction(0), 0
    p = prec
    while True:
        total, err = _trace_sum(D, N, p)
        if 24 * err < 1:
            break
        if p >= MAX_PREC:
            raise RoundingUncertified(f"t({D},{N}): error {err} not below 1/24 at {p} bits")
        p = min(2 * p, MAX_PREC)
    if abs(total.imag) > err:
        raise NonrealTrace(f"t({D},{N}) has imaginary part {total.imag} beyond the error {err}")
    six = int(round(6 * total.real))
    exact = Fraction(six, 6)
    if abs(6 * total.real - six) > 6 * err:
        raise RoundingUncertified(f"t({D},{N}) = {total.real} is not within {err} of {exact}")
    return exact, err


# ---------------------------------------------------------------------------
# class number relations (exact)


def _class_sum(n, N):
    return sum((class_number_H(r * r - 4 * n, N) for r in _r_values(n)), Fraction(0))


def _square_extra_H(N):
    return sum((class_number_H(r * r - 4, N) for r in (-1, 0, 1)), Fraction(0))


def cusp_count(N):
    return sum(euler_phi(gcd(d, N // d)) for d in divisors(N))


def class_number_sides(n, N):
    """(theorem id, lhs, rhs) of the class number relation for this n."""
    lhs = _class_sum(n, N) + sum(nu(s, n, N) for s in cusp_set(N))
    rhs = Fraction(2 * divisor_stats(n).sigma)
    if square_root_if_perfect(n) is not None:
        rhs += _square_extra_H(N) + cusp_count(N) - 2
        return "thm25.2", lhs, rhs
    return "cor24.1", lhs, rhs


def _timed(fn):
    def wrapper(*args, **kwargs):
        t = time.perf_counter()
        rep = fn(*args, **kwargs)
        rep.runtime_ms = (time.perf_counter() - t) * 1000
        return rep
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _coprime_or_skip(n, N, tid):
    if gcd(n, N) != 1:
        return VerificationReport(N, n, tid, status="skip", detail=f"gcd(n, N) = {gcd(n, N)}")
    return None


@_timed
def verify_class_number_relation(n, N):
    check_level(N)
    skip = _coprime_or_skip(n, N, "cor24.1")
    if skip:
        return skip
    tid, lhs, rhs = class_number_sides(n, N)
    return VerificationReport(N, n, tid, lhs, rhs, abs(lhs - rhs), "pass" if lhs == rhs else "fail")


@_timed
def verify_prime_class_number(n, N):
    """Closed form for prime N: sum_r H = 2 sigma(n) - 2 sum min(d, n/d) (+ the square term)."""
    tid = "thm11.1"
    if N not in PRIME_LEVELS:
        return VerificationReport(N, n, tid, status="skip", detail="level is not prime")
    skip = _coprime_or_skip(n, N, tid)
    if skip:
        return skip
    st = divisor_stats(n)
    lhs = _class_sum(n, N)
    rhs = Fraction(2 * st.sigma - 2 * st.sum_min)
    if square_root_if_perfect(n) is not None:
        rhs += _square_extra_H(N)
    return VerificationReport(N, n, tid, lhs, rhs, abs(lhs - rhs), "pass" if lhs == rhs else "fail")


# ---------------------------------------------------------------------------
# trace relations (exact after certified rounding)


def _trace_block(n, N, prec):
    total = Fraction(0)
    worst = 0
    for r in _r_values(n):
        t, e = trace_t(r * r - 4 * n, N, prec)
        total += t
        worst = max(worst, e)
    return total, worst


def trace_sides(n, N, prec=128):
    """(theorem id, lhs, rhs, worst pre-rounding error) of the trace relation."""
    lhs, worst = _trace_block(n, N, prec)
    table = cusp_value_table(N)
    square = square_root_if_perfect(n) is not None
    for s in _finite_cusps(N):
        lhs += (nu(s, n, N) - (1 if square else 0)) * table[s]
    if square:
        rhs, w2 = _trace_block(1, N, prec)
        return "thm25.3", lhs, rhs, max(worst, w2)
    rhs = Fraction(2 if square_root_if_perfect(4 * n + 1) is not None else 0)
    return "cor24.2", lhs, rhs, worst


@_timed
def verify_trace_relation(n, N, prec=128):
    check_level(N)
    skip = _coprime_or_skip(n, N, "cor24.2")
    if skip:
        return skip
    tid, lhs, rhs, worst = trace_sides(n, N, prec)
    rep = VerificationReport(N, n, tid, lhs, rhs, abs(lhs - rhs), "pass" if lhs == rhs else "fail")
    rep.max_err = worst
    return rep


@_timed
def verify_prime_trace(n, N, prec=128):
    """Closed form for prime N: sum_r t = -j_N(0) sum min(d, n/d) + (square / 4n+1 terms)."""
    tid = "thm11.2"
    if N not in PRIME_LEVELS:
        return VerificationReport(N, n, tid, status="skip", detail="level is not prime")
    skip = _coprime_or_skip(n, N, tid)
    if skip:
        return skip
    j0 = Fraction(24, N - 1)
    lhs, worst = _trace_block(n, N, prec)
    rhs = -j0 * divisor_stats(n).sum_min
    if square_root_if_perfect(n) is not None:
        extra, w2 = _trace_block(1, N, prec)
        rhs += j0 + extra
        worst = max(worst, w2)
    elif square_root_if_perfect(4 * n + 1) is not None:
        rhs += 2
    rep = VerificationReport(N, n, tid, lhs, rhs, abs(lhs - rhs), "pass" if lhs == rhs else "fail")
    rep.max_err = worst
    return rep


# ---------------------------------------------------------------------------
# factorisation of the diagonal


def _rhs_sixth_power(ctx, n, N, X, prec, square):
    """Sixth power of the CM-and-cusp product at X, with a relative error estimate."""
    val = ctx.mpc(1)
    min_rel_dist = ctx.inf
    for r in _r_values(n):
        for _, j, _e, w in class_factor_data(r * r - 4 * n, N, prec).entries:
            f = X - j
            val *= f ** (6 // w)
            min_rel_dist = min(min_rel_dist, abs(f) / (1 + abs(X)))
    if square:
        for r in (-1, 0, 1):
            for _, j, _e, w in class_factor_data(r * r - 4, N, prec).entries:
                f = X - j
                val /= f ** (6 // w)
                min_rel_dist = min(min_rel_dist, abs(f) / (1 + abs(X)))
    table = cusp_value_table(N)
    for s in _finite_cusps(N):
        e = nu(s, n, N) - (1 if square else 0)
        f = X - ctx.mpf(table[s].numerator) / table[s].denominator
        if e:
            val *= f ** (6 * e)
            min_rel_dist = min(min_rel_dist, abs(f) / (1 + abs(X)))
    if square:
        val *= n ** 3
    return val, min_rel_dist


def _cauchy_bound(poly):
    lead = abs(poly[-1])
    return 1 + max(Fraction(abs(c), lead) for c in poly[:-1]) if len(poly) > 1 else Fraction(1)


@_timed
def verify_factorization(n, N, X_samples=DEFAULT_SAMPLES, prec=128):
    """Sixth powers of both sides of the diagonal factorisation at the sample points."""
    check_level(N)
    square = square_root_if_perfect(n) is not None
    tid = "thm25.1" if square else "thm22"
    skip = _coprime_or_skip(n, N, tid)
    if skip:
        return skip
    P = build_modular_polynomial(n, N)
    poly = diagonal_quotient(P) if square else diagonal(P)
    st = divisor_stats(n)
    sign = (-1) ** ((st.sigma0 - 1) // 2) if square else (-1) ** (st.sigma0 // 2)
    ctx = mp_context(prec)
    worst_rel = ctx.mpf(0)
    worst_pair = (None, None)
    notes = []
    for X0 in X_samples:
        X = Fraction(X0)
        for _ in range(20):
            lhs_exact = poly_eval(poly, X)
            Xm = ctx.mpf(X.numerator) / X.denominator
            rhs6, dist = _rhs_sixth_power(ctx, n, N, Xm, prec, square)
            if lhs_exact != 0 and dist > ctx.mpf(10) ** -8:
                break
            notes.append(f"X={X} is near a root, resampled")
            X += Fraction(1, 7)
        lhs6 = ctx.mpf(lhs_exact.numerator ** 6) / lhs_exact.denominator ** 6
        rel = abs(lhs6 - rhs6) / max(abs(lhs6), abs(rhs6))
        notes.append(f"X={X}: rel {float(rel):.3g}")
        if rel >= worst_rel:
            worst_rel = rel
            worst_pair = (lhs6, rhs6)
    # sign: beyond every root each factor of the product is positive (or pairs into |.|^2)
    X0 = _cauchy_bound(poly) + 1
    sign_ok = (poly_eval(poly, X0) > 0) == (sign > 0)
    notes.append(f"sign at X={float(X0):.4g}: {'ok' if sign_ok else 'mismatch'}")
    ok = worst_rel < FACTOR_TOL and sign_ok
    rep = VerificationReport(N, n, tid, worst_pair[0], worst_pair[1], worst_rel,
                             "pass" if ok else "fail", detail="; ".join(notes))
    return rep


# ---------------------------------------------------------------------------
# suite


def _instances(n, N, theorems, prec):
    square = square_root_if_perfect(n) is not None
    jobs = []
    if "cor24" in theorems or ("thm25" in theorems and square):
        jobs.append(lambda: verify_class_number_relation(n, N))
        jobs.append(lambda: verify_trace_relation(n, N, prec))
    if "thm11" in theorems:
        jobs.append(lambda: verify_prime_class_number(n, N))
        jobs.append(lambda: verify_prime_trace(n, N, prec))
    if "thm22" in theorems or ("thm25" in theorems and square):
        jobs.append(lambda: verify_factorization(n, N, prec=prec))
    if "thm25" in theorems and not square:
        jobs.append(lambda: VerificationReport(N, n, "thm25", status="skip", detail="n is not a square"))
    return jobs


def run_suite(N_list, n_range, theorems=THEOREM_GROUPS, prec=128):
    """Run the requested checks for every (N, n); failures are recorded, not raised."""
    unknown = set(theorems) - set(THEOREM_GROUPS)
    if unknown:
        raise ValueError(f"unknown theorem groups {sorted(unknown)}")
    reports = {}
    for N in N_list:
        check_level(N)
        for n in n_range:
            if gcd(n, N) != 1:
                for t in theorems:
                    rep = VerificationReport(N, n, t, status="skip", detail=f"gcd(n, N) = {gcd(n, N)}")
                    reports[rep.sort_key()] = rep
                continue
            for job in _instances(n, N, theorems, prec):
                t0 = time.perf_counter()
                try:
                    rep = job()
                except Exception as exc:  # record and keep going
                    rep = VerificationReport(N, n, "error", status="fail",
                                             detail=f"{type(exc).__name__}: {exc}")
                    rep.runtime_ms = (time.perf_counter() - t0) * 1000
                reports.setdefault(rep.sort_key(), rep)
    return sorted(reports.values(), key=VerificationReport.sort_key)
