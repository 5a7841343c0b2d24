"""Modular polynomials for the Hauptmodul of Gamma_0(N).

Phi_n(X, j_N) is the product of X - j_N(alpha_{a,b} tau) over the matrices
alpha_{a,b} = (a, b; 0, n/a) with a | n, (a, N) = 1, 0 <= b < n/a.  With
d = n/a, j_N(alpha_{a,b} tau) = sum_m c_m zeta_d^{bm} q^{am/d}, so summing a
power of these conjugates over b keeps exactly the exponents with d | m
(times d).  That gives integral power sums without any root-of-unity
arithmetic; Newton's identities turn them into the coefficients of the
block polynomial, and each X-coefficient of the full product is rewritten
as a polynomial in j_N by cancelling poles from the top.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from ._intseries import IntSeries
from .exceptions import NonIntegralCoefficient, NonvanishingRemainder, TruncationError
from .levels import check_level
from .numtheory import divisors, square_root_if_perfect
from .qseries import PuiseuxSeries, hauptmodul_intseries

DEFAULT_GUARD = 10


@dataclass(frozen=True)
class ModularPolynomial:
    """coeffs[i][k] is the coefficient of X^i Y^k, Y standing for j_N."""

    n: int
    N: int
    coeffs: tuple

    @property
    def x_degree(self):
        return len(self.coeffs) - 1

    @property
    def y_degree(self):
        return max((len(row) - 1 for row in self.coeffs if any(row)), default=0)

    def coefficient(self, i, k):
        if i >= len(self.coeffs) or k >= len(self.coeffs[i]):
            return 0
        return self.coeffs[i][k]

    def evaluate(self, x, y):
        total = 0
        for i, row in enumerate(self.coeffs):
            acc = 0
            for k in range(len(row) - 1, -1, -1):
                acc = acc * y + row[k]
            total += acc * x ** i
        return total

    def as_matrix(self):
        """Rectangular list of rows (X-degree major)."""
        width = self.y_degree + 1
        return [list(row) + [0] * (width - len(row)) for row in self.coeffs]


def coset_representatives(n, N):
    if n < 1:
        raise ValueError("n must be positive")
    return [(a, b) for a in divisors(n) if gcd(a, N) == 1 for b in range(n // a)]


def x_degree(n, N):
    return sum(n // a for a in divisors(n) if gcd(a, N) == 1)


# ---------------------------------------------------------------------------
# series plumbing


def _j_powers(N, L, kmax):
    """[j^0, j^1, ..., j^kmax] with j_N exact through q^L."""
    j = hauptmodul_intseries(N, L)
    out = [IntSeries(0, [1])]
    for _ in range(kmax):
        out.append(out[-1] * j)
    return out


def _power_sums(powers, a, d, R):
    """p_1..p_d of the block (a, d), each exact below q^R (or better)."""
    out = []
    for k in range(1, d + 1):
        Jk = powers[k]
        lo = -((k) // d)               # smallest m' with d m' >= -k
        hi = -(-Jk.order // d)         # first m' whose coefficient is unknown
        if a * hi < R:
            raise TruncationError("power sums need more terms of j_N")
        coeffs = [d * Jk[d * m] for m in range(lo, hi)]
        # exponents a*m' spaced by a: spread into a dense list
        dense = [0] * (a * (hi - lo))
        for i, c in enumerate(coeffs):
            dense[a * i] = c
        out.append(IntSeries(a * lo, dense, a * hi))
    return out


def _newton(psums, d):
    """Elementary symmetric functions e_0..e_d from power sums p_1..p_d."""
    e = [IntSeries(0, [1])]
    for k in range(1, d + 1):
        acc = None
        for i in range(1, k + 1):
            term = e[k - i] * psums[i - 1]
            if i % 2 == 0:
                term = -term
            acc = term if acc is None else acc + term
        e.append(acc.exact_div(k))
    return e


def _block_polynomial(powers, a, d, R):
    """Coefficient series of prod_b (X - j_N(alpha_{a,b} tau)), lowest X-degree first."""
    e = _newton(_power_sums(powers, a, d, R), d)
    # X^d - e_1 X^(d-1) + e_2 X^(d-2) - ...
    poly = [None] * (d + 1)
    for k in range(d + 1):
        s = e[k] if k % 2 == 0 else -e[k]
        poly[d - k] = s.truncate(min(s.order, R)) if s.prec is not None else s
    return poly


def _poly_mul(P, Q):
    out = [None] * (len(P) + len(Q) - 1)
    for i, x in enumerate(P):
        for j, y in enumerate(Q):
            t = x * y
            out[i + j] = t if out[i + j] is None else out[i + j] + t
    return out


def _to_j_polynomial(S, jpowers, pole_bound, T):
    """Write S (known below q^T) as sum_k y_k j_N^k; the leftover must vanish below q^T."""
    if S.order < T:
        raise TruncationError("coefficient series too short for the requested guard")
    S = S.truncate(T)
    v = S.valuation()
    top = max(0, -v) if v is not None else 0
    if top > pole_bound:
        raise NonvanishingRemainder(f"pole of order {top} exceeds the bound {pole_bound}")
    ys = [0] * (top + 1)
    for k in range(top, 0, -1):
        c = S[-k]
        if c:
            ys[k] = c
            S = S - jpowers[k].truncate(T).scale(c)
    ys[0] = S[0]
    S = S - ys[0]
    if not S.is_zero_below(T):
        raise NonvanishingRemainder("series is not a polynomial in j_N to the checked order")
    while len(ys) > 1 and ys[-1] == 0:
        ys.pop()
    return ys


def conjugate_power_sums(n, N, a, k_max, M):
    """Power sums p_1..p_k_max over b of j_N(alpha_{a,b} tau), each exact below q^M."""
    check_level(N)
    if n % a or gcd(a, N) != 1:
        raise ValueError("a must be a divisor of n coprime to N")
    d = n // a
    L = d * (-(-M // a)) + k_max + 1
    powers = _j_powers(N, L, k_max)
    out = []
    for k in range(1, k_max + 1):
        Jk = powers[k]
        hi = -(-Jk.order // d)
        lo = -(k // d)
        terms = {a * m: d * Jk[d * m] for m in range(lo, hi)}
        out.append(PuiseuxSeries(terms, 1, min(a * hi, M)))
    return out


@lru_cache(maxsize=256)
def build_modular_polynomial(n, N, guard=DEFAULT_GUARD):
    check_level(N)
    if guard < 1:
        raise ValueError("guard must be at least 1")
    if gcd(n, N) != 1:
        raise ValueError(f"n={n} must be coprime to N={N}")
    blocks = [(a, n // a) for a in divisors(n) if gcd(a, N) == 1]
    pole_bound = sum(a for a, _ in blocks)
    T = guard + 1
    extra = 0
    for _attempt in range(4):
        try:
            # block a must survive multiplication by the other blocks (poles up to
            # pole_bound - a) and Newton steps (a further loss of at most a)
            targets = {a: T + pole_bound + extra for a, _ in blocks}
            L = max(d * (-(-targets[a] // a)) + d + 1 for a, d in blocks)
            jp = _j_powers(N, L, max(d for _, d in blocks))
            P = None
            for a, d in blocks:
                B = _block_polynomial(jp, a, d, targets[a])
                P = B if P is None else _poly_mul(P, B)
            short = _j_powers(N, T + pole_bound, pole_bound)
            rows = [_to_j_polynomial(S, short, pole_bound, T) for S in P]
            break
        except TruncationError as exc:
            if isinstance(exc, (NonIntegralCoefficient, NonvanishingRemainder)):
                raise
            extra = 2 * extra + T
    else:
        raise TruncationError("could not reach the requested q-order")
    if rows[-1] != [1]:
        raise NonvanishingRemainder("product is not monic in X")
    return ModularPolynomial(n, N, tuple(tuple(r) for r in rows))


# ---------------------------------------------------------------------------
# diagonals


def diagonal(P):
    """Phi_n(X, X) as an integer coefficient list (index = power of X)."""
    if square_root_if_perfect(P.n) is not None:
        raise ValueError("Phi_n(X, X) vanishes identically for square n; use diagonal_quotient")
    return _diag(P.coeffs)


def _diag(rows):
    deg = max(i + len(r) - 1 for i, r in enumerate(rows))
    out = [0] * (deg + 1)
    for i, row in enumerate(rows):
        for k, c in enumerate(row):
            out[i + k] += c
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _add_poly(p, q):
    n = max(len(p), len(q))
    return [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)]


def divide_by_x_minus_y(rows):
    """Exact quotient of sum_i rows[i](Y) X^i by (X - Y)."""
    m = len(rows) - 1
    Q = [None] * m
    carry = list(rows[m])
    for i in range(m, 0, -1):
        Q[i - 1] = carry
        carry = _add_poly(list(rows[i - 1]), [0] + carry)
    if any(carry):
        raise ArithmeticError("polynomial is not divisible by X - Y")
    return Q


def diagonal_quotient(P):
    """(Phi_n(X, Y)/(X - Y)) at Y = X, for square n."""
    if square_root_if_perfect(P.n) is None:
        raise ValueError("diagonal_quotient requires a square n")
    return _diag(divide_by_x_minus_y(P.coeffs))


def poly_eval(coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc
