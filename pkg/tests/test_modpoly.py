import random
from fractions import Fraction
from math import gcd

import mpmath
import pytest

from hauptraces.exceptions import UnsupportedLevel
from hauptraces.hauptmodul import j_eval
from hauptraces.modpoly import (
    build_modular_polynomial,
    conjugate_power_sums,
    coset_representatives,
    diagonal,
    diagonal_quotient,
    x_degree,
)
from hauptraces.numtheory import divisor_stats, divisors, square_root_if_perfect
from hauptraces.qseries import PuiseuxSeries, hauptmodul_series

from helpers import LEVELS


def test_coset_representatives_examples():
    for N in LEVELS:
        assert coset_representatives(1, N) == [(1, 0)]
    assert coset_representatives(3, 2) == [(1, 0), (1, 1), (1, 2), (3, 0)]
    assert coset_representatives(2, 3) == [(1, 0), (1, 1), (2, 0)]
    with pytest.raises(ValueError):
        coset_representatives(0, 2)


def test_representative_count():
    for N in LEVELS:
        for n in range(1, 40):
            expect = sum(d for d in divisors(n) if gcd(n // d, N) == 1)
            assert len(coset_representatives(n, N)) == expect == x_degree(n, N)


def test_power_sum_examples():
    # a = n: the single conjugate j_N(n tau)
    p1 = conjugate_power_sums(3, 2, 3, 1, 20)[0]
    j = hauptmodul_series(2, 20)
    assert p1 == PuiseuxSeries({3 * m: c for m, c in j.as_dict().items() if 3 * m < 20}, 1, 20)
    # a = 1, n = 2, N = 3: p_1 = 2 sum_{m even} c_m q^(m/2)
    p1 = conjugate_power_sums(2, 3, 1, 1, 10)[0]
    j = hauptmodul_series(3, 30)
    for e in range(0, 10):
        assert p1.coefficient(e) == 2 * j.c(2 * e)
    assert p1.coefficient(Fraction(-1, 2)) == 0


def test_phi1():
    for N in LEVELS:
        P = build_modular_polynomial(1, N)
        assert P.coeffs == ((0, -1), (1,))


def test_known_small_polynomial():
    P = build_modular_polynomial(2, 3)
    assert P.coeffs == ((-46224, 2268, 108, 1), (2268, -153), (108, 0, -1), (1,))


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        build_modular_polynomial(2, 4)
    with pytest.raises(UnsupportedLevel):
        build_modular_polynomial(2, 6)
    with pytest.raises(ValueError):
        build_modular_polynomial(2, 3, guard=0)
    with pytest.raises(ValueError):
        diagonal(build_modular_polynomial(4, 3))
    with pytest.raises(ValueError):
        diagonal_quotient(build_modular_polynomial(2, 3))


@pytest.mark.parametrize("N", LEVELS)
def test_integral_and_monic(N):
    for n in range(1, 9):
        if gcd(n, N) != 1:
            continue
        P = build_modular_polynomial(n, N)
        assert P.x_degree == x_degree(n, N)
        assert P.coeffs[-1] == (1,)
        assert all(isinstance(c, int) for row in P.coeffs for c in row)
        # Phi_n(Y, X) = +-Phi_n(X, Y), the sign being - exactly for square n
        sign = -1 if square_root_if_perfect(n) is not None else 1
        assert P.y_degree == P.x_degree
        for i in range(P.x_degree + 1):
            for k in range(P.x_degree + 1):
                assert P.coefficient(i, k) == sign * P.coefficient(k, i)


def _expected_structure(n):
    st = divisor_stats(n)
    deg = st.sum_max
    r = square_root_if_perfect(n)
    if r is None:
        return deg, (-1) ** (st.sigma0 // 2)
    return deg - 1, (-1) ** ((st.sigma0 - 1) // 2) * r


def test_diagonal_examples():
    d = diagonal(build_modular_polynomial(3, 2))
    assert len(d) - 1 == 6 and d[-1] == -1
    d = diagonal(build_modular_polynomial(2, 5))
    assert len(d) - 1 == 4 and d[-1] == -1
    q = diagonal_quotient(build_modular_polynomial(4, 3))
    assert len(q) - 1 == 9 and q[-1] == -2
    assert diagonal_quotient(build_modular_polynomial(1, 5)) == [1]
    q = diagonal_quotient(build_modular_polynomial(9, 2))
    assert len(q) - 1 == 20 and q[-1] == -3


@pytest.mark.parametrize("N", [2, 3, 5])
def test_diagonal_degree_and_leading_coefficient(N):
    for n in range(1, 21):
        if gcd(n, N) != 1:
            continue
        P = build_modular_polynomial(n, N)
        poly = diagonal_quotient(P) if square_root_if_perfect(n) is not None else diagonal(P)
        deg, lead = _expected_structure(n)
        assert (len(poly) - 1, poly[-1]) == (deg, lead), n


def test_root_property():
    rnd = random.Random(41)
    for N in LEVELS:
        for n in range(1, 9):
            if gcd(n, N) != 1:
                continue
            P = build_modular_polynomial(n, N)
            for _ in range(3):
                with mpmath.workprec(256):
                    tau = mpmath.mpc(rnd.uniform(-0.5, 0.5), rnd.uniform(0.4, 1.2))
                    x, _ = j_eval(n * tau, N, 192)
                    y, _ = j_eval(tau, N, 192)
                    val = P.evaluate(x, y)
                    scale = sum(abs(c) * abs(x) ** i * abs(y) ** k
                                for i, row in enumerate(P.coeffs) for k, c in enumerate(row))
                assert abs(val) < 1e-30 * scale, (n, N)


# --- explicit root-of-unity oracle --------------------------------------------------


def _cyclotomic(n):
    """Integer coefficients of Phi_n, lowest degree first."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n):
        if d == n:
            continue
        den = _cyclotomic(d)
        q = [0] * (len(num) - len(den) + 1)
        r = num[:]
        for i in range(len(q) - 1, -1, -1):
            q[i] = r[i + len(den) - 1] // den[-1]
            for j, c in enumerate(den):
                r[i + j] -= q[i] * c
        assert not any(r)
        num = q
    return num


class Cyc:
    """Arithmetic in Z[x]/Phi_n(x), x standing for exp(2 pi i / n)."""

    def __init__(self, n):
        self.n = n
        self.phi = _cyclotomic(n)
        self.deg = len(self.phi) - 1

    def reduce(self, c):
        c = list(c)
        for i in range(len(c) - 1, self.deg - 1, -1):
            t = c[i]
            if t:
                for j, p in enumerate(self.phi):
                    c[i - self.deg + j] -= t * p
        c = c[: self.deg] + [0] * (self.deg - len(c[: self.deg]))
        return tuple(c)

    def zeta(self, k):
        c = [0] * self.n
        c[k % self.n] = 1
        return self.reduce(c)

    def mul(self, a, b):
        out = [0] * (len(a) + len(b))
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return self.reduce(out)

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))


def _series_mul(R, f, g, top):
    out = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = e1 + e2
            if e < top:
                out[e] = R.add(out.get(e, R.zeta(0)[:0] + (0,) * R.deg), R.mul(c1, c2))
    return out


def _direct_product(n, N, top):
    """prod over (a, b) of (X - j_N(alpha_{a,b} tau)) in t = q^(1/n), exponents < top."""
    R = Cyc(n)
    zero = (0,) * R.deg
    one = R.zeta(0)
    M = top + 2
    j = hauptmodul_series(N, M).as_dict()
    poly = [{0: one}]  # list over powers of X of series dicts
    for a, b in coset_representatives(n, N):
        conj = {}
        for m, c in j.items():
            e = a * a * m
            if e < top and c:
                z = R.zeta(a * b * m)
                conj[e] = tuple(c * x for x in z)
        neg = {e: tuple(-x for x in c) for e, c in conj.items()}
        new = [dict() for _ in range(len(poly) + 1)]
        for i, S in enumerate(poly):
            for e, c in S.items():
                new[i + 1][e] = R.add(new[i + 1].get(e, zero), c)
            for e, c in _series_mul(R, S, neg, top).items():
                new[i][e] = R.add(new[i].get(e, zero), c)
        poly = new
    return poly


@pytest.mark.parametrize("n,N", [(2, 3), (3, 2), (2, 5), (4, 3)])
def test_against_explicit_roots_of_unity(n, N):
    P = build_modular_polynomial(n, N)
    pole = sum(a * a for a, _ in coset_representatives(n, N))
    top = pole + 6 * n
    direct = _direct_product(n, N, top)
    # expand P in q: sum_k P[i][k] j^k, valid far beyond the checked range
    j = hauptmodul_series(N, top + P.y_degree + 4).to_puiseux()
    powers = [PuiseuxSeries.constant(1)]
    for _ in range(P.y_degree):
        powers.append(powers[-1] * j)
    # the direct product is exact only for t-exponents below top minus the poles
    # lost when multiplying truncated factors
    safe = top - pole
    for i, row in enumerate(P.coeffs):
        expect = PuiseuxSeries.constant(0)
        for k, c in enumerate(row):
            if c:
                expect = expect + powers[k] * c
        got = direct[i]
        for e in range(-pole, safe):
            c = got.get(e, (0,) * Cyc(n).deg)
            assert all(x == 0 for x in c[1:]), "coefficient not rational"
            assert c[0] == expect.coefficient(Fraction(e, n)), (i, e)
