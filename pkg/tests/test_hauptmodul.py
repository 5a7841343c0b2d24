from fractions import Fraction

import mpmath
import pytest

from hauptraces.cusps import cusp_equivalent, cusp_set
from hauptraces.exceptions import PoleError, UnsupportedLevel
from hauptraces.forms import CMPoint, QuadForm, act, enumerate_reduced
from hauptraces.hauptmodul import (
    certified,
    cusp_value_table,
    j_at_cusp,
    j_at_cusp_numeric,
    j_eval,
    j_eval_cm,
)

from helpers import LEVELS, random_gamma0, rng


def test_cm_values():
    v, err = j_eval_cm(CMPoint(Fraction(-1, 2), Fraction(1, 4)), 2)
    assert abs(v + 40) <= err and err < 1e-30
    v, err = j_eval_cm(QuadForm(3, 3, 1).tau, 3)
    assert abs(v + 15) <= err
    v, err = j_eval_cm(QuadForm(5, 4, 1).tau, 5)
    assert abs(v - mpmath.mpc(-5, 2)) <= err
    v, err = j_eval_cm(QuadForm(5, -4, 1).tau, 5)
    assert abs(v - mpmath.mpc(-5, -2)) <= err


def test_eval_rejects_bad_input():
    with pytest.raises(ValueError):
        j_eval(complex(0, -1), 2)
    with pytest.raises(ValueError):
        j_eval(complex(0, 1), 2, prec=20)
    with pytest.raises(UnsupportedLevel):
        j_eval(complex(0, 1), 11)


def test_error_bound_is_honest():
    r = rng(31)
    for i in range(40):
        N = LEVELS[i % len(LEVELS)]
        tau = complex(r.uniform(-0.5, 0.5), r.uniform(0.05, 1.5))
        v1, e1 = j_eval(tau, N, 64)
        v2, e2 = j_eval(tau, N, 320)
        assert abs(v1 - v2) <= e1 + e2


def test_certified_escalates():
    tau = QuadForm(13, 1, 1).tau
    value, err, bits = certified(lambda p: j_eval_cm(tau, 13, p), mpmath.mpf(10) ** -60)
    assert err < mpmath.mpf(10) ** -60 and bits > 128


def test_modular_invariance():
    r = rng(32)
    for i in range(100):
        N = LEVELS[i % len(LEVELS)]
        D = -r.choice([3, 4, 7, 8, 11, 15, 19, 20, 24])
        Q = r.choice(sorted(enumerate_reduced(D, N)))
        g = random_gamma0(r, N, size=4)
        v1, e1 = j_eval_cm(Q.tau, N)
        v2, e2 = j_eval_cm(act(Q, g).tau, N)
        assert abs(v1 - v2) <= e1 + e2


def test_conjugate_symmetry():
    for N in LEVELS:
        for Q in enumerate_reduced(-23, N) | enumerate_reduced(-20, N):
            mirror = QuadForm(Q.a, -Q.b, Q.c)
            v1, e1 = j_eval_cm(Q.tau, N)
            v2, e2 = j_eval_cm(mirror.tau, N)
            assert abs(v1 - v2.conjugate()) <= e1 + e2


def test_cusp_exact_values():
    assert j_at_cusp(0, 5) == 6
    assert j_at_cusp(Fraction(1, 2), 4) == -8
    assert j_at_cusp(0, 13) == 2
    for N in LEVELS:
        assert j_at_cusp(0, N) == Fraction(24, N - 1)
        with pytest.raises(PoleError):
            j_at_cusp(None, N)
        with pytest.raises(PoleError):
            j_at_cusp(Fraction(1, N), N)


def test_cusp_table_covers_finite_cusps():
    for N in LEVELS:
        table = cusp_value_table(N)
        finite = [s for s in cusp_set(N) if not cusp_equivalent(s, None, N)]
        assert sorted(table.values) == finite


def test_cusp_numeric_examples():
    v, _ = j_at_cusp_numeric(0, 4, t0=10)
    assert abs(v - 8) < 1e-8
    v, _ = j_at_cusp_numeric(Fraction(1, 2), 4, t0=10)
    assert abs(v + 8) < 1e-8
    v, _ = j_at_cusp_numeric(0, 2, t0=10)
    assert abs(v - 24) < 1e-8


def test_cusp_table_matches_numeric_limits():
    for N in LEVELS:
        for s, exact in cusp_value_table(N).values.items():
            v, _ = j_at_cusp_numeric(s, N, t0=10, prec=128)
            assert abs(v - mpmath.mpf(exact.numerator) / exact.denominator) < 1e-8
