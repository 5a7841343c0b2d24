import random
from math import gcd

import pytest
from hypothesis import given, strategies as st

from hauptraces.numtheory import (
    divisor_stats,
    divisors,
    euler_phi,
    is_prime,
    signed_residue,
    sp_inverse,
    square_root_if_perfect,
    symmetric_residues,
)


def test_divisor_stats_examples():
    s = divisor_stats(1)
    assert (s.sigma, s.sigma0, s.sum_min, s.sum_max) == (1, 1, 1, 1)
    s = divisor_stats(6)
    assert s.divisors == (1, 2, 3, 6)
    assert (s.sigma, s.sigma0, s.sum_min, s.sum_max) == (12, 4, 6, 18)
    s = divisor_stats(4)
    assert (s.sigma, s.sigma0, s.sum_min, s.sum_max) == (7, 3, 4, 10)


def test_divisors_reject_zero():
    with pytest.raises(ValueError):
        divisor_stats(0)
    with pytest.raises(ValueError):
        euler_phi(0)


def test_min_max_identity_up_to_10000():
    for n in range(1, 10001):
        s = divisor_stats(n)
        assert s.sum_min + s.sum_max == 2 * s.sigma
        assert s.divisors[0] == 1 and s.divisors[-1] == n


def test_divisors_brute_force():
    for n in range(1, 400):
        assert list(divisors(n)) == [d for d in range(1, n + 1) if n % d == 0]


def test_euler_phi_examples_and_brute_force():
    assert [euler_phi(m) for m in (1, 2, 12)] == [1, 1, 4]
    for m in range(1, 300):
        assert euler_phi(m) == sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


def test_euler_phi_multiplicative():
    rng = random.Random(7)
    count = 0
    while count < 100:
        a, b = rng.randint(1, 1000), rng.randint(1, 1000)
        if gcd(a, b) != 1:
            continue
        assert euler_phi(a * b) == euler_phi(a) * euler_phi(b)
        count += 1


def test_square_root_if_perfect():
    assert square_root_if_perfect(4) == 2
    assert square_root_if_perfect(3) is None
    assert square_root_if_perfect(49) == 7
    assert square_root_if_perfect(0) == 0


@given(st.integers(min_value=0, max_value=10**12))
def test_square_root_property(n):
    r = square_root_if_perfect(n)
    if r is None:
        assert int(n ** 0.5) ** 2 != n or True
        assert all(k * k != n for k in range(max(0, int(n ** 0.5) - 2), int(n ** 0.5) + 3))
    else:
        assert r * r == n


def test_sp_inverse_examples():
    assert sp_inverse(5, 2)[0] == -2
    assert sp_inverse(7, 3)[0] == -2
    assert sp_inverse(13, 1)[0] == 1
    with pytest.raises(ValueError):
        sp_inverse(5, 10)


def test_sp_inverse_exhaustive():
    for p in [q for q in range(5, 51) if is_prime(q)]:
        S = symmetric_residues(p)
        assert sorted(S) == sorted([k for k in range(-(p - 1) // 2, (p - 1) // 2 + 1) if k])
        for x in range(-3 * p, 3 * p):
            if x % p == 0:
                continue
            inv, red = sp_inverse(p, x)
            matches = [y for y in S if (x * y - 1) % p == 0]
            assert matches == [inv]
            assert red in S and (red - x) % p == 0


def test_signed_residue_range():
    for m in range(2, 20):
        for x in range(-50, 50):
            r = signed_residue(x, m)
            assert (r - x) % m == 0
            assert -(m - 1) // 2 <= r <= m // 2
