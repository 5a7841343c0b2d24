"""Random sampling shared by the property tests."""

import random
from math import gcd

from hauptraces.forms import Mat2, QuadForm

LEVELS = (2, 3, 4, 5, 7, 13)


def random_gamma0(rng, N, size=30):
    """A random element of Gamma_0(N) built from a coprime bottom row (c, d) with N | c."""
    while True:
        c = N * rng.randint(-size, size)
        d = rng.randint(-size, size)
        if gcd(c, d) != 1:
            continue
        # a d - b c = 1
        if c == 0:
            return Mat2(d, rng.randint(-size, size), 0, d)
        a = pow(d, -1, abs(c)) if abs(c) > 1 else 0
        b = (a * d - 1) // c
        m = Mat2(a, b, c, d)
        assert m.det == 1
        return m


def random_form(rng, max_abs_D=400, level=None):
    """A random positive definite form, optionally with level | a."""
    while True:
        a = rng.randint(1, 40)
        if level:
            a *= level
        b = rng.randint(-60, 60)
        c = rng.randint(1, 60)
        if b * b - 4 * a * c < 0 and -(b * b - 4 * a * c) <= max_abs_D * (level or 1) * 4:
            return QuadForm(a, b, c)


RNG_SEED = 20240601


def rng(offset=0):
    return random.Random(RNG_SEED + offset)
