"""Small exact helpers: divisors, totient, squares and the signed residue system S_p."""

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt


@dataclass(frozen=True)
class DivisorStats:
    n: int
    divisors: tuple
    sigma: int
    sigma0: int
    sum_min: int
    sum_max: int


def divisors(n):
    if n < 1:
        raise ValueError("n must be positive")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@lru_cache(maxsize=None)
def divisor_stats(n):
    divs = tuple(divisors(n))
    return DivisorStats(
        n=n,
        divisors=divs,
        sigma=sum(divs),
        sigma0=len(divs),
        sum_min=sum(min(d, n // d) for d in divs),
        sum_max=sum(max(d, n // d) for d in divs),
    )


def euler_phi(m):
    if m < 1:
        raise ValueError("m must be positive")
    result, k, p = m, m, 2
    while p * p <= k:
        if k % p == 0:
            while k % p == 0:
                k //= p
            result -= result // p
        p += 1
    if k > 1:
        result -= result // k
    return result


def square_root_if_perfect(n):
    """Return sqrt(n) if n is a perfect square, else None."""
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def is_prime(n):
    if n < 2:
        return False
    return all(n % d for d in range(2, isqrt(n) + 1))


def signed_residue(x, m):
    """The representative of x mod m in [-(m-1)//2, m//2]; for odd m this is S_m plus 0."""
    r = x % m
    return r - m if r > m // 2 else r


def sp_inverse(p, x):
    """Return (x^-1, <x>) with both in S_p = {+-1, ..., +-(p-1)/2}."""
    if x % p == 0:
        raise ValueError(f"{x} is not invertible mod {p}")
    return signed_residue(pow(x, -1, p), p), signed_residue(x, p)


def symmetric_residues(p):
    """S_p as a sorted list."""
    h = (p - 1) // 2
    return [k for k in range(-h, h + 1) if k != 0]

