"""The levels N for which Gamma0(N) has genus zero and everything here is supported."""

from .exceptions import UnsupportedLevel

SUPPORTED_LEVELS = (2, 3, 4, 5, 7, 13)
PRIME_LEVELS = (2, 3, 5, 7, 13)


def check_level(N):
    if N not in SUPPORTED_LEVELS:
        raise UnsupportedLevel(f"unsupported level {N}; expected one of {SUPPORTED_LEVELS}")
    return N


def hauptmodul_exponent(N):
    """24/(N-1), the eta-quotient exponent (and the value of j_N at the cusp 0)."""
    check_level(N)
    return 24 // (N - 1)
