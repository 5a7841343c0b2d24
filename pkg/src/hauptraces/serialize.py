"""Canonical JSON for the command line and reports.

Exact rationals become [num, den], complex approximations become
{"re": str, "im": str, "err": str} with decimal strings, and documents are
dumped with sorted keys so that load/dump round-trips byte for byte.
"""

from __future__ import annotations

import json
from fractions import Fraction

import mpmath

DIGITS = 30


def rational(x):
    x = Fraction(x)
    return [x.numerator, x.denominator]


def from_rational(pair):
    return Fraction(pair[0], pair[1])


def decimal(x, digits=DIGITS):
    return mpmath.nstr(mpmath.mpf(x), digits, strip_zeros=False)


def approx_complex(value, err):
    value = mpmath.mpc(value)
    return {"re": decimal(value.real), "im": decimal(value.imag), "err": decimal(err, 6)}


def encode(obj):
    """Recursively convert Fractions, mp numbers and tuples into JSON-ready objects."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return rational(obj)
    if isinstance(obj, float):
        return decimal(obj)
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    if hasattr(obj, "imag") and hasattr(obj, "real"):
        if obj.imag == 0:
            return decimal(obj.real)
        return {"re": decimal(obj.real), "im": decimal(obj.imag)}
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj):
    return json.dumps(encode(obj), sort_keys=True, indent=2, ensure_ascii=True) + "\n"
