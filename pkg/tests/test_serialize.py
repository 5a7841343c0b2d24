import json
from fractions import Fraction

import mpmath

from hauptraces.serialize import approx_complex, dumps, encode, from_rational, rational


def test_rational_pairs():
    assert rational(Fraction(-5, 3)) == [-5, 3]
    assert from_rational([-5, 3]) == Fraction(-5, 3)
    assert encode({"x": Fraction(1, 2), "y": (1, 2)}) == {"x": [1, 2], "y": [1, 2]}


def test_complex_encoding():
    d = approx_complex(mpmath.mpc(-5, 2), mpmath.mpf("1e-30"))
    assert set(d) == {"re", "im", "err"}
    assert mpmath.mpf(d["re"]) == -5 and mpmath.mpf(d["im"]) == 2


def test_round_trip_is_byte_identical():
    doc = {"b": [Fraction(3, 4), None, True], "a": {"z": 1, "k": mpmath.mpf(2) / 3}}
    text = dumps(doc)
    assert dumps(json.loads(text)) == text
