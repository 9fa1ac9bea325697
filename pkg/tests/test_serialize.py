from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from avoidkit.serialize import canonical_json, digest, frac_str, parse_frac, parse_int_set, set_str


@given(st.fractions())
def test_fraction_round_trip(q):
    assert parse_frac(frac_str(q)) == q


def test_fraction_format():
    assert frac_str(Fraction(1, 2)) == "1/2"
    assert parse_frac("3") == 3


@pytest.mark.parametrize("bad", ["", "1/0", "a/b", "0.5.1"])
def test_bad_fractions(bad):
    with pytest.raises(ValueError):
        parse_frac(bad)


def test_int_sets():
    assert parse_int_set("4, 2") == frozenset({2, 4})
    assert set_str(frozenset({4, 2})) == "{2,4}"
    with pytest.raises(ValueError):
        parse_int_set("2,x")


def test_digest_ignores_key_order():
    a = {"x": 1, "y": [1, 2]}
    b = {"y": [1, 2], "x": 1}
    assert canonical_json(a) == canonical_json(b)
    assert digest(a) == digest(b)
    assert digest(a) != digest({"x": 2, "y": [1, 2]})
