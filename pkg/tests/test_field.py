from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quiverhh.errors import FieldMismatchError
from quiverhh.field import QQ, Field, ModP, clear_denominators

primes = st.sampled_from([2, 3, 5, 7, 11, 101])


def test_parse_names():
    assert Field.parse("Q") == QQ
    for t in ("F5", "F 5", "F_5", "GF5"):
        assert Field.parse(t).characteristic == 5
    assert Field.parse("F5").name == "F5"
    with pytest.raises(ValueError):
        Field.parse("R")
    with pytest.raises(ValueError):
        Field(6)


def test_coercion():
    F5 = Field(5)
    assert F5(Fraction(1, 2)) * 2 == F5.one
    assert F5("3/4") == F5(3) / 4
    with pytest.raises(ZeroDivisionError):
        F5(Fraction(1, 5))
    with pytest.raises(FieldMismatchError):
        QQ(F5(1))
    with pytest.raises(FieldMismatchError):
        Field(7)(F5(1))
    assert QQ("2/6") == Fraction(1, 3)


def test_char_two_warns():
    with pytest.warns(UserWarning):
        Field(2).warn_if_char_two()


def test_clear_denominators():
    assert clear_denominators([Fraction(1, 2), Fraction(2, 3), 4]) == 6
    assert clear_denominators([]) == 1


@given(primes, st.integers(), st.integers(), st.integers())
def test_modp_ring_axioms(p, a, b, c):
    x, y, z = ModP(a, p), ModP(b, p), ModP(c, p)
    assert (x + y) * z == x * z + y * z
    assert x - x == ModP(0, p)
    assert (x * y) * z == x * (y * z)


@given(primes, st.integers())
def test_modp_inverse(p, a):
    x = ModP(a, p)
    if a % p:
        assert x * (1 / x) == ModP(1, p)
    else:
        with pytest.raises(ZeroDivisionError):
            1 / x
