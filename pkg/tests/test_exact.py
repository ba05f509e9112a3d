from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from eulertriples.exact import (
    format_rational,
    height,
    integer_sqrt,
    is_square,
    parse_rational,
    square_root_exact,
)


def test_integer_sqrt_examples():
    assert integer_sqrt(0) == (0, True)
    assert 267 * 267 == 71289
    assert integer_sqrt(71289) == (267, True)
    assert 267 ** 2 < 71290 < 268 ** 2
    assert integer_sqrt(71290) == (267, False)


def test_integer_sqrt_rejects_negative():
    with pytest.raises(ValueError):
        integer_sqrt(-1)


@given(st.integers(min_value=0, max_value=10 ** 60))
def test_integer_sqrt_is_floor(n):
    r, exact = integer_sqrt(n)
    assert r * r <= n < (r + 1) * (r + 1)
    assert exact == (r * r == n)


def test_square_root_exact_examples():
    assert square_root_exact(Fraction(9, 16)) == Fraction(3, 4)
    # bc - 1 for b = 5/4, c = 14645/484
    value = Fraction(5, 4) * Fraction(14645, 484) - 1
    assert value == Fraction(71289, 1936)
    assert square_root_exact(value) == Fraction(267, 44)
    assert square_root_exact(Fraction(-1, 4)) is None
    assert square_root_exact(0) == 0
    assert square_root_exact(Fraction(2, 9)) is None


@given(st.fractions(min_value=0, max_denominator=10 ** 6).filter(lambda x: x.numerator < 10 ** 12),
       st.integers(min_value=1, max_value=10 ** 6))
def test_square_scaling(x, k):
    assert is_square(k * k * x) == is_square(x)


@given(st.fractions(max_denominator=10 ** 9))
def test_witness_soundness(x):
    r = square_root_exact(x)
    if r is not None:
        assert r >= 0 and r * r == x
    r2 = square_root_exact(x * x)
    assert r2 == abs(x)


def test_height_examples():
    assert height(Fraction(689, 400)) == 689
    assert height(1) == 1
    assert height(Fraction(14353373, 13130325)) == 14353373
    assert height(Fraction(-3, 7)) == 7


@given(st.integers(min_value=-10 ** 9, max_value=10 ** 9), st.integers(min_value=1, max_value=10 ** 9),
       st.integers(min_value=1, max_value=1000))
def test_height_invariant_under_rereduction(p, q, k):
    assert height(Fraction(p * k, q * k)) == height(Fraction(p, q))


@pytest.mark.parametrize("text, value", [
    ("5/4", Fraction(5, 4)),
    ("-14645/484", Fraction(-14645, 484)),
    ("12", Fraction(12)),
    ("842490595967154166625/184668498086700979264",
     Fraction(842490595967154166625, 184668498086700979264)),
])
def test_parse_round_trip(text, value):
    assert parse_rational(text) == value
    assert format_rational(value) == text


@pytest.mark.parametrize("bad", ["1/0", "abc", "1.5", "", "1/-2", "--1"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)
