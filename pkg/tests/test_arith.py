from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fthreshold.arith import (
    DigitVector,
    digit_at,
    digit_period,
    digit_vector,
    digits,
    format_rational,
    is_power_of,
    mult_order,
    p_valuation,
    parse_rational,
    split,
    truncate,
    truncate_vector,
)
from fthreshold.errors import DomainError, ParseError

primes = st.sampled_from([2, 3, 5, 7, 11])
positive = st.builds(Fraction, st.integers(1, 5000), st.integers(1, 400))


def test_split_integer_uses_nonterminating_expansion():
    assert split(3) == (2, Fraction(1))
    assert split(Fraction(7, 2)) == (3, Fraction(1, 2))


def test_truncate_examples():
    assert truncate(Fraction(2, 137), 7, 3) == Fraction(5, 343)
    assert truncate(1, 5, 0) == 0
    assert truncate(1, 5, 2) == Fraction(24, 25)
    assert truncate(Fraction(2, 3), 2, 2) == Fraction(2, 4)


def test_truncate_rejects_nonpositive():
    with pytest.raises(DomainError):
        truncate(0, 3, 1)
    with pytest.raises(DomainError):
        truncate(Fraction(1, 2), 3, -1)


@given(positive, primes, st.integers(0, 12))
def test_truncation_characterization(alpha, p, e):
    t = truncate(alpha, p, e)
    q = p**e
    assert (t * q).denominator == 1
    assert t < alpha <= t + Fraction(1, q)


@given(positive, primes, st.integers(0, 8))
def test_truncations_are_nested(alpha, p, e):
    assert truncate(alpha, p, e) <= truncate(alpha, p, e + 1)


@given(positive, primes, st.integers(1, 10))
def test_digits_rebuild_truncation(alpha, p, e):
    n, _ = split(alpha)
    dv = digit_vector(alpha, p, e)
    assert n + dv.value() == truncate(alpha, p, e)
    assert [digit_at(alpha, p, s) for s in range(1, e + 1)] == list(dv.digits)


@given(positive, primes)
def test_digit_period(alpha, p):
    pre, per = digit_period(alpha, p)
    stream = digits(alpha, p)
    ds = [next(stream) for _ in range(pre + 3 * per)]
    for s in range(pre, pre + 2 * per):
        assert ds[s] == ds[s + per]


def test_digits_of_one_are_all_top():
    it = digits(1, 7)
    assert [next(it) for _ in range(5)] == [6] * 5


def test_digit_vector_validates():
    with pytest.raises(DomainError):
        DigitVector(3, (0, 3))


def test_mult_order():
    assert mult_order(5, 9) == 6
    assert mult_order(5, 3) == 2
    assert mult_order(2, 1) == 1
    with pytest.raises(DomainError):
        mult_order(5, 10)


@given(primes, st.integers(1, 2000))
def test_mult_order_is_least(p, b):
    if b % p == 0:
        return
    mu = mult_order(p, b)
    assert pow(p, mu, b) == 1 % b
    assert all(pow(p, k, b) != 1 for k in range(1, mu)) or b == 1


def test_valuation_and_powers():
    assert p_valuation(250, 5) == 3
    assert is_power_of(125, 5)
    assert is_power_of(1, 5)
    assert not is_power_of(50, 5)


def test_format_and_parse():
    assert format_rational(Fraction(97, 875)) == "97/875"
    assert format_rational(2) == "2/1"
    assert parse_rational(" 3/9 ") == Fraction(1, 3)
    with pytest.raises(ParseError):
        parse_rational("1/0")


def test_truncate_vector():
    assert truncate_vector((Fraction(1, 2), 1), 2, 1) == (Fraction(0), Fraction(1, 2))
