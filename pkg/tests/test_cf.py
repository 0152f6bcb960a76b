from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from sturmfsm.cf import (CFDigits, alpha_value, approximants, approximation_gap, as_digits,
                         distance_to_integer, p_q, parse_digits, q_of)
from sturmfsm.errors import InsufficientDigitsError

mpmath.mp.dps = 80
GOLDEN = (mpmath.sqrt(5) - 1) / 2          # [0; 1, 1, 1, ...]
SILVER = mpmath.sqrt(2) - 1                # [0; 2, 2, 2, ...]

digit_lists = st.lists(st.integers(1, 6), min_size=2, max_size=14)


def cf_value(digits) -> Fraction:
    x = Fraction(0)
    for a in reversed(digits):
        x = 1 / (a + x)
    return x


def test_parse_shorthands():
    assert parse_digits("golden:5").digits == (1,) * 5
    assert parse_digits("silver:3").digits == (2, 2, 2)
    assert parse_digits(" 1, 2,3 ").digits == (1, 2, 3)
    for bad in ("bronze:3", "golden:x", "golden:0", "1,a", "0,1", ""):
        with pytest.raises(ValueError):
            parse_digits(bad)


def test_digit_access_is_one_based():
    cf = CFDigits((3, 1, 4))
    assert (cf.a(1), cf.a(3)) == (3, 4)
    with pytest.raises(InsufficientDigitsError):
        cf.a(4)


def test_fibonacci_chain():
    got = [str(a) for a in approximants("golden:8", 8)]
    assert got == ["0/1", "1/1", "1/2", "2/3", "3/5", "5/8", "8/13", "13/21", "21/34"]


def test_seeds():
    assert p_q("1,2", -1) == (1, 0)
    assert p_q("1,2", 0) == (0, 1)


def test_index_beyond_digits():
    with pytest.raises(InsufficientDigitsError):
        q_of("golden:4", 5)


@given(digit_lists)
def test_approximant_is_truncated_expansion(digits):
    for m in range(1, len(digits) + 1):
        p, q = p_q(digits, m)
        assert Fraction(p, q) == cf_value(digits[:m])
        assert Fraction(p, q).denominator == q  # lowest terms


@given(digit_lists)
def test_determinant_identity(digits):
    for m in range(0, len(digits) + 1):
        p, q = p_q(digits, m)
        p1, q1 = p_q(digits, m - 1)
        assert p * q1 - p1 * q == (-1) ** (m + 1)


@pytest.mark.parametrize("alpha, name", [(GOLDEN, "golden:40"), (SILVER, "silver:40")])
def test_approximation_bounds_against_mpmath(alpha, name):
    for m in range(0, 30):
        lo, hi = approximation_gap(name, m)
        p, q = p_q(name, m)
        err = abs(alpha - mpmath.mpf(p) / q)
        assert mpmath.mpf(lo.numerator) / lo.denominator < err < mpmath.mpf(hi.numerator) / hi.denominator
        # alternation: even m below alpha, odd m above
        assert (mpmath.mpf(p) / q < alpha) == (m % 2 == 0)


@pytest.mark.parametrize("alpha, name", [(GOLDEN, "golden:60"), (SILVER, "silver:50")])
def test_best_approximation(alpha, name):
    # ||q_m alpha|| < ||q alpha|| for every 0 < q < q_{m+1}, q != q_m
    for m in range(1, 9):
        qm, qn = q_of(name, m), q_of(name, m + 1)
        d = lambda q: abs(q * alpha - mpmath.nint(q * alpha))
        assert all(d(qm) < d(q) for q in range(1, qn) if q != qm)


@pytest.mark.parametrize("alpha, name", [(GOLDEN, "golden:80"), (SILVER, "silver:60")])
def test_alpha_value_error_bound(alpha, name):
    av = alpha_value(name, bits=256)
    diff = abs(mpmath.mpf(av.value.numerator) / av.value.denominator - alpha)
    assert diff <= mpmath.mpf(av.error_bound.numerator) / av.error_bound.denominator
    assert av.value.denominator <= 2 ** 256


def test_alpha_value_64_bits_golden():
    # 64-bit target: the digit prefix has to be long enough too
    av = alpha_value("golden:60", bits=64)
    assert abs(float(av) - float(GOLDEN)) < 2.0 ** -52
    assert av.error_bound < Fraction(1, 2 ** 63)


def test_alpha_value_rejects_few_bits():
    with pytest.raises(ValueError):
        alpha_value("golden:5", bits=8)


def test_distance_to_integer():
    assert distance_to_integer(Fraction(7, 3)) == Fraction(1, 3)
    assert distance_to_integer(Fraction(-5, 4)) == Fraction(1, 4)
    assert distance_to_integer(Fraction(2)) == 0


@settings(max_examples=50)
@given(digit_lists)
def test_as_digits_roundtrip(digits):
    cf = as_digits(",".join(map(str, digits)))
    assert cf.digits == tuple(digits) and as_digits(cf) is cf
