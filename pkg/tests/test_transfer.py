from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sturmfsm.cf import as_digits, q_of
from sturmfsm.errors import InsufficientDigitsError
from sturmfsm.spectra import monodromy_from_determinants
from sturmfsm.transfer import (Monodromy, monodromy_direct, monodromy_recursive, potential, product,
                               sturmian_monodromy, trace_polynomial, transfer_matrix)
from sturmfsm.words import sturmian_window


def numpy_product(values, E):
    m = np.eye(2)
    for v in values:
        m = np.array([[E - v, -1.0], [1.0, 0.0]]) @ m
    return m


def test_transfer_matrix_shape():
    assert transfer_matrix(1, 2, 5).as_tuple() == (3, -1, 1, 0)


def test_power_and_product():
    t = transfer_matrix(0, 1, Fraction(1, 3))
    assert (t ** 5).as_tuple() == product([0] * 5, Fraction(1, 3)).as_tuple()
    assert (t ** 0).as_tuple() == Monodromy.identity().as_tuple()
    with pytest.raises(ValueError):
        t ** -1


@pytest.mark.parametrize("digits", ["golden:16", "silver:10", "2,1,3,1,1,4,2,1,1,2,3,1,2,1", "1,1,2,1,1,1,2,1,1,1,3,1,1,1,1"])
@pytest.mark.parametrize("lam, E", [(1.0, 0.0), (0.7, 0.31), (2.5, -1.2)])
def test_recursion_matches_direct_product(digits, lam, E):
    checked = 0
    for m in range(0, min(14, len(as_digits(digits))) + 1):
        length = 1 if m == 0 else q_of(digits, m)
        with np.errstate(over="ignore", invalid="ignore"):
            direct = numpy_product(potential(sturmian_window(digits, 1, length), lam), E)
        if not np.isfinite(direct).all() or np.abs(direct).max() > 1e250:
            break  # entries left the double range; nothing left to compare
        rec = monodromy_recursive(digits, lam, E, m).as_array()
        scale = max(1.0, np.abs(direct).max())
        assert np.abs(rec - direct).max() / scale < 1e-8, m
        checked = m
    assert checked >= 8


def test_recursion_needs_digits():
    with pytest.raises(InsufficientDigitsError):
        monodromy_recursive("golden:5", 1, 0, 6)


def test_exact_fibonacci_traces():
    assert monodromy_recursive("golden:10", 1, 0, 6).trace == 10
    assert monodromy_recursive("golden:10", 1, 0, 7).trace == -37


@pytest.mark.parametrize("lam", [Fraction(1, 2), Fraction(3, 4), 2, Fraction(-5, 3)])
def test_fibonacci_trace_polynomials(lam):
    # trace at E = 0 over 13 and 21 sites, as polynomials in the coupling
    assert monodromy_recursive("golden:10", lam, 0, 6).trace == lam * (18 * lam ** 2 - 8)
    assert monodromy_recursive("golden:10", lam, 0, 7).trace == lam * (-108 * lam ** 4 + 84 * lam ** 2 - 13)


def test_exact_mode_stays_exact():
    m = monodromy_recursive("golden:12", Fraction(1, 3), Fraction(1, 7), 9)
    assert all(isinstance(x, Fraction) for x in m.as_tuple())
    assert m.det == 1


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=1, max_size=10), st.fractions(-3, 3, max_denominator=7))
def test_unimodular(values, E):
    assert product(values, E).det == 1


def test_trace_polynomial_010():
    tp = trace_polynomial("010", 1)
    # tr M(E) = E^3 - E^2 - 3E + 1 for the period (0, 1, 0)
    assert tp.coefficients == (1, -3, -1, 1)
    assert tp.degree == 3
    assert tp(0) == 1


@settings(max_examples=40, deadline=None)
@given(st.text("01", min_size=1, max_size=9), st.integers(-3, 3))
def test_trace_polynomial_agrees_with_product(word, E):
    assert trace_polynomial(word, 2)(E) == monodromy_direct(word, 2, E).trace


def test_trace_polynomial_roots_are_band_edges():
    tp = trace_polynomial("010", 1)
    edges = np.sort(np.concatenate([tp.roots(2.0), tp.roots(-2.0)]))
    s3, s2 = np.sqrt(3), np.sqrt(2)
    assert np.allclose(edges, sorted([-s3, -1, 1 - s2, 1, s3, 1 + s2]))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.fractions(-3, 3, max_denominator=5), min_size=2, max_size=9),
       st.fractions(-2, 2, max_denominator=5))
def test_monodromy_through_principal_minors(values, E):
    assert monodromy_from_determinants(values, E).as_tuple() == product(values, E).as_tuple()


def test_sturmian_monodromy_conventions():
    one = sturmian_monodromy("golden:12", 1, 0, 13, start=1)
    assert one.as_tuple() == monodromy_recursive("golden:12", 1, 0, 6).as_tuple()
    zero = sturmian_monodromy("golden:12", 1, 0, 13, start=0)
    assert zero.trace == monodromy_direct(sturmian_window("golden:12", 0, 13), 1, 0).trace
    with pytest.raises(ValueError):
        sturmian_monodromy("golden:12", 1, 0, 13, start=2)
