"""Transfer matrices, monodromy products and trace polynomials.

Entries stay exact (``int``/``Fraction``) when the coupling, the energy and
the potential are exact, and become floats otherwise.  A product over a
word is ordered with the last site on the left.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Literal, Sequence, Union

import numpy as np

from .cf import DigitsLike, as_digits
from .errors import InsufficientDigitsError
from .words import Word, sturmian_window

Scalar = Union[int, Fraction, float]


@dataclass(frozen=True)
class Monodromy:
    """2x2 matrix ``[[m11, m12], [m21, m22]]``."""

    m11: Scalar
    m12: Scalar
    m21: Scalar
    m22: Scalar

    @classmethod
    def identity(cls) -> "Monodromy":
        return cls(1, 0, 0, 1)

    def __matmul__(self, other: "Monodromy") -> "Monodromy":
        return Monodromy(
            self.m11 * other.m11 + self.m12 * other.m21,
            self.m11 * other.m12 + self.m12 * other.m22,
            self.m21 * other.m11 + self.m22 * other.m21,
            self.m21 * other.m12 + self.m22 * other.m22,
        )

    def __pow__(self, k: int) -> "Monodromy":
        if k < 0:
            raise ValueError("negative powers are not supported")
        result, base = Monodromy.identity(), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    @property
    def trace(self) -> Scalar:
        return self.m11 + self.m22

    @property
    def det(self) -> Scalar:
        return self.m11 * self.m22 - self.m12 * self.m21

    def transpose(self) -> "Monodromy":
        return Monodromy(self.m11, self.m21, self.m12, self.m22)

    def __neg__(self) -> "Monodromy":
        return Monodromy(-self.m11, -self.m12, -self.m21, -self.m22)

    def as_array(self) -> np.ndarray:
        return np.array([[self.m11, self.m12], [self.m21, self.m22]], dtype=float)

    def as_tuple(self) -> tuple:
        return (self.m11, self.m12, self.m21, self.m22)


def exact(x):
    """Keep ints and Fractions exact; turn anything else into a float."""
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, (int, Fraction)):
        return x
    if isinstance(x, Rational):
        return Fraction(x)
    return float(x)


def potential(word: Union[Word, str, Sequence], lam: Scalar = 1) -> list:
    """Site values ``lam * v(n)``; a 0/1 word or explicit numbers."""
    lam = exact(lam)
    if isinstance(word, (Word, str)):
        return [lam * int(c) for c in str(word)]
    return [lam * exact(v) for v in word]


def transfer_matrix(v: Scalar, lam: Scalar = 1, E: Scalar = 0) -> Monodromy:
    """``[[E - lam*v, -1], [1, 0]]``."""
    return Monodromy(exact(E) - exact(lam) * exact(v), -1, 1, 0)


def _site_matrix(value: Scalar, E: Scalar) -> Monodromy:
    return Monodromy(E - value, -1, 1, 0)


def product(values: Iterable[Scalar], E: Scalar = 0) -> Monodromy:
    """``T(last) ... T(first)`` for explicit site values."""
    E = exact(E)
    m = Monodromy.identity()
    for value in values:
        m = _site_matrix(value, E) @ m
    return m


def monodromy_direct(word: Union[Word, str, Sequence], lam: Scalar = 1, E: Scalar = 0) -> Monodromy:
    """Product of transfer matrices over the given word, last site leftmost."""
    values = potential(word, lam)
    if not values:
        raise ValueError("monodromy of an empty word")
    return product(values, E)


def sturmian_monodromy(digits: DigitsLike, lam: Scalar, E: Scalar, length: int,
                       start: Literal[0, 1] = 1, shift: int = 0) -> Monodromy:
    """Direct product over ``length`` sites of the Sturmian word.

    ``start=1`` multiplies ``T(length) ... T(1)`` (aperiodic convention);
    ``start=0`` multiplies ``T(length-1) ... T(0)`` (periodic convention).
    Traces agree for periodic words, entries in general do not.
    """
    if start not in (0, 1):
        raise ValueError("start must be 0 or 1")
    window = sturmian_window(digits, start, length, shift=shift)
    return monodromy_direct(window, lam, E)


def monodromy_recursive(digits: DigitsLike, lam: Scalar, E: Scalar, m: int) -> Monodromy:
    """``M(q_m, E)`` over sites ``1..q_m`` of ``v_alpha`` via ``M_m = M_{m-2} M_{m-1}^{a_m}``.

    The recursion runs on the monodromies of the words ``s_n``; for
    ``n >= 1`` these coincide with the products over ``1..q_n``.  For
    ``m = 0`` the single site ``v(1)`` is returned.
    """
    cf = as_digits(digits)
    if m < 0:
        raise ValueError("m must be >= 0")
    if m > len(cf):
        raise InsufficientDigitsError(f"M(q_{m}) needs {m} digits, only {len(cf)} given")
    lam, E = exact(lam), exact(E)
    one = _site_matrix(lam, E)    # s_{-1} = "1"
    zero = _site_matrix(0 * lam, E)  # s_0 = "0"
    a1 = cf.a(1)
    if m == 0:
        return one if a1 == 1 else zero
    older, newer = zero, one @ zero ** (a1 - 1)
    for n in range(2, m + 1):
        older, newer = newer, older @ newer ** cf.a(n)
    return newer


def _poly_mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_add(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _trim(c: list) -> list:
    while len(c) > 1 and c[-1] == 0:
        c = c[:-1]
    return c


@dataclass(frozen=True)
class TracePolynomial:
    """``tr M(E)`` as a polynomial; ``coefficients[k]`` multiplies ``E**k``."""

    coefficients: tuple

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, E):
        acc = 0 * E
        for c in reversed(self.coefficients):
            acc = acc * E + c
        return acc

    def roots(self, offset: float = 0.0) -> np.ndarray:
        """Real roots of ``tr M(E) - offset`` (numerically; ill-conditioned for high degree)."""
        c = [float(x) for x in self.coefficients]
        c[0] -= offset
        r = np.roots(c[::-1])
        return np.sort(r[np.abs(r.imag) < 1e-9].real)


def trace_polynomial(word: Union[Word, str, Sequence], lam: Scalar = 1) -> TracePolynomial:
    """Coefficients of ``tr M(E)`` from a product of polynomial 2x2 matrices."""
    values = potential(word, lam)
    if not values:
        raise ValueError("trace polynomial of an empty word")
    # entries as coefficient lists in E
    m = [[[1], [0]], [[0], [1]]]
    for v in values:
        t = [[[-v, 1], [-1]], [[1], [0]]]
        m = [[_trim(_poly_add(_poly_mul(t[i][0], m[0][j]), _poly_mul(t[i][1], m[1][j])))
              for j in range(2)] for i in range(2)]
    return TracePolynomial(tuple(_trim(_poly_add(m[0][0], m[1][1]))))


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)

