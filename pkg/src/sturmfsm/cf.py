"""Continued fractions: digits, rational approximants and approximation bounds.

The slope is always carried as a finite prefix of its continued fraction
``[a1, a2, ...]``; nothing here converts it to a float.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

from .errors import InsufficientDigitsError

DEFAULT_BITS = 128


@dataclass(frozen=True)
class CFDigits:
    """Finite prefix ``a1..aN`` of a continued fraction expansion."""

    digits: tuple[int, ...]

    def __post_init__(self):
        if len(self.digits) < 1:
            raise ValueError("need at least one continued fraction digit")
        for a in self.digits:
            if int(a) != a or a < 1:
                raise ValueError(f"continued fraction digits must be integers >= 1, got {a!r}")

    def __len__(self) -> int:
        return len(self.digits)

    def a(self, i: int) -> int:
        """Digit ``a_i`` (1-based, as in the expansion)."""
        if not 1 <= i <= len(self.digits):
            raise InsufficientDigitsError(f"digit a_{i} requested but only {len(self.digits)} digits given")
        return self.digits[i - 1]

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.digits)) + "]"


DigitsLike = Union[CFDigits, Sequence[int], str]


def parse_digits(text: str) -> CFDigits:
    """Parse ``"1,2,3"``, ``"golden:N"`` (N ones) or ``"silver:N"`` (N twos)."""
    text = text.strip()
    if ":" in text:
        name, _, count = text.partition(":")
        fill = {"golden": 1, "silver": 2}.get(name.strip().lower())
        if fill is None:
            raise ValueError(f"unknown digit shorthand {name!r} (expected golden or silver)")
        try:
            n = int(count)
        except ValueError:
            raise ValueError(f"malformed digit count {count!r}") from None
        if n < 1:
            raise ValueError("digit count must be positive")
        return CFDigits((fill,) * n)
    try:
        values = tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise ValueError(f"malformed digit list {text!r}") from None
    return CFDigits(values)


def as_digits(digits: DigitsLike) -> CFDigits:
    if isinstance(digits, CFDigits):
        return digits
    if isinstance(digits, str):
        return parse_digits(digits)
    return CFDigits(tuple(int(a) for a in digits))


@dataclass(frozen=True)
class Approximant:
    """The fraction ``p/q`` of index ``m``; exact integers."""

    m: int
    p: int
    q: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.q)

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


@lru_cache(maxsize=256)
def _pq_table(digits: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    # index shift by one: entry j holds p_{j-1}, q_{j-1}
    p = [1, 0]
    q = [0, 1]
    for a in digits:
        p.append(a * p[-1] + p[-2])
        q.append(a * q[-1] + q[-2])
    return tuple(p), tuple(q)


def _check_index(cf: CFDigits, m: int) -> None:
    if m > len(cf):
        raise InsufficientDigitsError(
            f"index {m} needs {m} continued fraction digits, only {len(cf)} given")
    if m < -1:
        raise ValueError(f"approximant index must be >= -1, got {m}")


def p_q(digits: DigitsLike, m: int) -> tuple[int, int]:
    """Numerator and denominator ``(p_m, q_m)`` for ``m >= -1``."""
    cf = as_digits(digits)
    _check_index(cf, m)
    p, q = _pq_table(cf.digits)
    return p[m + 1], q[m + 1]


def q_of(digits: DigitsLike, m: int) -> int:
    return p_q(digits, m)[1]


def approximants(digits: DigitsLike, m_max: int) -> list[Approximant]:
    """Approximants ``p_m/q_m`` for ``m = 0..m_max``."""
    cf = as_digits(digits)
    _check_index(cf, m_max)
    p, q = _pq_table(cf.digits)
    return [Approximant(m, p[m + 1], q[m + 1]) for m in range(0, m_max + 1)]


def approximation_gap(digits: DigitsLike, m: int) -> tuple[Fraction, Fraction]:
    """Exact bounds ``(1/(q_m (q_{m+1}+q_m)), 1/(q_m q_{m+1}))`` on ``|alpha - p_m/q_m|``."""
    cf = as_digits(digits)
    if m < 0:
        raise ValueError("approximation bounds are defined for m >= 0")
    _check_index(cf, m + 1)
    q_m = q_of(cf, m)
    q_next = q_of(cf, m + 1)
    return Fraction(1, q_m * (q_next + q_m)), Fraction(1, q_m * q_next)


@dataclass(frozen=True)
class AlphaValue:
    """Dyadic rational approximation of the slope.

    ``value`` is ``p_N/q_N`` rounded to the nearest multiple of ``2**-bits``;
    ``error_bound`` bounds the distance to any irrational number whose
    expansion starts with the given digits.
    """

    value: Fraction
    bits: int
    error_bound: Fraction

    def __float__(self) -> float:
        return float(self.value)


def alpha_value(digits: DigitsLike, bits: int = DEFAULT_BITS) -> AlphaValue:
    if bits < 16:
        raise ValueError("alpha_value needs at least 16 bits")
    cf = as_digits(digits)
    exact = Fraction(0)
    for a in reversed(cf.digits):
        exact = 1 / (a + exact)
    scale = 1 << bits
    value = Fraction(round(exact * scale), scale)
    n = len(cf)
    q_n = q_of(cf, n)
    q_prev = q_of(cf, n - 1)
    # appending a digit 1 gives the largest admissible next denominator gap
    bound = Fraction(1, q_n * (q_n + q_prev)) + Fraction(1, 2 * scale)
    return AlphaValue(value, bits, bound)


def distance_to_integer(x: Fraction) -> Fraction:
    """``||x||``, the distance from ``x`` to the nearest integer."""
    frac = x - math.floor(x)
    return min(frac, 1 - frac)

