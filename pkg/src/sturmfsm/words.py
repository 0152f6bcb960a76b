"""Sturmian words with slope given by continued fraction digits.

Two-sided words are indexed by integers.  ``v`` is the word cut with the
half-open interval ``[1-alpha, 1)``, ``tilde`` the one cut with
``(1-alpha, 1]``; at offset zero they differ only at positions -1 and 0.

Everything is exact: aperiodic values are read off the recursive words
``s_n`` (and the mirror rule for negative indices), periodic values use
integer arithmetic on ``n*p mod q``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Literal, Optional

from .cf import DigitsLike, as_digits, p_q, q_of
from .errors import ConsistencyError, InsufficientDigitsError

Variant = Literal["plain", "tilde"]


@dataclass(frozen=True)
class Word:
    """Finite 0/1 word.  ``origin`` is the index of the first symbol.

    Equality and hashing look only at the symbols, so windows taken at
    different positions compare equal when they carry the same letters.
    """

    symbols: str
    origin: int = field(default=0, compare=False)

    def __post_init__(self):
        if self.symbols.strip("01"):
            raise ValueError(f"words are over the alphabet {{0,1}}: {self.symbols!r}")

    def __len__(self) -> int:
        return len(self.symbols)

    def __str__(self) -> str:
        return self.symbols

    def __getitem__(self, i: int) -> int:
        return int(self.symbols[i])

    def values(self) -> list[int]:
        return [int(c) for c in self.symbols]

    def reversed(self) -> "Word":
        return Word(self.symbols[::-1], self.origin)

    def is_palindrome(self) -> bool:
        return self.symbols == self.symbols[::-1]


def as_word(word: "Word | str") -> Word:
    return word if isinstance(word, Word) else Word(str(word))


@lru_cache(maxsize=64)
def _recursive_words(digits: tuple[int, ...]) -> tuple[str, ...]:
    # entry j holds s_{j-1}
    words = ["1", "0", "0" * (digits[0] - 1) + "1"]
    for a in digits[1:]:
        words.append(words[-1] * a + words[-2])
    return tuple(words)


def recursive_word(digits: DigitsLike, n: int) -> Word:
    """``s_n`` from ``s_{-1}=1, s_0=0, s_1=s_0^(a1-1) s_{-1}, s_n=s_{n-1}^(a_n) s_{n-2}``.

    For ``n >= 1`` the word sits at positions ``1..q_n`` of ``v``.
    """
    cf = as_digits(digits)
    if n > len(cf):
        raise InsufficientDigitsError(f"s_{n} needs {n} digits, only {len(cf)} given")
    if n < -1:
        raise ValueError("recursive words start at s_{-1}")
    return Word(_recursive_words(cf.digits)[n + 1], origin=1)


@lru_cache(maxsize=64)
def _positive_reach(digits: tuple[int, ...]) -> int:
    n = len(digits)
    q_n = q_of(digits, n)
    if n >= 2:
        # v(q_n + k) = v(k) holds for k <= q_{n+1} - 2, and q_{n+1} >= q_n + q_{n-1}
        return max(q_n, q_n + q_of(digits, n - 1) - 2)
    return q_n


def index_range(digits: DigitsLike) -> tuple[int, int]:
    """Smallest and largest index at which the digits determine ``v`` exactly."""
    cf = as_digits(digits)
    reach = _positive_reach(cf.digits)
    return -(reach + 1), reach


@lru_cache(maxsize=64)
def _two_sided(digits: tuple[int, ...]) -> tuple[str, int]:
    """Plain word over ``index_range`` as one string plus the offset of index 0."""
    s_n = _recursive_words(digits)[-1]
    reach = _positive_reach(digits)
    positive = (s_n + s_n)[:reach]  # v(1..reach); second copy realises v(q_n + k) = v(k)
    # v(-k) = v(k-1) for k >= 2, v(-1) = 1, v(0) = 0
    negative = positive[::-1] + "1"  # v(-reach-1 .. -2), then v(-1)
    word = negative + "0" + positive
    return word, reach + 1


def _covering_prefix(digits: tuple[int, ...], lo: int, hi: int) -> tuple[int, ...]:
    """Shortest digit prefix whose determined range contains ``lo..hi``.

    Values never depend on digits beyond the prefix that determines them,
    so lookups stay cheap even for long expansions.
    """
    for n in range(1, len(digits) + 1):
        reach = _positive_reach(digits[:n])
        if -(reach + 1) <= lo and hi <= reach:
            return digits[:n]
    full_lo, full_hi = index_range(digits)
    bad = lo if lo < full_lo else hi
    raise InsufficientDigitsError(
        f"index {bad} outside the range [{full_lo}, {full_hi}] determined by {len(digits)} digits")


def sturmian_value(digits: DigitsLike, n: int, variant: Variant = "plain") -> int:
    """``v_alpha(n)`` (``variant='plain'``) or ``tilde v_alpha(n)`` at offset 0."""
    cf = as_digits(digits)
    prefix = _covering_prefix(cf.digits, n, n)
    if variant == "tilde" and n in (-1, 0):
        return 1 + n  # tilde v(-1) = 0, tilde v(0) = 1
    if variant not in ("plain", "tilde"):
        raise ValueError(f"unknown variant {variant!r}")
    word, zero = _two_sided(prefix)
    return int(word[zero + n])


def sturmian_window(digits: DigitsLike, start: int, length: int,
                    variant: Variant = "plain", shift: int = 0) -> Word:
    """Symbols at positions ``start .. start+length-1`` of the word at orbit offset ``shift``.

    The offset ``theta = shift * alpha mod 1`` acts as an index shift:
    ``v_{alpha,theta}(k) = v_alpha(k + shift)``.
    """
    cf = as_digits(digits)
    lo = start + shift
    hi = lo + length - 1
    if length < 0:
        raise ValueError("negative window length")
    if length == 0:
        return Word("", start)
    word, zero = _two_sided(_covering_prefix(cf.digits, lo, hi))
    text = word[zero + lo: zero + hi + 1]
    if variant == "tilde":
        chars = list(text)
        for pos, val in ((-1, "0"), (0, "1")):
            if lo <= pos <= hi:
                chars[pos - lo] = val
        text = "".join(chars)
    elif variant != "plain":
        raise ValueError(f"unknown variant {variant!r}")
    return Word(text, start)


@dataclass(frozen=True)
class PeriodicWordSpec:
    """Periodic word of rational slope ``p/q``.

    ``shift`` realises the offset ``shift * p/q``; ``theta`` adds an extra
    exact rational offset.
    """

    p: int
    q: int
    shift: int = 0
    theta: Optional[Fraction] = None

    def __post_init__(self):
        if self.q < 1 or not 0 <= self.p <= self.q:
            raise ValueError(f"need 0 <= p <= q and q >= 1, got {self.p}/{self.q}")
        if self.p and math.gcd(self.p, self.q) != 1:
            raise ValueError(f"slope {self.p}/{self.q} is not in lowest terms")


def approximant_spec(digits: DigitsLike, m: int, shift: int = 0) -> PeriodicWordSpec:
    p, q = p_q(digits, m)
    return PeriodicWordSpec(p, q, shift)


def periodic_word_value(spec: PeriodicWordSpec, n: int, variant: Variant = "plain") -> int:
    """Indicator of ``[1-p/q, 1)`` (or ``(1-p/q, 1]``) at ``n*p/q + offset mod 1``."""
    p, q = spec.p, spec.q
    k = n + spec.shift
    if spec.theta is None:
        r = (k * p) % q
        if variant == "plain":
            return int(r >= q - p)
        if variant == "tilde":
            return int((r or q) > q - p)
        raise ValueError(f"unknown variant {variant!r}")
    theta = Fraction(spec.theta)
    # x = k p/q + theta over the common denominator q * den, all in integers
    den = theta.denominator
    r = (k * p * den + theta.numerator * q) % (q * den)
    cut = (q - p) * den
    if variant == "plain":
        return int(r >= cut)
    if variant == "tilde":
        return int((r or q * den) > cut)
    raise ValueError(f"unknown variant {variant!r}")


def periodic_window(spec: PeriodicWordSpec, start: int, length: int,
                    variant: Variant = "plain") -> Word:
    return Word("".join(str(periodic_word_value(spec, n, variant))
                        for n in range(start, start + length)), start)


def enumerate_subwords(digits: DigitsLike, length: int, variant: Variant = "plain") -> list[Word]:
    """All distinct factors of the given length, sorted.

    Factors are read off the determined range of growing digit prefixes.
    A Sturmian word has exactly ``length + 1`` factors of each length, so
    fewer than that after the full prefix means too few digits were given.
    """
    if length < 1:
        raise ValueError("subword length must be positive")
    cf = as_digits(digits)
    found: dict[str, int] = {}
    # every factor found is a true factor, so stop once all L+1 are present
    for n in range(1, len(cf) + 1):
        lo, hi = index_range(cf.digits[:n])
        if hi - lo + 1 < length:
            continue
        text = sturmian_window(cf, lo, hi - lo + 1, variant).symbols
        found = {}
        for i in range(len(text) - length + 1):
            found.setdefault(text[i:i + length], lo + i)
        if len(found) >= length + 1:
            break
    if len(found) < length + 1:
        raise InsufficientDigitsError(
            f"found {len(found)} of {length + 1} factors of length {length}; "
            f"use more continued fraction digits")
    if len(found) > length + 1:
        raise ConsistencyError(f"{len(found)} factors of length {length} exceed Sturmian complexity")
    return [Word(s, found[s]) for s in sorted(found)]


def palindromic_decomposition(digits: DigitsLike, n: int) -> tuple[Word, Word]:
    """Split ``s_n`` as ``pi_n + '10'`` (n even) or ``pi_n + '01'`` (n odd)."""
    if n < 2:
        raise ValueError("palindromic decomposition needs n >= 2")
    s = recursive_word(digits, n).symbols
    suffix = "10" if n % 2 == 0 else "01"
    if not s.endswith(suffix):
        raise ConsistencyError(f"s_{n} does not end in {suffix}")
    pi = Word(s[:-2], 1)
    if not pi.is_palindrome():
        raise ConsistencyError(f"prefix of s_{n} is not a palindrome")
    return pi, Word(suffix, len(s) - 1)


def agreement_range(digits: DigitsLike, n: int, variant: Variant = "plain",
                    shift: int = 0) -> tuple[int, int, Variant]:
    """Index range on which the ``n``-th periodic approximant word agrees with the aperiodic one.

    Returns ``(lo, hi, aperiodic_variant)``: for ``lo <= k <= hi`` the periodic
    word of slope ``alpha_n`` (given variant) equals the aperiodic word of
    ``aperiodic_variant``, both taken at the same offset ``shift*alpha``.  Only the ranges
    that are actually proved are returned; ``|shift| > q_{n-1}`` is rejected.
    """
    if n < 2:
        raise ValueError("agreement ranges are stated for n >= 2")
    q_n = q_of(digits, n)
    q_next = q_of(digits, n + 1)
    even = n % 2 == 0
    if shift == 0:
        wide = (-q_n + 1, q_next - 2)
        narrow = (-q_next - 1, q_n - 2)
        if variant == "plain":
            lo, hi = wide if even else narrow
        else:
            lo, hi = narrow if even else wide
        return lo, hi, variant
    if variant != "plain":
        raise ValueError("shifted agreement is only known for the plain periodic word")
    if abs(shift) > q_of(digits, n - 1):
        raise ValueError(f"|shift| = {abs(shift)} exceeds q_{n - 1}; no agreement range is known")
    same = (shift > 0) == even
    return -q_n + 1, q_n - 2, "plain" if same else "tilde"
