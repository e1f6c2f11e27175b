"""Height of kneading sequences.

Architecture:
- kappa / c_word build the palindromic word c_q of a rational q = m/n
- c_word_from_line is the independent construction from the line of slope q
- height_words bundles lhe, NBT and rhe, the landmarks of the height-q interval
- height runs a Stern–Brocot descent on the monotone predicate (c_q 1)^∞ ≺ s
- classify places s relative to the landmarks of its height
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from .const import KneadingTag, Order
from .errors import (
    ConventionError,
    HeightNotFoundError,
    InternalConsistencyError,
    NotKneadingError,
)
from .symbolic import BinarySeq, Word, is_kneading, precedes, unimodal_cmp

_LOGGER = logging.getLogger(__name__)

HORSESHOE = BinarySeq((1,), (0,))
HALF = Fraction(1, 2)


def _as_fraction(q) -> Fraction:
    return q if isinstance(q, Fraction) else Fraction(q)


def _check_word_range(q: Fraction) -> None:
    if not 0 < q <= HALF:
        raise ConventionError(f"q must lie in (0, 1/2], got {q}")


def kappa(q, i: int) -> int:
    """Return κ_i(q), the length of the i-th run of zeros in c_q."""
    q = _as_fraction(q)
    _check_word_range(q)
    m, n = q.numerator, q.denominator
    if not 1 <= i <= m:
        raise ConventionError(f"index {i} outside 1..{m}")
    if i == 1:
        return n // m - 1
    return (i * n) // m - ((i - 1) * n) // m - 2


def kappa_list(q) -> tuple[int, ...]:
    q = _as_fraction(q)
    _check_word_range(q)
    return tuple(kappa(q, i) for i in range(1, q.numerator + 1))


def c_word_from_line(q) -> Word:
    """Build c_q from the line through (0, 0) and (n, m).

    Symbol i is 1 exactly when the line meets a horizontal integer line
    for some x strictly between i - 1 and i + 1.
    """
    q = _as_fraction(q)
    _check_word_range(q)
    m, n = q.numerator, q.denominator
    symbols = []
    for i in range(n + 1):
        # smallest k with k n > m (i - 1); is k n < m (i + 1)?
        k = (m * (i - 1)) // n + 1
        symbols.append(1 if k * n < m * (i + 1) else 0)
    return Word(tuple(symbols))


def c_word(q) -> Word:
    """Return c_q = 1 0^κ1 11 0^κ2 11 ... 11 0^κm 1."""
    q = _as_fraction(q)
    symbols = [1]
    for index, run in enumerate(kappa_list(q)):
        if index:
            symbols.extend((1, 1))
        symbols.extend([0] * run)
    symbols.append(1)
    word = Word(tuple(symbols))
    if word != c_word_from_line(q):
        raise InternalConsistencyError(f"c_q constructions disagree for q={q}")
    return word


@dataclass(frozen=True)
class HeightWords:
    """The words and landmark sequences attached to a height m/n."""

    q: Fraction
    kappa: tuple[int, ...]
    c_q: Word
    w_q: Word
    w_hat_q: Word
    lhe: BinarySeq
    nbt: BinarySeq
    rhe: BinarySeq


def height_words(q) -> HeightWords:
    q = _as_fraction(q)
    if not 0 < q < HALF:
        raise ConventionError(f"height words need q in (0, 1/2), got {q}")
    c = c_word(q)
    w = c[:-2]
    w_hat = w.reversed()
    lhe = BinarySeq((), w.symbols + (1,))
    nbt = BinarySeq((), c.symbols + (1,))
    rhe = BinarySeq(c.symbols, (1,) + w_hat.symbols)
    if c != c.reversed():
        raise InternalConsistencyError(f"c_q is not palindromic for q={q}")
    if not any(rhe.shift(i) == lhe for i in range(rhe.orbit_size + 1)):
        raise InternalConsistencyError(f"rhe is not preperiodic to lhe for q={q}")
    return HeightWords(
        q=q,
        kappa=kappa_list(q),
        c_q=c,
        w_q=w,
        w_hat_q=w_hat,
        lhe=lhe,
        nbt=nbt,
        rhe=rhe,
    )


def nbt_sequence(q) -> BinarySeq:
    """Return (c_q 1)^∞, defined for all q in (0, 1/2]."""
    return BinarySeq((), c_word(q).symbols + (1,))


def in_height_interval(s: BinarySeq, q) -> bool:
    """Return true when lhe(q) ⪯ s ⪯ rhe(q)."""
    words = height_words(q)
    return (
        unimodal_cmp(words.lhe, s) is not Order.GREATER
        and unimodal_cmp(s, words.rhe) is not Order.GREATER
    )


def height_cap(s: BinarySeq) -> int:
    return len(s.preperiod) + len(s.period) + 2


def height(s: BinarySeq) -> Fraction:
    """Return q(s) = inf{q : q = 1/2 or (c_q 1)^∞ ≺ s}."""
    if s == HORSESHOE:
        return Fraction(0)
    if not is_kneading(s):
        raise NotKneadingError(f"{s} is not a kneading sequence")
    cap = height_cap(s)
    lo_num, lo_den, hi_num, hi_den = 0, 1, 1, 1
    while True:
        q = Fraction(lo_num + hi_num, lo_den + hi_den)
        if q.denominator > cap:
            # nothing below 1/2 qualifies within the cap
            if (hi_num, hi_den) == (1, 2):
                return HALF
            raise HeightNotFoundError(f"no height for {s} with denominator <= {cap}")
        _LOGGER.debug("height search for %s visits %s", s, q)
        if q == HALF:
            if not precedes(nbt_sequence(q), s):
                return q
            hi_num, hi_den = q.numerator, q.denominator
            continue
        if in_height_interval(s, q):
            return q
        if precedes(nbt_sequence(q), s):
            hi_num, hi_den = q.numerator, q.denominator
        else:
            lo_num, lo_den = q.numerator, q.denominator


@dataclass(frozen=True)
class KneadingClass:
    tag: KneadingTag
    q: Fraction


def classify(s: BinarySeq) -> KneadingClass:
    q = height(s)
    if q == 0:
        return KneadingClass(KneadingTag.HEIGHT_ZERO, q)
    if q == HALF:
        return KneadingClass(KneadingTag.HEIGHT_HALF, q)
    words = height_words(q)
    if s == words.lhe:
        tag = KneadingTag.LHE
    elif s == words.nbt:
        tag = KneadingTag.NBT
    elif s == words.rhe:
        tag = KneadingTag.RHE
    elif precedes(s, words.nbt):
        tag = KneadingTag.INTERIOR_LOW
    else:
        tag = KneadingTag.INTERIOR_HIGH
    return KneadingClass(tag, q)
