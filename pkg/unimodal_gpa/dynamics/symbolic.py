"""Eventually periodic binary sequences and the unimodal order.

A sequence is stored as a finite preperiod followed by a repeating period.
Values are kept in canonical form: the period is primitive and the
preperiod is as short as possible, so two sequences are equal exactly
when they have the same symbols.
"""

from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass
from functools import cmp_to_key
from itertools import product

from .const import SEQUENCE_PATTERN, Order
from .errors import SequenceSyntaxError
from .util import word_text

_LOGGER = logging.getLogger(__name__)

_SEQUENCE_RE = re.compile(SEQUENCE_PATTERN)


def _check_symbols(symbols) -> tuple[int, ...]:
    result = tuple(int(x) for x in symbols)
    if any(x not in (0, 1) for x in result):
        raise SequenceSyntaxError(f"symbols must be 0 or 1, got {result}")
    return result


@dataclass(frozen=True)
class Word:
    """Finite word over {0, 1}."""

    symbols: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "symbols", _check_symbols(self.symbols))

    @classmethod
    def from_text(cls, text: str) -> Word:
        if not re.fullmatch(r"[01]*", text.strip()):
            raise SequenceSyntaxError(f"not a binary word: {text!r}")
        return cls(tuple(int(c) for c in text.strip()))

    @property
    def parity(self) -> int:
        return sum(self.symbols) % 2

    @property
    def is_even(self) -> bool:
        return self.parity == 0

    def reversed(self) -> Word:
        return Word(self.symbols[::-1])

    def __add__(self, other: Word) -> Word:
        return Word(self.symbols + other.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.symbols[item])
        return self.symbols[item]

    def __str__(self) -> str:
        return word_text(self.symbols)


def _least_period(period: tuple[int, ...]) -> tuple[int, ...]:
    n = len(period)
    for d in range(1, n + 1):
        if n % d == 0 and period[:d] * (n // d) == period:
            return period[:d]
    return period


@dataclass(frozen=True)
class BinarySeq:
    """Eventually periodic element of {0,1}^N, written preperiod(period)^∞."""

    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self):
        preperiod = _check_symbols(self.preperiod)
        period = _check_symbols(self.period)
        if not period:
            raise SequenceSyntaxError("period must be nonempty")
        period = _least_period(period)
        # slide the period left while the preperiod ends in its last symbol
        while preperiod and preperiod[-1] == period[-1]:
            period = (period[-1],) + period[:-1]
            preperiod = preperiod[:-1]
        object.__setattr__(self, "preperiod", preperiod)
        object.__setattr__(self, "period", period)

    @classmethod
    def periodic(cls, word) -> BinarySeq:
        symbols = word.symbols if isinstance(word, Word) else tuple(word)
        return cls((), symbols)

    @property
    def is_periodic(self) -> bool:
        return not self.preperiod

    @property
    def orbit_size(self) -> int:
        """Number of distinct shifts of the sequence."""
        return len(self.preperiod) + len(self.period)

    def __getitem__(self, index: int) -> int:
        k = len(self.preperiod)
        if index < k:
            return self.preperiod[index]
        return self.period[(index - k) % len(self.period)]

    def prefix(self, length: int) -> tuple[int, ...]:
        return tuple(self[i] for i in range(length))

    def shift(self, times: int = 1) -> BinarySeq:
        seq = self
        for _ in range(times):
            if seq.preperiod:
                seq = BinarySeq(seq.preperiod[1:], seq.period)
            else:
                seq = BinarySeq((), seq.period[1:] + seq.period[:1])
        return seq

    def prepend(self, symbols) -> BinarySeq:
        return BinarySeq(tuple(symbols) + self.preperiod, self.period)

    def __str__(self) -> str:
        return f"{word_text(self.preperiod)}({word_text(self.period)})"


def parse_seq(text: str) -> BinarySeq:
    """Parse the text form `v(w)` of v w^∞ into a canonical sequence."""
    match = _SEQUENCE_RE.match(text or "")
    if match is None:
        raise SequenceSyntaxError(f"cannot parse sequence {text!r}")
    preperiod, period = match.groups()
    return BinarySeq(tuple(int(c) for c in preperiod), tuple(int(c) for c in period))


def shift(s: BinarySeq) -> BinarySeq:
    return s.shift()


def unimodal_cmp(s: BinarySeq, t: BinarySeq) -> Order:
    """Compare two sequences in the unimodal order.

    At the first index n where they differ, s precedes t when
    s_0 + ... + s_n is even.
    """
    window = max(len(s.preperiod), len(t.preperiod)) + math.lcm(len(s.period), len(t.period))
    partial = 0
    for n in range(window):
        a, b = s[n], t[n]
        partial += a
        if a != b:
            return Order.LESS if partial % 2 == 0 else Order.GREATER
    return Order.EQUAL


unimodal_key = cmp_to_key(unimodal_cmp)


def precedes(s: BinarySeq, t: BinarySeq) -> bool:
    return unimodal_cmp(s, t) is Order.LESS


def precedes_or_equal(s: BinarySeq, t: BinarySeq) -> bool:
    return unimodal_cmp(s, t) is not Order.GREATER


def distinct_shifts(s: BinarySeq) -> list[BinarySeq]:
    """Return s, σ(s), ... up to the last new shift."""
    return [s.shift(i) for i in range(s.orbit_size)]


def is_kneading(s: BinarySeq) -> bool:
    """Return true when σ(s) ⪯ σ^n(s) ⪯ s for every n."""
    first = s.shift()
    return all(
        precedes_or_equal(first, t) and precedes_or_equal(t, s)
        for t in distinct_shifts(s)
    )


def is_maximal(w: Word) -> bool:
    """Return true when every nontrivial shift of w^∞ lies strictly below w^∞."""
    if len(w) < 1:
        raise SequenceSyntaxError("maximal words are nonempty")
    symbols = w.symbols
    base = BinarySeq((), symbols)
    for i in range(1, len(symbols)):
        rotated = BinarySeq((), symbols[i:] + symbols[:i])
        if not precedes(rotated, base):
            return False
    return True


def maximal_words(max_length: int) -> list[Word]:
    """Return all maximal words of length at most max_length.

    Words are listed by length, then lexicographically.
    """
    words = []
    for length in range(1, max_length + 1):
        for symbols in product((0, 1), repeat=length):
            word = Word(symbols)
            if is_maximal(word):
                words.append(word)
    _LOGGER.debug("found %s maximal words up to length %s", len(words), max_length)
    return words
