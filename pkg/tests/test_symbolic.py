import pytest

from unimodal_gpa.dynamics.const import Order
from unimodal_gpa.dynamics.errors import SequenceSyntaxError
from unimodal_gpa.dynamics.symbolic import (
    BinarySeq,
    Word,
    distinct_shifts,
    is_kneading,
    is_maximal,
    maximal_words,
    parse_seq,
    precedes,
    unimodal_cmp,
)


def test_parse_canonicalizes_preperiod():
    assert parse_seq("1001(101)") == parse_seq("10(011)")
    assert str(parse_seq("1001(101)")) == "10(011)"


def test_parse_reduces_to_least_period():
    s = parse_seq("(101101)")
    assert s.preperiod == ()
    assert s.period == (1, 0, 1)


def test_parse_writes_horseshoe_as_one_then_zeros():
    assert str(parse_seq("10(0)")) == "1(0)"


@pytest.mark.parametrize("text", ["(", "10", "(12)", "1()", ""])
def test_parse_rejects_bad_text(text):
    with pytest.raises(SequenceSyntaxError):
        parse_seq(text)


@pytest.mark.parametrize(
    "text, expected",
    [("(10011)", "(00111)"), ("10(011)", "0(011)"), ("1(0)", "(0)")],
)
def test_shift(text, expected):
    assert parse_seq(text).shift() == parse_seq(expected)


@pytest.mark.parametrize(
    "left, right, expected",
    [
        ("(0)", "1(0)", Order.LESS),
        ("(11)", "(10)", Order.LESS),
        ("(10)", "(11)", Order.GREATER),
        ("(1011011)", "(10011)", Order.LESS),
        ("10(011)", "100(110)", Order.EQUAL),
        ("(1001)", "(100111)", Order.GREATER),
        ("(101)", "(101101011)", Order.GREATER),
    ],
)
def test_unimodal_cmp(left, right, expected):
    assert unimodal_cmp(parse_seq(left), parse_seq(right)) is expected


def test_unimodal_cmp_is_antisymmetric_on_orbit():
    points = distinct_shifts(parse_seq("(1001011)"))
    for s in points:
        for t in points:
            assert unimodal_cmp(s, t) == -unimodal_cmp(t, s)


def test_prefix_parity_law():
    s, t = parse_seq("(0)"), parse_seq("1(0)")
    assert precedes(s, t)
    assert precedes(s.prepend((0, 0)), t.prepend((0, 0)))
    assert precedes(t.prepend((1,)), s.prepend((1,)))


@pytest.mark.parametrize(
    "text, expected",
    [("1(0)", True), ("(1001011)", True), ("0(1)", False), ("(01)", False)],
)
def test_is_kneading(text, expected):
    assert is_kneading(parse_seq(text)) is expected


@pytest.mark.parametrize(
    "word, expected",
    [("10010", True), ("01", False), ("100110110011", True), ("11", False)],
)
def test_is_maximal(word, expected):
    assert is_maximal(Word.from_text(word)) is expected


def test_maximal_words_give_kneading_sequences():
    words = maximal_words(8)
    assert Word.from_text("1") in words
    for word in words:
        assert is_kneading(BinarySeq.periodic(word)), word


def test_word_parity_and_reverse():
    w = Word.from_text("1001101")
    assert w.parity == 0
    assert w.is_even
    assert str(w.reversed()) == "1011001"
