from fractions import Fraction

import pytest

from unimodal_gpa.dynamics.const import CASE_BY_TAG, Half, OutsideCase
from unimodal_gpa.dynamics.errors import DomainError
from unimodal_gpa.dynamics.height import classify
from unimodal_gpa.dynamics.orbit import critical_orbit, mia_check, strip_cover
from unimodal_gpa.dynamics.outside import (
    Inside,
    OutsidePoint,
    a_hat,
    b_hat,
    backward_orbit,
    c_upper,
    is_in_gamma,
    lambda_orbit,
    outside_orbit,
    outside_step,
    p_upper,
    survives,
)
from unimodal_gpa.dynamics.symbolic import BinarySeq, maximal_words, parse_seq

from .conftest import LHE_THIRD, NBT_THIRD, RHE_THIRD, RUNNING


def test_endpoint_steps():
    s = parse_seq(RUNNING)
    assert outside_step(b_hat(s), s) == a_hat(s)
    c_lower = OutsidePoint(Half.LOWER, s.prepend((1,)))
    assert outside_step(c_lower, s) == b_hat(s)


def test_upper_points_below_p_u_enter_gamma():
    s = parse_seq(RUNNING)
    point = OutsidePoint(Half.UPPER, s.shift(2))
    assert is_in_gamma(point, s)
    assert outside_step(point, s) == Inside(s.shift(2))
    assert not is_in_gamma(p_upper(s), s)


def test_bad_endpoint_itinerary_rejected():
    s = parse_seq(RUNNING)
    with pytest.raises(DomainError):
        outside_step(OutsidePoint(Half.B_HAT, s.shift()), s)


@pytest.mark.parametrize(
    "text, case",
    [
        (LHE_THIRD, OutsideCase.I),
        (NBT_THIRD, OutsideCase.II),
        (RHE_THIRD, OutsideCase.III),
        (RUNNING, OutsideCase.IV),
    ],
)
def test_outside_orbit_cases(text, case):
    s = parse_seq(text)
    orbit = outside_orbit(s)
    assert orbit.case is case
    assert orbit.n == 3
    assert orbit.steps[0] == a_hat(s)
    assert orbit.rotation == Fraction(1, 3)
    assert len(orbit.lambda_orbit) == 3


def test_landing_points():
    s = parse_seq(LHE_THIRD)
    assert outside_orbit(s).steps[-1] == a_hat(s)
    s = parse_seq(NBT_THIRD)
    assert outside_orbit(s).steps[-1] == c_upper(s)
    s = parse_seq(RHE_THIRD)
    assert outside_orbit(s).steps[-1] == p_upper(s)


def test_lambda_orbit_for_one_third():
    s = parse_seq(RUNNING)
    points, rotation = lambda_orbit(s, Fraction(1, 3))
    assert rotation == Fraction(1, 3)
    assert set(points) == {
        OutsidePoint(Half.UPPER, parse_seq("(101)")),
        OutsidePoint(Half.LOWER, parse_seq("(011)")),
        OutsidePoint(Half.LOWER, parse_seq("(110)")),
    }
    assert all(survives(p, s, 12) for p in points)


def test_rhe_extras_are_preimages_of_a_hat():
    s = parse_seq(RHE_THIRD)
    orbit = outside_orbit(s)
    assert orbit.extras
    assert orbit.extras[0] == b_hat(s)
    assert orbit.extras == tuple(backward_orbit(a_hat(s), s, 2 * s.orbit_size))


def test_short_step_limit_rejected():
    with pytest.raises(DomainError):
        outside_orbit(parse_seq(RUNNING), max_steps=2)


def test_height_zero_has_no_outside_orbit():
    with pytest.raises(DomainError):
        outside_orbit(parse_seq("1(0)"))


def test_escape_time_matches_height_for_all_short_words():
    checked = 0
    for word in maximal_words(10):
        if word.symbols[-1] != 1:
            continue
        s = BinarySeq.periodic(word)
        try:
            cls = classify(s)
            if cls.q == 0 or not mia_check(strip_cover(critical_orbit(s))):
                continue
        except DomainError:
            continue
        orbit = outside_orbit(s)
        assert orbit.n == cls.q.denominator
        assert orbit.case is CASE_BY_TAG[cls.tag]
        assert orbit.rotation == cls.q
        checked += 1
    assert checked > 0
