"""Outside map on the circle of two interval copies.

Points are symbolic: a half of the circle together with the itinerary of
the interval point they project to. â and b̂ are the joining points over
the endpoints a and b, whose itineraries are σ(s) and s. The trapped arc
γ is the part of the upper half below p_u, the upper point with itinerary
1σ²(s).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from .const import CASE_BY_TAG, Half, KneadingTag, OutsideCase
from .errors import DomainError, InternalConsistencyError
from .height import classify, height_words
from .symbolic import BinarySeq, precedes, precedes_or_equal, unimodal_key

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class OutsidePoint:
    half: Half
    itinerary: BinarySeq

    def __str__(self) -> str:
        return f"{self.half.value}:{self.itinerary}"


@dataclass(frozen=True)
class Inside:
    """Result of a step that enters the trapped arc γ."""

    itinerary: BinarySeq


def a_hat(s: BinarySeq) -> OutsidePoint:
    return OutsidePoint(Half.A_HAT, s.shift())


def b_hat(s: BinarySeq) -> OutsidePoint:
    return OutsidePoint(Half.B_HAT, s)


def c_upper(s: BinarySeq) -> OutsidePoint:
    return OutsidePoint(Half.UPPER, s.prepend((1,)))


def p_upper(s: BinarySeq) -> OutsidePoint:
    return OutsidePoint(Half.UPPER, s.shift(2).prepend((1,)))


def _normalize(point: OutsidePoint, s: BinarySeq) -> OutsidePoint:
    if point.half in (Half.UPPER, Half.LOWER):
        if point.itinerary == s.shift():
            return a_hat(s)
        if point.itinerary == s:
            return b_hat(s)
    return point


def _check_point(point, s: BinarySeq) -> None:
    if not isinstance(point, OutsidePoint):
        raise DomainError(f"not an outside point: {point!r}")
    if point.half is Half.A_HAT and point.itinerary != s.shift():
        raise DomainError(f"â must carry the itinerary {s.shift()}")
    if point.half is Half.B_HAT and point.itinerary != s:
        raise DomainError(f"b̂ must carry the itinerary {s}")


def is_in_gamma(point: OutsidePoint, s: BinarySeq) -> bool:
    """Return true for upper points strictly below p_u."""
    return point.half is Half.UPPER and precedes(point.itinerary, p_upper(s).itinerary)


def outside_step(point: OutsidePoint, s: BinarySeq) -> OutsidePoint | Inside:
    _check_point(point, s)
    if point.half is Half.A_HAT:
        return _normalize(OutsidePoint(Half.LOWER, s.shift(2)), s)
    if point.half is Half.B_HAT:
        return a_hat(s)
    x = point.itinerary
    if point.half is Half.LOWER:
        if x == s.prepend((1,)):
            return b_hat(s)
        half = Half.LOWER if x[0] == 0 else Half.UPPER
        return _normalize(OutsidePoint(half, x.shift()), s)
    if precedes_or_equal(p_upper(s).itinerary, x):
        return _normalize(OutsidePoint(Half.LOWER, x.shift()), s)
    return Inside(x)


@dataclass(frozen=True)
class OutsideOrbit:
    steps: tuple[OutsidePoint, ...]
    n: int
    case: OutsideCase
    lambda_orbit: tuple[OutsidePoint, ...]
    rotation: Fraction
    extras: tuple[OutsidePoint, ...] = ()


def _escaped(point: OutsidePoint, s: BinarySeq) -> bool:
    if point.half is Half.A_HAT:
        return True
    return point.half is Half.UPPER and precedes_or_equal(point.itinerary, p_upper(s).itinerary)


def _landing_case(point: OutsidePoint, s: BinarySeq) -> OutsideCase:
    if point.half is Half.A_HAT:
        return OutsideCase.I
    x = point.itinerary
    if x == c_upper(s).itinerary:
        return OutsideCase.II
    if x == p_upper(s).itinerary:
        return OutsideCase.III
    if precedes(x, c_upper(s).itinerary):
        return OutsideCase.IV
    return OutsideCase.V


def _circle_key(point: OutsidePoint):
    """Sort key for the circle order: lower half ascending, then upper descending."""
    if point.half in (Half.LOWER, Half.A_HAT, Half.B_HAT):
        return (0, unimodal_key(point.itinerary))
    return (1, _Reversed(point.itinerary))


class _Reversed:
    def __init__(self, itinerary):
        self.itinerary = itinerary

    def __lt__(self, other):
        return precedes(other.itinerary, self.itinerary)

    def __eq__(self, other):
        return self.itinerary == other.itinerary


def lambda_orbit(s: BinarySeq, q: Fraction) -> tuple[tuple[OutsidePoint, ...], Fraction]:
    """Return the periodic orbit of Λ in circle order and its rotation number."""
    words = height_words(q)
    seq = words.lhe
    points = []
    for i in range(seq.orbit_size):
        itinerary = seq.shift(i)
        symbols = itinerary.prefix(seq.orbit_size + 1)
        ones = 0
        while ones < len(symbols) and symbols[ones] == 1:
            ones += 1
        half = Half.UPPER if ones % 2 == 1 else Half.LOWER
        points.append(_normalize(OutsidePoint(half, itinerary), s))
    for point, successor in zip(points, points[1:] + points[:1]):
        image = outside_step(point, s)
        if image != successor:
            raise InternalConsistencyError(f"Λ orbit breaks at {point}: got {image}")
    ordered = sorted(points, key=_circle_key)
    n = len(ordered)
    shift = ordered.index(outside_step(ordered[0], s)) % n
    return tuple(ordered), Fraction(shift, n)


def backward_orbit(point: OutsidePoint, s: BinarySeq, steps: int) -> list[OutsidePoint]:
    """Follow the unique outside preimage of `point` for up to `steps` steps."""
    lower_min = s.shift()
    upper_min = p_upper(s).itinerary
    orbit = []
    current = _normalize(point, s)
    seen = {current}
    for _ in range(steps):
        y = current.itinerary
        candidates = []
        if current.half is Half.A_HAT:
            candidates.append(b_hat(s))
        elif current.half is Half.B_HAT:
            candidates.append(OutsidePoint(Half.LOWER, s.prepend((1,))))
        elif current.half is Half.LOWER:
            zero = y.prepend((0,))
            if precedes_or_equal(lower_min, zero):
                candidates.append(OutsidePoint(Half.LOWER, zero))
            one = y.prepend((1,))
            if precedes_or_equal(upper_min, one) and precedes_or_equal(one, s):
                candidates.append(OutsidePoint(Half.UPPER, one))
        elif current.half is Half.UPPER:
            one = y.prepend((1,))
            if precedes(c_upper(s).itinerary, one) and precedes_or_equal(one, s):
                candidates.append(OutsidePoint(Half.LOWER, one))
        if len(candidates) != 1:
            break
        current = _normalize(candidates[0], s)
        if current in seen:
            break
        seen.add(current)
        orbit.append(current)
    return orbit


def survives(point: OutsidePoint, s: BinarySeq, steps: int) -> bool:
    """Return true when the point stays outside γ for `steps` iterations."""
    current = point
    for _ in range(steps):
        current = outside_step(current, s)
        if isinstance(current, Inside):
            return False
    return True


def outside_orbit(s: BinarySeq, max_steps: int | None = None) -> OutsideOrbit:
    cls = classify(s)
    if cls.q == 0:
        raise DomainError("the outside orbit needs positive height")
    if cls.tag is KneadingTag.HEIGHT_HALF:
        raise DomainError("the outside orbit needs height below 1/2")
    n_expected = cls.q.denominator
    if max_steps is not None and max_steps < n_expected:
        raise DomainError(f"escape takes {n_expected} steps, only {max_steps} allowed")
    limit = max_steps or 4 * n_expected + 4
    steps = [a_hat(s)]
    n = None
    for i in range(1, limit + 1):
        image = outside_step(steps[-1], s)
        if isinstance(image, Inside):
            raise InternalConsistencyError(f"orbit of â entered γ at step {i} before escaping")
        steps.append(image)
        if _escaped(image, s):
            n = i
            break
    if n != n_expected:
        raise InternalConsistencyError(f"escape time {n} differs from height denominator {n_expected}")
    case = _landing_case(steps[-1], s)
    if case is not CASE_BY_TAG[cls.tag]:
        raise InternalConsistencyError(f"landing case {case.value} disagrees with tag {cls.tag.value}")
    orbit_points, rotation = lambda_orbit(s, cls.q)
    if rotation != cls.q:
        raise InternalConsistencyError(f"rotation number {rotation} differs from height {cls.q}")
    extras: list[OutsidePoint] = []
    if cls.tag is KneadingTag.RHE:
        extras = backward_orbit(a_hat(s), s, 2 * s.orbit_size)
    elif cls.tag is KneadingTag.LHE:
        extras = backward_orbit(p_upper(s), s, 2 * s.orbit_size)
    _LOGGER.debug("outside orbit of %s: n=%s case=%s", s, n, case.value)
    return OutsideOrbit(
        steps=tuple(steps),
        n=n,
        case=case,
        lambda_orbit=orbit_points,
        rotation=rotation,
        extras=tuple(extras),
    )
