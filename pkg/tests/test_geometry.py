import math

import numpy as np
import pytest

from unimodal_gpa import analyze, prepare
from unimodal_gpa.dynamics.const import IdentificationCase, ProngAsymptotics
from unimodal_gpa.dynamics.errors import DomainError, EscapeError
from unimodal_gpa.dynamics.geometry import (
    SHAPE_PAIR,
    SHAPE_RECT,
    SHAPE_SEMICIRCLE,
    ComplexPoint,
    complex_area,
    endpoint_constants,
    iterate,
    level_ratio,
    moduli_bounds,
    round_annulus_bound,
    singularity_census,
)
from unimodal_gpa.dynamics.render import render_svg
from unimodal_gpa.dynamics.symbolic import maximal_words

from .conftest import (
    EXAMPLES,
    HORSESHOE,
    LHE_THIRD,
    NBT_THIRD,
    PREPERIODIC_V1,
    PREPERIODIC_V2,
    RHE_THIRD,
    RUNNING,
)


def test_round_annulus_bound():
    assert round_annulus_bound(1.0, 2.0) == pytest.approx(1 / (3 * math.pi))
    assert round_annulus_bound(1.0, 2.0) < math.log(2) / (2 * math.pi)


def _assert_tiling(result):
    complex_ = result.complex
    assert len(complex_.rectangles) == result.orbit.size - 1
    assert complex_.position(result.orbit.size) == pytest.approx(float(result.spectral.X.sum()))
    assert complex_area(complex_) == pytest.approx(1.0)
    for i, bands in complex_.phi_model.items():
        assert sum(b.height for b in bands) == pytest.approx(complex_.rectangle(i).height)


@pytest.mark.parametrize("text", [HORSESHOE, *EXAMPLES])
def test_rectangles_tile_the_strips(analysis, text):
    _assert_tiling(analysis(text))


def test_every_short_mia_sequence_tiles():
    checked = 0
    for word in maximal_words(10):
        if word.symbols[-1] != 1:
            continue
        try:
            prepare(f"({word})")
        except DomainError:
            continue
        _assert_tiling(analyze(f"({word})", depth=12, environ={}))
        checked += 1
    assert checked > 10


def test_horseshoe_complex_has_no_identifications(analysis):
    complex_ = analysis(HORSESHOE).complex
    assert complex_.case is None
    assert complex_.horizontal_intervals == ()
    bounds = moduli_bounds(complex_, 5)
    assert bounds.bounds == ()
    assert bounds.note


def test_endpoint_case_intervals(analysis):
    complex_ = analysis(LHE_THIRD).complex
    assert complex_.case is IdentificationCase.ENDPOINT
    assert complex_.w_v > 0
    assert complex_.w_h > 0
    assert len(complex_.boundary_polygon) == 3
    assert all(h.shape == SHAPE_SEMICIRCLE for h in complex_.horizontal_intervals)
    ratios = level_ratio(complex_.horizontal_intervals, "u", 0)
    assert ratios
    for ratio in ratios:
        assert ratio == pytest.approx(complex_.lam**-3)


def test_nbt_case_intervals(analysis):
    complex_ = analysis(NBT_THIRD).complex
    assert complex_.case is IdentificationCase.NBT
    shapes = [h.shape for h in complex_.horizontal_intervals]
    assert shapes[:3] == [SHAPE_SEMICIRCLE] * 3
    assert set(shapes[3:]) == {SHAPE_RECT}


def test_generic_case_intervals(analysis):
    complex_ = analysis(RUNNING).complex
    assert complex_.case is IdentificationCase.GENERIC
    assert set(h.shape for h in complex_.horizontal_intervals[3:]) == {SHAPE_PAIR}


def test_nbt_census_is_finite(analysis):
    census = singularity_census(analysis(NBT_THIRD).complex)
    assert len(census.one_prong_orbit) == 5
    assert census.finite
    assert census.asymptotics is ProngAsymptotics.FINITE
    assert ("boundary periodic orbit", 3) in census.n_prongs


@pytest.mark.parametrize(
    "text, asymptotics",
    [
        (LHE_THIRD, ProngAsymptotics.HOMOCLINIC),
        (RHE_THIRD, ProngAsymptotics.HOMOCLINIC),
        (RUNNING, ProngAsymptotics.BACKWARD_INFINITY_FORWARD_PERIODIC),
    ],
)
def test_census_asymptotics(analysis, text, asymptotics):
    census = singularity_census(analysis(text).complex)
    assert census.asymptotics is asymptotics
    assert not census.finite
    assert census.one_prong_orbit


def test_endpoint_moduli_bounds(analysis):
    bounds = moduli_bounds(analysis(LHE_THIRD).complex, 20)
    assert len(bounds.bounds) == 20
    assert all(b > 0 for b in bounds.bounds)
    assert all(a > b for a, b in zip(bounds.bounds, bounds.bounds[1:]))
    assert all(a < b for a, b in zip(bounds.partial_sums, bounds.partial_sums[1:]))
    assert bounds.first_exceeding is not None
    assert bounds.first_exceeding > len(bounds.bounds)
    # harmonic decay: k times the bound settles to a constant
    first, last = bounds.bounds[9] * 10, bounds.bounds[19] * 20
    assert last > first


def test_generic_moduli_bounds_are_constant(analysis):
    bounds = moduli_bounds(analysis(RUNNING).complex, 10)
    assert len(set(bounds.bounds)) == 1
    assert bounds.bounds[0] > 0
    assert bounds.first_exceeding == math.floor(1.0 / bounds.bounds[0]) + 1


def test_nbt_moduli_bounds_are_empty(analysis):
    bounds = moduli_bounds(analysis(NBT_THIRD).complex, 10)
    assert bounds.bounds == ()
    assert bounds.first_exceeding is None


def test_moduli_count_must_be_positive(analysis):
    with pytest.raises(DomainError):
        moduli_bounds(analysis(LHE_THIRD).complex, 0)


def test_iterate_stays_inside_rectangles(analysis):
    complex_ = analysis(RUNNING).complex
    rect = complex_.rectangle(1)
    start = ComplexPoint(1, rect.width / math.pi, rect.height / math.e)
    points = iterate(complex_, start, 5)
    assert len(points) == 6
    assert points[0] == start
    for p in points:
        r = complex_.rectangle(p.strip)
        assert 0 < p.x < r.width
        assert 0 < p.y < r.height


def test_iterate_rejects_boundary_points(analysis):
    complex_ = analysis(RUNNING).complex
    with pytest.raises(EscapeError) as err:
        iterate(complex_, ComplexPoint(1, 0.0, 0.1), 3)
    assert err.value.partial_orbit == []
    with pytest.raises(DomainError):
        iterate(complex_, ComplexPoint(1, 0.1, 0.1), -1)


def test_iterate_stretches_horizontally_and_contracts_vertically(analysis):
    complex_ = analysis(RUNNING).complex
    rect = complex_.rectangle(1)
    x, y, delta = rect.width / math.pi, rect.height / math.e, 1e-6
    base = iterate(complex_, ComplexPoint(1, x, y), 1)[1]
    wide = iterate(complex_, ComplexPoint(1, x + delta, y), 1)[1]
    tall = iterate(complex_, ComplexPoint(1, x, y + delta), 1)[1]
    assert base.strip == wide.strip == tall.strip
    assert abs(wide.x - base.x) == pytest.approx(complex_.lam * delta, rel=1e-6)
    assert wide.y == pytest.approx(base.y, abs=1e-12)
    assert abs(tall.y - base.y) == pytest.approx(delta / complex_.lam, rel=1e-6)
    assert tall.x == pytest.approx(base.x, abs=1e-12)


def test_iterate_is_injective_on_a_grid(analysis):
    complex_ = analysis(RUNNING).complex
    images = set()
    count = 0
    for strip in range(1, complex_.size):
        rect = complex_.rectangle(strip)
        for a in (0.13, 0.37, 0.61, 0.89):
            for b in (0.21, 0.53, 0.77):
                point = iterate(complex_, ComplexPoint(strip, a * rect.width, b * rect.height), 1)[1]
                images.add((point.strip, round(point.x, 9), round(point.y, 9)))
                count += 1
    assert len(images) == count


@pytest.mark.parametrize("text", [PREPERIODIC_V1, PREPERIODIC_V2])
def test_preperiodic_complex_census_and_render(analysis, text):
    result = analysis(text, depth=20)
    complex_ = result.complex
    assert complex_.case is not None
    assert complex_.horizontal_intervals
    census = singularity_census(complex_)
    assert census.one_prong_orbit
    svg = render_svg(complex_)
    assert svg.count('class="strip"') == len(complex_.rectangles)


def test_first_exceeding_agrees_with_direct_summation(analysis):
    complex_ = analysis(LHE_THIRD).complex
    c1, c2, c3 = endpoint_constants(complex_)
    target = 2 * moduli_bounds(complex_, 5).partial_sums[-1]
    k = moduli_bounds(complex_, 5, target=target).first_exceeding
    assert k > 5
    terms = c1 / (c2 * np.arange(1, k + 1) + c3)
    assert terms.sum() > target
    assert terms[:-1].sum() <= target
