from unimodal_gpa.dynamics.render import RenderOptions, render_svg

from .conftest import HORSESHOE, RUNNING


def test_render_is_deterministic(analysis):
    complex_ = analysis(RUNNING).complex
    assert render_svg(complex_) == render_svg(complex_)


def test_render_contains_strips_and_boundary(analysis):
    complex_ = analysis(RUNNING).complex
    svg = render_svg(complex_)
    assert svg.startswith('<?xml version="1.0" encoding="UTF-8"?>')
    assert "<svg " in svg
    assert svg.count('class="strip"') == len(complex_.rectangles)
    assert 'class="boundary"' in svg
    assert svg.count('class="puncture"') == len(complex_.punctures)


def test_render_without_polygon(analysis):
    svg = render_svg(analysis(RUNNING).complex, RenderOptions(show_polygon=False))
    assert 'class="boundary"' not in svg


def test_horseshoe_has_no_boundary_polygon(analysis):
    svg = render_svg(analysis(HORSESHOE, depth=8).complex)
    assert 'class="strip"' in svg
    assert 'class="boundary"' not in svg
    assert 'class="band horizontal"' not in svg


def test_scale_changes_size(analysis):
    complex_ = analysis(RUNNING).complex
    small = render_svg(complex_, RenderOptions(scale=100.0))
    large = render_svg(complex_, RenderOptions(scale=800.0))
    assert small != large
