"""SVG rendering of a rectangle complex.

Layout: rectangles are drawn left to right with a fixed gap between
neighbours for the junctions. Vertical bands live in the gaps, chords as
quadrilaterals joining the two rectangle sides and loops as half discs
bulging into the gap. Horizontal identification intervals are laid along
the top edge from the left, one after another. The boundary polygon is
drawn with its vertices spaced evenly around the outline of the complex.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from .const import Side
from .geometry import SHAPE_RECT, SHAPE_SEMICIRCLE, RectangleComplex

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class RenderOptions:
    scale: float = 400.0
    margin: float = 20.0
    gap: float = 24.0
    puncture_radius: float = 2.5
    show_polygon: bool = True


def _num(value: float) -> str:
    return f"{value:.6f}"


class _Layout:
    def __init__(self, complex_: RectangleComplex, options: RenderOptions):
        self.complex = complex_
        self.options = options
        self.top = options.margin + options.scale * max(
            [h.length for h in complex_.horizontal_intervals] + [0.0]
        )

    def left_of(self, i: int) -> float:
        rect = self.complex.rectangle(i)
        return self.options.margin + self.options.gap * i + self.options.scale * rect.left

    def right_of(self, i: int) -> float:
        return self.left_of(i) + self.options.scale * self.complex.rectangle(i).width

    def side_x(self, junction: int, side: Side) -> float:
        """x of the rectangle side a switch attaches to."""
        if side is Side.L:
            return self.right_of(junction - 1)
        return self.left_of(junction)

    def gap_center(self, junction: int) -> float:
        if junction == 1:
            return self.left_of(1) - self.options.gap / 2
        return self.right_of(junction - 1) + self.options.gap / 2

    def y(self, offset: float) -> float:
        return self.top + self.options.scale * offset

    @property
    def width(self) -> float:
        return self.right_of(self.complex.size - 1) + self.options.gap + self.options.margin

    @property
    def height(self) -> float:
        tallest = max(r.height for r in self.complex.rectangles)
        return self.y(tallest) + self.options.margin


def _band_element(layout: _Layout, band) -> str:
    if band.shape == SHAPE_RECT and len(band.attachments) == 2:
        left, right = sorted(band.attachments, key=lambda a: a.side.value)
        x0, x1 = layout.side_x(left.junction, left.side), layout.side_x(right.junction, right.side)
        points = [
            (x0, layout.y(left.top)),
            (x1, layout.y(right.top)),
            (x1, layout.y(right.bottom)),
            (x0, layout.y(left.bottom)),
        ]
        text = " ".join(f"{_num(px)},{_num(py)}" for px, py in points)
        return f'<polygon class="band chord" data-edge="{band.edge}" points="{text}"/>'
    if not band.attachments:
        return f'<g class="band empty" data-edge="{band.edge}"/>'
    span = band.attachments[0]
    x = layout.side_x(span.junction, span.side)
    y0, y1 = layout.y(span.top), layout.y(span.bottom)
    radius = (y1 - y0) / 2
    sweep = 1 if span.side is Side.L else 0
    return (
        f'<path class="band loop" data-edge="{band.edge}" '
        f'd="M {_num(x)} {_num(y0)} A {_num(radius)} {_num(radius)} 0 0 {sweep} {_num(x)} {_num(y1)} Z"/>'
    )


def _interval_elements(layout: _Layout) -> list[str]:
    elements = []
    x = layout.left_of(1)
    for interval in layout.complex.horizontal_intervals:
        length = layout.options.scale * interval.length
        if interval.shape == SHAPE_SEMICIRCLE:
            radius = length / 2
            elements.append(
                f'<path class="band horizontal" data-label="{interval.label}" '
                f'd="M {_num(x)} {_num(layout.top)} A {_num(radius)} {_num(radius)} 0 0 1 '
                f'{_num(x + length)} {_num(layout.top)} Z"/>'
            )
        else:
            height = min(length, layout.top - layout.options.margin)
            elements.append(
                f'<rect class="band horizontal" data-label="{interval.label}" x="{_num(x)}" '
                f'y="{_num(layout.top - height)}" width="{_num(length)}" height="{_num(height)}"/>'
            )
        x += length
    return elements


def _polygon_element(layout: _Layout) -> str | None:
    vertices = layout.complex.boundary_polygon
    if not vertices:
        return None
    x0, x1 = layout.left_of(1), layout.right_of(layout.complex.size - 1)
    y0, y1 = layout.top, layout.height - layout.options.margin
    cx, cy = (x0 + x1) / 2, (y0 + y1) / 2
    rx, ry = (x1 - x0) / 2, (y1 - y0) / 2
    points = []
    for j in range(len(vertices)):
        angle = math.pi + 2 * math.pi * j / len(vertices)
        points.append(f"{_num(cx + rx * math.cos(angle))},{_num(cy + ry * math.sin(angle))}")
    return f'<polygon class="boundary" fill="none" points="{" ".join(points)}"/>'


def render_svg(complex_: RectangleComplex, options: RenderOptions | None = None) -> str:
    options = options or RenderOptions()
    layout = _Layout(complex_, options)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_num(layout.width)}" height="{_num(layout.height)}">',
    ]
    for rect in complex_.rectangles:
        lines.append(
            f'<rect class="strip" data-strip="{rect.index}" x="{_num(layout.left_of(rect.index))}" '
            f'y="{_num(layout.y(0))}" width="{_num(options.scale * rect.width)}" '
            f'height="{_num(options.scale * rect.height)}"/>'
        )
    for band in sorted(complex_.vertical_bands, key=lambda b: b.edge):
        lines.append(_band_element(layout, band))
    lines.extend(_interval_elements(layout))
    for junction, offset in complex_.punctures:
        lines.append(
            f'<circle class="puncture" cx="{_num(layout.gap_center(junction))}" '
            f'cy="{_num(layout.y(offset))}" r="{_num(options.puncture_radius)}"/>'
        )
    if options.show_polygon:
        polygon = _polygon_element(layout)
        if polygon is not None:
            lines.append(polygon)
    lines.append("</svg>")
    _LOGGER.debug("rendered %s rectangles and %s bands", len(complex_.rectangles), len(complex_.vertical_bands))
    return "\n".join(lines) + "\n"
