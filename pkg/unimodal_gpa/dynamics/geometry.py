"""Rectangle complex realizing the generalized pseudo-Anosov map.

Strip j becomes a rectangle of width x_j and height y_j, laid left to
right, so point j of the critical orbit sits at the horizontal position
H(j) = x_1 + ... + x_{j-1}. Infinitesimal edges become vertical arc
bands on the rectangle sides, sized by their Yp weights.

Inside rectangle i the image of the left branch occupies the bottom
sub-band and the image of the right branch sits directly above it.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import digamma

from .const import (
    BOUNDARY_TOLERANCE,
    MODULI_SEARCH_LIMIT,
    SWITCH_TOLERANCE,
    EdgeKind,
    Half,
    IdentificationCase,
    KneadingTag,
    ProngAsymptotics,
    Side,
)
from .errors import DomainError, EscapeError, InternalConsistencyError
from .height import KneadingClass
from .orbit import CriticalOrbit, strip_cover
from .outside import OutsidePoint, outside_orbit
from .spectral import SpectralData
from .traintrack import CHORD, CLOSE, OPEN, PUNCT, TrainTrack

_LOGGER = logging.getLogger(__name__)

SHAPE_RECT = "rect"
SHAPE_SEMICIRCLE = "semicircle"
SHAPE_PAIR = "semicircle+rect"

_CASE_BY_TAG = {
    KneadingTag.LHE: IdentificationCase.ENDPOINT,
    KneadingTag.RHE: IdentificationCase.ENDPOINT,
    KneadingTag.NBT: IdentificationCase.NBT,
    KneadingTag.INTERIOR_LOW: IdentificationCase.GENERIC,
    KneadingTag.INTERIOR_HIGH: IdentificationCase.GENERIC,
}

_ASYMPTOTICS_BY_TAG = {
    KneadingTag.LHE: ProngAsymptotics.HOMOCLINIC,
    KneadingTag.RHE: ProngAsymptotics.HOMOCLINIC,
    KneadingTag.NBT: ProngAsymptotics.FINITE,
    KneadingTag.INTERIOR_LOW: ProngAsymptotics.BACKWARD_INFINITY_FORWARD_PERIODIC,
    KneadingTag.INTERIOR_HIGH: ProngAsymptotics.BACKWARD_INFINITY_FORWARD_PERIODIC,
    KneadingTag.HEIGHT_ZERO: ProngAsymptotics.BACKWARD_INFINITY_FORWARD_PERIODIC,
}


@dataclass(frozen=True)
class Rectangle:
    index: int
    left: float
    width: float
    height: float


@dataclass(frozen=True)
class Attachment:
    """Segment of a rectangle side, measured down from the top."""

    junction: int
    side: Side
    top: float
    bottom: float


@dataclass(frozen=True)
class VerticalBand:
    edge: int
    junction: int
    shape: str
    size: float
    attachments: tuple[Attachment, ...]


@dataclass(frozen=True)
class HorizontalInterval:
    label: str
    level: int
    length: float
    shape: str


@dataclass(frozen=True)
class SubBand:
    """Image of one branch of strip `source` inside a rectangle."""

    source: int
    half: str
    offset: float
    height: float


@dataclass(frozen=True)
class ComplexPoint:
    strip: int
    x: float
    y: float


@dataclass(frozen=True)
class RectangleComplex:
    orbit: CriticalOrbit
    cls: KneadingClass
    lam: float
    rectangles: tuple[Rectangle, ...]
    vertical_bands: tuple[VerticalBand, ...]
    horizontal_intervals: tuple[HorizontalInterval, ...]
    boundary_polygon: tuple[OutsidePoint, ...]
    phi_model: dict[int, tuple[SubBand, ...]] = field(compare=False)
    punctures: tuple[tuple[int, float], ...] = ()
    case: IdentificationCase | None = None
    w_v: float = 0.0
    w_h: float = 0.0
    gamma_length: float = 0.0
    depth: int = 0
    track: TrainTrack | None = field(default=None, compare=False)

    @property
    def size(self) -> int:
        return self.orbit.size

    @property
    def n(self) -> int:
        return self.cls.q.denominator if self.cls.q else 0

    def position(self, j: int) -> float:
        """Horizontal position H(j) of point j."""
        if j == self.size:
            last = self.rectangles[-1]
            return last.left + last.width
        return self.rectangles[j - 1].left

    def rectangle(self, i: int) -> Rectangle:
        return self.rectangles[i - 1]


def _positions(x) -> list[float]:
    positions = [0.0]
    for width in x:
        positions.append(positions[-1] + float(width))
    return positions


def _vertical_bands(track: TrainTrack, yp) -> tuple[tuple[VerticalBand, ...], tuple]:
    spans: dict[int, list[Attachment]] = {}
    punctures = []
    for j in range(1, track.orbit.size + 1):
        offsets = {Side.L: 0.0, Side.R: 0.0}
        opened: dict[int, float] = {}
        for token in track.config(j):
            if token.kind == PUNCT:
                side = Side.R if j < track.orbit.size else Side.L
                punctures.append((j, offsets[side]))
                continue
            weight = yp[token.edge]
            if token.kind == CHORD:
                for side in Side:
                    spans.setdefault(token.edge, []).append(
                        Attachment(j, side, offsets[side], offsets[side] + weight)
                    )
                    offsets[side] += weight
            elif token.kind == OPEN:
                opened[token.edge] = offsets[token.side]
                offsets[token.side] += weight
            elif token.kind == CLOSE:
                offsets[token.side] += weight
                spans.setdefault(token.edge, []).append(
                    Attachment(j, token.side, opened.pop(token.edge), offsets[token.side])
                )
    bands = []
    for edge in track.inf_edges:
        shape = SHAPE_RECT if edge.kind in (EdgeKind.CHORD, EdgeKind.BIGON_SIDE) else SHAPE_SEMICIRCLE
        bands.append(
            VerticalBand(
                edge=edge.id,
                junction=edge.junction,
                shape=shape,
                size=yp[edge.id],
                attachments=tuple(spans.get(edge.id, ())),
            )
        )
    return tuple(bands), tuple(punctures)


def _sub_bands(orbit: CriticalOrbit, y, lam: float) -> dict[int, tuple[SubBand, ...]]:
    cover = strip_cover(orbit)
    sources: dict[int, dict[str, int]] = {i: {} for i in range(1, orbit.size)}
    for j in range(1, orbit.size):
        strips = cover.cover(j)
        branch = orbit.strip_branch(j)
        if branch == "fold":
            split = orbit.size - orbit.image(j)
            halves = [("left", i) for i in strips[:split]] + [("right", i) for i in strips[split:]]
        else:
            halves = [(branch, i) for i in strips]
        for half, i in halves:
            if half in sources[i]:
                raise InternalConsistencyError(f"rectangle {i} receives two {half} sub-bands")
            sources[i][half] = j
    model = {}
    for i, halves in sources.items():
        bands, offset = [], 0.0
        for half in ("left", "right"):
            if half in halves:
                height = float(y[halves[half] - 1]) / lam
                bands.append(SubBand(halves[half], half, offset, height))
                offset += height
        if abs(offset - float(y[i - 1])) > SWITCH_TOLERANCE * max(1.0, float(y[i - 1])):
            raise InternalConsistencyError(f"sub-bands of rectangle {i} do not tile its height")
        model[i] = tuple(bands)
    return model


def _check_widths(orbit: CriticalOrbit, x, lam: float) -> None:
    cover = strip_cover(orbit)
    for j in range(1, orbit.size):
        covered = sum(float(x[i - 1]) for i in cover.cover(j))
        if abs(lam * float(x[j - 1]) - covered) > SWITCH_TOLERANCE * max(1.0, covered):
            raise InternalConsistencyError(f"image of strip {j} does not cover its strips")


def _switch_check(track: TrainTrack, spectral: SpectralData) -> None:
    limit = 2 * spectral.tail_bound + SWITCH_TOLERANCE
    if spectral.switch_residual > limit:
        raise InternalConsistencyError(
            f"switch sums off by {spectral.switch_residual}, limit {limit}"
        )


def _gamma_length(orbit: CriticalOrbit, positions, lam: float) -> float:
    """Return H(p) for the point p > c with f(p) = f(a)."""
    n = orbit.size

    def at(j):
        return positions[j - 1]

    target = at(orbit.image(1))
    for j in range(1, n):
        branch = orbit.strip_branch(j)
        if branch == "left":
            continue
        if branch == "fold":
            u_c = (at(n) - at(orbit.image(j))) / lam
            if at(orbit.image(j + 1)) <= target <= at(n):
                return at(j) + u_c + (at(n) - target) / lam
            continue
        high, low = at(orbit.image(j)), at(orbit.image(j + 1))
        if low <= target <= high:
            return at(j) + (high - target) / lam
    raise InternalConsistencyError("no point of the right branch maps to f(a)")


def _horizontal_intervals(
    case: IdentificationCase, n: int, lam: float, w_v: float, w_h: float, depth: int, i0: int
) -> tuple[HorizontalInterval, ...]:
    intervals = []
    if case is IdentificationCase.ENDPOINT:
        for j in range(depth):
            for i in range(n):
                intervals.append(
                    HorizontalInterval(f"u{i},{j}", j, 2 * w_v / lam ** (i + n * j), SHAPE_SEMICIRCLE)
                )
                intervals.append(
                    HorizontalInterval(
                        f"v{i},{j}", j, 2 * w_h / lam ** ((i - i0) % n + n * j), SHAPE_SEMICIRCLE
                    )
                )
        return tuple(intervals)
    deep_shape = SHAPE_RECT if case is IdentificationCase.NBT else SHAPE_PAIR
    for j in range(depth):
        shape = SHAPE_SEMICIRCLE if j < n else deep_shape
        intervals.append(HorizontalInterval(f"eta{-j}", -j, 2 * w_h / lam**j, shape))
    return tuple(intervals)


def build_complex(
    track: TrainTrack, spectral: SpectralData, orbit: CriticalOrbit, cls: KneadingClass
) -> RectangleComplex:
    lam, x, y = spectral.lam, spectral.X, spectral.Y
    _switch_check(track, spectral)
    _check_widths(orbit, x, lam)
    positions = _positions(x)
    rectangles = tuple(
        Rectangle(i, positions[i - 1], float(x[i - 1]), float(y[i - 1])) for i in range(1, orbit.size)
    )
    bands, punctures = _vertical_bands(track, spectral.Yp)
    model = _sub_bands(orbit, y, lam)
    complex_kwargs = dict(
        orbit=orbit,
        cls=cls,
        lam=lam,
        rectangles=rectangles,
        vertical_bands=bands,
        phi_model=model,
        punctures=punctures,
        depth=track.depth,
        track=track,
    )
    if cls.q == 0:
        return RectangleComplex(horizontal_intervals=(), boundary_polygon=(), **complex_kwargs)
    if cls.tag not in _CASE_BY_TAG:
        raise DomainError(f"no rectangle complex for a sequence tagged {cls.tag.value}")
    n = cls.q.denominator
    case = _CASE_BY_TAG[cls.tag]
    loops = [b.size for b in bands if b.shape == SHAPE_SEMICIRCLE]
    w_v = max(loops) if loops else 0.0
    gamma = _gamma_length(orbit, positions, lam)
    w_h = gamma / 2
    outside = outside_orbit(orbit.s)
    polygon = outside.steps[1 : n + 1]
    i0 = next((i for i, p in enumerate(outside.lambda_orbit) if p.half is Half.UPPER), 0)
    intervals = _horizontal_intervals(case, n, lam, w_v, w_h, track.depth, i0)
    _LOGGER.debug("complex for %s: case=%s w_v=%s w_h=%s", orbit.s, case.value, w_v, w_h)
    return RectangleComplex(
        horizontal_intervals=intervals,
        boundary_polygon=tuple(polygon),
        case=case,
        w_v=w_v,
        w_h=w_h,
        gamma_length=gamma,
        **complex_kwargs,
    )


def _locate(complex_: RectangleComplex, h: float) -> int:
    for rect in complex_.rectangles:
        left, right = rect.left, rect.left + rect.width
        if left < h < right:
            if min(h - left, right - h) <= BOUNDARY_TOLERANCE:
                return 0
            return rect.index
    return 0


def _step(complex_: RectangleComplex, p: ComplexPoint) -> ComplexPoint | None:
    orbit, lam = complex_.orbit, complex_.lam
    j = p.strip
    rect = complex_.rectangle(j)
    branch = orbit.strip_branch(j)
    start = complex_.position(orbit.image(j))
    if branch == "left":
        h, half = start + lam * p.x, "left"
    elif branch == "right":
        h, half = start - lam * p.x, "right"
    else:
        end = complex_.position(orbit.size)
        u_c = (end - start) / lam
        if abs(p.x - u_c) <= BOUNDARY_TOLERANCE:
            return None
        if p.x < u_c:
            h, half = start + lam * p.x, "left"
        else:
            h, half = end - lam * (p.x - u_c), "right"
    target = _locate(complex_, h)
    if not target:
        return None
    band = next(
        (b for b in complex_.phi_model[target] if b.source == j and b.half == half), None
    )
    if band is None:
        raise InternalConsistencyError(f"strip {j} has no {half} sub-band in rectangle {target}")
    v = p.y / lam if half == "left" else (rect.height - p.y) / lam
    return ComplexPoint(target, h - complex_.rectangle(target).left, band.offset + v)


def _is_interior(complex_: RectangleComplex, p: ComplexPoint) -> bool:
    if not 1 <= p.strip < complex_.size:
        return False
    rect = complex_.rectangle(p.strip)
    return (
        BOUNDARY_TOLERANCE < p.x < rect.width - BOUNDARY_TOLERANCE
        and BOUNDARY_TOLERANCE < p.y < rect.height - BOUNDARY_TOLERANCE
    )


def iterate(complex_: RectangleComplex, p: ComplexPoint, steps: int) -> list[ComplexPoint]:
    """Return p and its first `steps` images under the piecewise-affine map."""
    if steps < 0:
        raise DomainError(f"steps must be non-negative, got {steps}")
    orbit = [p]
    if not _is_interior(complex_, p):
        raise EscapeError(f"{p} is not an interior point", partial_orbit=[])
    for _ in range(steps):
        image = _step(complex_, orbit[-1])
        if image is None or not _is_interior(complex_, image):
            raise EscapeError(
                f"orbit reaches a rectangle boundary after {len(orbit) - 1} steps",
                partial_orbit=list(orbit),
            )
        orbit.append(image)
    return orbit


@dataclass(frozen=True)
class SingularityCensus:
    one_prong_orbit: tuple[int, ...]
    asymptotics: ProngAsymptotics
    three_prongs: int
    n_prongs: tuple[tuple[str, int], ...] = ()
    essential: tuple[str, ...] = ()
    finite: bool = False


def _bubble_orbit(track: TrainTrack) -> list[int]:
    bubbles = {e.id for e in track.inf_edges if e.kind is EdgeKind.BUBBLE}
    images = set(track.pi_map.values())
    starts = sorted(b for b in bubbles if b not in images) or sorted(bubbles)[:1]
    ordered = []
    for start in starts:
        edge = start
        while edge in bubbles and edge not in ordered:
            ordered.append(edge)
            edge = track.pi_map.get(edge)
    ordered.extend(sorted(bubbles - set(ordered)))
    return ordered


def singularity_census(complex_: RectangleComplex, depth: int | None = None) -> SingularityCensus:
    track = complex_.track
    if track is None:
        raise DomainError("the complex carries no train track")
    desc = track.description
    one_prongs = _bubble_orbit(track)
    three = 0
    essential = []
    for j in range(1, complex_.size + 1):
        config = desc.junction(j).config if desc is not None else None
        for side in Side:
            if (side is Side.L and j == 1) or (side is Side.R and j == complex_.size):
                continue
            ends = sum(
                1 for t in track.config(j) if t.kind == CHORD or (t.kind in (OPEN, CLOSE) and t.side is side)
            )
            if config is not None and config.family == "S":
                if ends:
                    essential.append(f"junction {j}{side.value}")
            else:
                three += max(ends - 1, 0)
    n_prongs = []
    case = complex_.case
    if case is IdentificationCase.NBT:
        n_prongs.append(("boundary periodic orbit", complex_.n))
    elif case is IdentificationCase.ENDPOINT:
        essential.append("point at infinity")
    elif case is IdentificationCase.GENERIC:
        essential.append("boundary periodic orbit")
        levels = depth if depth is not None else complex_.depth
        three += sum(1 for h in complex_.horizontal_intervals if -h.level < levels)
    asymptotics = _ASYMPTOTICS_BY_TAG[complex_.cls.tag]
    return SingularityCensus(
        one_prong_orbit=tuple(one_prongs),
        asymptotics=asymptotics,
        three_prongs=three,
        n_prongs=tuple(n_prongs),
        essential=tuple(essential),
        finite=asymptotics is ProngAsymptotics.FINITE,
    )


def modulus_lower_bound(width: float, area: float) -> float:
    """Width²/Area, the standard lower estimate for the modulus of an annulus."""
    return width * width / area


def round_annulus_bound(r: float, big_r: float) -> float:
    return modulus_lower_bound(big_r - r, math.pi * (big_r * big_r - r * r))


@dataclass(frozen=True)
class ModuliBounds:
    bounds: tuple[float, ...]
    partial_sums: tuple[float, ...]
    first_exceeding: int | None
    note: str = ""


def endpoint_constants(complex_: RectangleComplex) -> tuple[float, float, float]:
    """Return (C1, C2, C3) with Mod(X_k) >= C1 / (C2 k + C3).

    The common factor λ^{-nk} of the width and the area bound is cancelled.
    """
    n, lam = complex_.n, complex_.lam
    w, big_w = min(complex_.w_v, complex_.w_h), max(complex_.w_v, complex_.w_h)
    r0 = w / lam ** (n - 1)
    c1 = r0 * (1 - lam ** (-n))
    c2 = n * math.pi * r0 * (1 + lam ** (-n))
    c3 = c2 + n * 4 * big_w * lam**n / (lam**n - 1)
    return c1, c2, c3


def _generic_bound(complex_: RectangleComplex) -> float:
    """Best constant bound w/C over the junctions with infinitely many bubbles."""
    period = complex_.size if complex_.orbit.periodic else complex_.orbit.l
    mu = complex_.lam ** (-period)
    best = 0.0
    for j in range(1, complex_.size + 1):
        loops = [
            b.size
            for b in complex_.vertical_bands
            if b.junction == j and b.shape == SHAPE_SEMICIRCLE
        ]
        if len(loops) < 2:
            continue
        c = max(loops)
        width = min([c] + [r.width / 2 for r in complex_.rectangles if r.index in (j - 1, j)])
        outer = (width + c) / (1 - mu)
        area = (math.pi / 2) * width * (2 * outer - width)
        best = max(best, modulus_lower_bound(width, area))
    return best


def moduli_bounds(complex_: RectangleComplex, count: int, target: float = 1.0) -> ModuliBounds:
    if count < 1:
        raise DomainError(f"count must be positive, got {count}")
    if complex_.case is None:
        return ModuliBounds((), (), None, "no identifications at height zero")
    if complex_.case is IdentificationCase.NBT:
        return ModuliBounds((), (), None, "finitely many singularities, nothing to bound")
    if complex_.case is IdentificationCase.ENDPOINT:
        c1, c2, c3 = endpoint_constants(complex_)
        bounds = [c1 / (c2 * k + c3) for k in range(1, count + 1)]
    else:
        best = _generic_bound(complex_)
        if best <= 0:
            return ModuliBounds((), (), None, "no junction resolved at this depth")
        bounds = [best] * count
    partial = [float(t) for t in np.cumsum(bounds)]
    first = next((k for k, total in enumerate(partial, start=1) if total > target), None)
    if first is None:
        first = _first_exceeding(complex_, count, target)
    return ModuliBounds(tuple(bounds), tuple(partial), first)


def _endpoint_sum(constants: tuple[float, float, float], k: int) -> float:
    """Closed form of sum_{i<=k} c1 / (c2 i + c3) through the digamma function."""
    c1, c2, c3 = constants
    a = c3 / c2
    return (c1 / c2) * float(digamma(k + 1 + a) - digamma(1 + a))


def _first_exceeding(complex_: RectangleComplex, k: int, target: float) -> int | None:
    if complex_.case is IdentificationCase.GENERIC:
        best = _generic_bound(complex_)
        return math.floor(target / best) + 1
    constants = endpoint_constants(complex_)
    lo, hi = k, 2 * k
    while _endpoint_sum(constants, hi) <= target:
        lo, hi = hi, 2 * hi
        if hi > MODULI_SEARCH_LIMIT:
            return None
    # smallest k in (lo, hi] whose partial sum passes the target
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _endpoint_sum(constants, mid) > target:
            hi = mid
        else:
            lo = mid
    return hi


def complex_area(complex_: RectangleComplex) -> float:
    return float(sum(r.width * r.height for r in complex_.rectangles))


def level_ratio(intervals, label_prefix: str, i: int) -> list[float]:
    """Ratios |u^i_{j+1}| / |u^i_j| along one family of endpoint intervals."""
    lengths = [h.length for h in intervals if h.label.startswith(f"{label_prefix}{i},")]
    return [b / a for a, b in zip(lengths, lengths[1:])]

