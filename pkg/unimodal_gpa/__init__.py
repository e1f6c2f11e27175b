"""Unimodal generalized pseudo-Anosov toolkit.

Architecture:
- dynamics/ is the mathematical library (sequences, heights, train tracks,
  spectral data, outside map, rectangle complex)
- this package owns option handling, the `gpa` command line and the JSON
  payloads, and chains the library stages through `analyze`

Pipeline for one kneading sequence:
- parse and classify (height, landmark tag)
- critical orbit, strip transition matrix and MIA test
- Perron-Frobenius data, which fixes the default truncation depth
- invariant train track, junction classification, infinitesimal weights
- rectangle complex
"""

import logging
from dataclasses import dataclass

from .config import resolve_depth
from .dynamics.const import DEFAULT_TOLERANCE
from .dynamics.errors import NotMIAError
from .dynamics.geometry import RectangleComplex, build_complex
from .dynamics.height import KneadingClass, classify
from .dynamics.orbit import CriticalOrbit, StripCover, critical_orbit, mia_check, strip_cover
from .dynamics.spectral import SpectralData, perron, spectral_data
from .dynamics.symbolic import BinarySeq, parse_seq
from .dynamics.traintrack import (
    TrackDescription,
    TrainTrack,
    classify_junctions,
    grow_invariant_track,
)

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class Analysis:
    s: BinarySeq
    cls: KneadingClass
    orbit: CriticalOrbit
    cover: StripCover
    description: TrackDescription
    track: TrainTrack
    spectral: SpectralData
    depth: int
    complex: RectangleComplex | None = None


def prepare(text: str) -> tuple[BinarySeq, KneadingClass, CriticalOrbit, StripCover]:
    """Parse a sequence and run the stages every verb needs."""
    s = parse_seq(text)
    cls = classify(s)
    orbit = critical_orbit(s)
    cover = strip_cover(orbit)
    if not mia_check(cover):
        raise NotMIAError(f"the transition matrix of {s} is not irreducible and aperiodic")
    return s, cls, orbit, cover


def analyze(
    text: str,
    depth: int | None = None,
    tol: float = DEFAULT_TOLERANCE,
    build: bool = True,
    environ=None,
) -> Analysis:
    s, cls, orbit, cover = prepare(text)
    lam, _, _ = perron(cover, tol)
    depth = resolve_depth(depth, lam, environ)
    _LOGGER.info("analyzing %s at depth %s", s, depth)
    description = classify_junctions(orbit, cls.q, cls)
    track = grow_invariant_track(orbit, depth, description)
    spectral = spectral_data(track, cover, tol)
    complex_ = build_complex(track, spectral, orbit, cls) if build else None
    return Analysis(
        s=s,
        cls=cls,
        orbit=orbit,
        cover=cover,
        description=description,
        track=track,
        spectral=spectral,
        depth=depth,
        complex=complex_,
    )
