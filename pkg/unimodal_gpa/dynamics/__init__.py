"""Unimodal generalized pseudo-Anosov maps.

Symbolic dynamics of unimodal kneading sequences and the surface maps
built from them:
- heights of kneading sequences and the landmark sequences of each height
- the critical orbit, its strip transition matrix and the MIA test
- invariant generalized train tracks and their junction classification
- Perron-Frobenius data with the infinitesimal edge weights
- the outside map and its escaping orbit
- the rectangle complex, its singularities and annulus modulus bounds
"""

from .errors import (
    BaseError,
    ConventionError,
    DomainError,
    EscapeError,
    HeightNotFoundError,
    InternalConsistencyError,
    NotKneadingError,
    NotMIAError,
    SequenceSyntaxError,
)
from .geometry import build_complex, iterate, moduli_bounds, singularity_census
from .height import classify, height, height_words
from .orbit import critical_orbit, mia_check, strip_cover
from .outside import outside_orbit
from .render import render_svg
from .spectral import spectral_data
from .symbolic import BinarySeq, Word, parse_seq
from .traintrack import classify_junctions, describe, grow_invariant_track, validate_track

__all__ = [
    "BaseError",
    "BinarySeq",
    "ConventionError",
    "DomainError",
    "EscapeError",
    "HeightNotFoundError",
    "InternalConsistencyError",
    "NotKneadingError",
    "NotMIAError",
    "SequenceSyntaxError",
    "Word",
    "build_complex",
    "classify",
    "classify_junctions",
    "critical_orbit",
    "describe",
    "grow_invariant_track",
    "height",
    "height_words",
    "iterate",
    "mia_check",
    "moduli_bounds",
    "outside_orbit",
    "parse_seq",
    "render_svg",
    "singularity_census",
    "spectral_data",
    "strip_cover",
    "validate_track",
]
__version__ = "1.0.0"
