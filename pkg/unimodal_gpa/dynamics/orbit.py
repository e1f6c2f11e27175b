"""Critical orbit model and strip transition matrix.

Points of the orbit of s are numbered 1..N by unimodal order, so point j
sits in junction j and strip j is the interval between points j and j + 1.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ConventionError,
    DomainError,
    InternalConsistencyError,
    NotKneadingError,
)
from .symbolic import BinarySeq, distinct_shifts, is_kneading, unimodal_key

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class CriticalOrbit:
    """Ordered critical orbit with the induced map succ (π or ρ).

    In the periodic case c_slot is the point c = succ⁻¹(N); in the
    preperiodic case the critical point lies strictly inside strip c_slot.
    """

    s: BinarySeq
    size: int
    periodic: bool
    k: int
    l: int
    points: tuple[BinarySeq, ...]
    succ: tuple[int, ...]
    c_slot: int

    def image(self, j: int) -> int:
        return self.succ[j - 1]

    def point(self, j: int) -> BinarySeq:
        return self.points[j - 1]

    def preimages(self, j: int) -> list[int]:
        return [i for i in range(1, self.size + 1) if self.image(i) == j]

    def forward(self, start: int, steps: int) -> int:
        j = start
        for _ in range(steps):
            j = self.image(j)
        return j

    def is_periodic_point(self, j: int) -> bool:
        if self.periodic:
            return True
        return any(self.forward(j, r) == j for r in range(1, self.l + 1))

    def junction_branch(self, j: int) -> str:
        """Return 'left', 'right' or 'fold' for the branch containing junction j."""
        if self.periodic:
            if j == self.c_slot:
                return "fold"
            return "left" if j < self.c_slot else "right"
        return "left" if j <= self.c_slot else "right"

    def strip_branch(self, j: int) -> str:
        """Return 'left', 'right' or 'fold' for the branch containing strip j."""
        if self.periodic:
            return "left" if j < self.c_slot else "right"
        if j == self.c_slot:
            return "fold"
        return "left" if j < self.c_slot else "right"


def critical_orbit(s: BinarySeq) -> CriticalOrbit:
    if not is_kneading(s):
        raise NotKneadingError(f"{s} is not a kneading sequence")
    if s.is_periodic and s.period[-1] != 1:
        raise ConventionError(f"period word of {s} must end in 1")
    shifts = distinct_shifts(s)
    if len(set(shifts)) != len(shifts):
        raise InternalConsistencyError(f"repeated shifts in the orbit of {s}")
    if len(shifts) < 2:
        raise DomainError(f"orbit of {s} is a single point")
    points = tuple(sorted(shifts, key=unimodal_key))
    if points[-1] != s:
        raise InternalConsistencyError(f"{s} is not the largest point of its orbit")
    index = {p: j for j, p in enumerate(points, start=1)}
    succ = tuple(index[p.shift()] for p in points)
    size = len(points)
    if s.is_periodic:
        c_slot = succ.index(size) + 1
    else:
        c_slot = max(j for j, p in enumerate(points, start=1) if p[0] == 0)
    orbit = CriticalOrbit(
        s=s,
        size=size,
        periodic=s.is_periodic,
        k=len(s.preperiod),
        l=len(s.period),
        points=points,
        succ=succ,
        c_slot=c_slot,
    )
    _LOGGER.debug("critical orbit of %s: succ=%s c=%s", s, succ, c_slot)
    return orbit


@dataclass(frozen=True)
class StripCover:
    """Strip images of the critical orbit and the transition matrix A."""

    covers: tuple[tuple[int, ...], ...]
    matrix: np.ndarray = field(compare=False)
    fold_strip: int | None = None

    @property
    def size(self) -> int:
        return len(self.covers)

    def cover(self, j: int) -> tuple[int, ...]:
        return self.covers[j - 1]

    @property
    def has_double_cover(self) -> bool:
        return bool((self.matrix > 1).any())


def _strips_between(a: int, b: int) -> list[int]:
    """Strips crossed going from junction a to junction b, in travel order."""
    if a < b:
        return list(range(a, b))
    return list(range(a - 1, b - 1, -1))


def strip_cover(orbit: CriticalOrbit) -> StripCover:
    n = orbit.size
    covers = []
    fold_strip = None
    for j in range(1, n):
        a, b = orbit.image(j), orbit.image(j + 1)
        if orbit.strip_branch(j) == "fold":
            fold_strip = j
            covers.append(tuple(_strips_between(a, n) + _strips_between(n, b)))
        else:
            covers.append(tuple(_strips_between(a, b)))
    matrix = np.zeros((n - 1, n - 1), dtype=np.int64)
    for j, cover in enumerate(covers):
        for i in cover:
            matrix[i - 1, j] += 1
    matrix.setflags(write=False)
    if fold_strip is not None and (matrix > 1).any():
        _LOGGER.debug("fold strip %s double covers %s", fold_strip, np.nonzero(matrix > 1)[0] + 1)
    return StripCover(covers=tuple(covers), matrix=matrix, fold_strip=fold_strip)


def is_primitive(matrix) -> bool:
    """Return true when some power A^k with k <= (size)^2 + 1 is positive."""
    pattern = (np.asarray(matrix) > 0).astype(np.int64)
    size = pattern.shape[0]
    if size == 0:
        return False
    power = pattern.copy()
    for _ in range(size * size + 1):
        if power.all():
            return True
        power = ((power @ pattern) > 0).astype(np.int64)
    return False


def mia_check(cover) -> bool:
    matrix = cover.matrix if isinstance(cover, StripCover) else cover
    return is_primitive(matrix)
