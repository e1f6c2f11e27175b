"""Perron-Frobenius data of the transition matrix and its infinitesimal extension."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np
import sympy

from .const import (
    CHAR_POLY_AGREEMENT,
    CHAR_POLY_CHECK_MAX_SIZE,
    DEFAULT_TOLERANCE,
    POWER_ITERATION_LIMIT,
    SWITCH_TOLERANCE,
    Side,
)
from .errors import DomainError, InternalConsistencyError, NotMIAError
from .orbit import StripCover, mia_check
from .traintrack import CHORD, CLOSE, OPEN, TrainTrack
from .util import summarize_for_logging

_LOGGER = logging.getLogger(__name__)

NORMALIZATION_L2 = "l2"
NORMALIZATION_L1 = "l1"
NORMALIZATIONS = (NORMALIZATION_L2, NORMALIZATION_L1)

_LAMBDA = sympy.Symbol("lambda")


@dataclass(frozen=True)
class SpectralData:
    """λ with widths X, heights Y and the infinitesimal heights Yp."""

    lam: float
    X: np.ndarray = field(compare=False)
    Y: np.ndarray = field(compare=False)
    Yp: dict[int, float] = field(compare=False)
    tail_bound: float
    switch_residual: float
    normalization: str = NORMALIZATION_L2

    @property
    def entropy(self) -> float:
        return topological_entropy(self.lam)


def topological_entropy(lam: float) -> float:
    return math.log(lam)


def char_poly(matrix) -> list[int]:
    """Return the characteristic polynomial of an integer matrix, leading coefficient first."""
    poly = sympy.Matrix(np.asarray(matrix).tolist()).charpoly(_LAMBDA)
    return [int(c) for c in poly.all_coeffs()]


def largest_real_root(coefficients, tol: float = DEFAULT_TOLERANCE) -> float:
    """Isolate the largest real root of an integer polynomial to within tol."""
    poly = sympy.Poly([int(c) for c in coefficients], _LAMBDA)
    intervals = poly.intervals(eps=sympy.Rational(repr(tol)))
    if not intervals:
        raise InternalConsistencyError("characteristic polynomial has no real root")
    (lo, hi), _ = max(intervals, key=lambda item: item[0][1])
    return float((lo + hi) / 2)


def _power_iteration(matrix: np.ndarray, tol: float) -> tuple[float, np.ndarray] | None:
    v = np.ones(matrix.shape[0])
    v /= np.linalg.norm(v)
    for iteration in range(1, POWER_ITERATION_LIMIT + 1):
        w = matrix @ v
        w /= np.linalg.norm(w)
        lam = float(w @ (matrix @ w))
        residual = float(np.max(np.abs(matrix @ w - lam * w)))
        if residual <= tol * lam:
            _LOGGER.debug("power iteration converged after %s steps: λ=%s", iteration, lam)
            return lam, w
        v = w
    return None


def _null_vector(matrix: np.ndarray, lam: float) -> np.ndarray:
    _, _, vh = np.linalg.svd(matrix - lam * np.eye(matrix.shape[0]))
    vector = vh[-1]
    return vector if vector.sum() > 0 else -vector


def perron(cover, tol: float = DEFAULT_TOLERANCE, normalization: str = NORMALIZATION_L2):
    """Return (λ, X, Y) with AY = λY and AᵀX = λX.

    X is scaled to unit length (l2 or l1 per `normalization`) and Y so that
    Σ x_i y_i = 1.
    """
    if normalization not in NORMALIZATIONS:
        raise DomainError(f"unknown normalization {normalization!r}")
    matrix = cover.matrix if isinstance(cover, StripCover) else np.asarray(cover)
    if not mia_check(matrix):
        raise NotMIAError("transition matrix is not irreducible and aperiodic")
    a = matrix.astype(float)
    right = _power_iteration(a, tol)
    left = _power_iteration(a.T, tol)
    if right is None or left is None:
        lam = largest_real_root(char_poly(matrix), tol)
        _LOGGER.warning("power iteration did not settle, using polynomial root λ=%s", lam)
        y, x = _null_vector(a, lam), _null_vector(a.T, lam)
    else:
        lam, y = right
        x = left[1]
    x, y = np.abs(x), np.abs(y)
    if min(x.min(), y.min()) <= 0:
        raise InternalConsistencyError("Perron vectors are not positive")
    if matrix.shape[0] <= CHAR_POLY_CHECK_MAX_SIZE:
        root = largest_real_root(char_poly(matrix))
        if abs(root - lam) > CHAR_POLY_AGREEMENT * max(1.0, lam):
            raise InternalConsistencyError(f"power iteration λ={lam} disagrees with root {root}")
    x = x / (np.linalg.norm(x) if normalization == NORMALIZATION_L2 else x.sum())
    y = y / float(x @ y)
    return lam, x, y


def _edge_vectors(track: TrainTrack, Y) -> tuple[list[int], np.ndarray, np.ndarray]:
    ids = [e.id for e in track.inf_edges]
    index = {e: i for i, e in enumerate(ids)}
    by = np.zeros(len(ids))
    for strip, row in track.b_rows.items():
        for edge, count in row.items():
            if edge in index:
                by[index[edge]] += count * Y[strip - 1]
    pi = np.zeros((len(ids), len(ids)))
    for edge, image in track.pi_map.items():
        pi[index[image], index[edge]] += 1
    return ids, by, pi


def extend_heights(track: TrainTrack, Y, lam: float, depth: int | None = None):
    """Return (Yp, tail_bound) for Y′ = (1/λ)(B + ΠB/λ + Π²B/λ² + …)Y."""
    depth = track.depth if depth is None else depth
    if depth > track.depth:
        raise DomainError(f"depth {depth} exceeds track truncation {track.depth}")
    if lam <= 1:
        raise DomainError(f"λ must exceed 1, got {lam}")
    ids, by, pi = _edge_vectors(track, np.asarray(Y, dtype=float))
    if not ids:
        return {}, float(np.sum(np.asarray(Y))) / (lam - 1)
    if track.stable:
        values = np.linalg.solve(lam * np.eye(len(ids)) - pi, by)
    else:
        values = np.zeros(len(ids))
        term = by / lam
        for _ in range(depth):
            values += term
            term = (pi @ term) / lam
    # Π preserves mass, so the untruncated series sums to ‖BY‖₁/(λ-1)
    tail = max(0.0, float(by.sum()) / (lam - 1) - float(values.sum()))
    yp = {edge: float(values[i]) for i, edge in enumerate(ids)}
    if any(v <= 0 for v in yp.values()):
        _LOGGER.warning("nonpositive infinitesimal weights: %s", summarize_for_logging(yp))
    return yp, tail


def _switch_sum(track: TrainTrack, j: int, side: Side, yp) -> float:
    total = 0.0
    seen = set()
    for token in track.config(j):
        if token.kind == CHORD and token.edge not in seen:
            total += yp[token.edge]
        elif token.kind in (OPEN, CLOSE) and token.side is side and token.edge not in seen:
            total += 2 * yp[token.edge]
        else:
            continue
        seen.add(token.edge)
    return total


def switch_residuals(track: TrainTrack, Y, Yp) -> float:
    """Return the largest switch-condition residual over all switches."""
    worst = 0.0
    for j, side in track.switches():
        strip = j - 1 if side is Side.L else j
        residual = abs(float(Y[strip - 1]) - _switch_sum(track, j, side, Yp))
        worst = max(worst, residual)
    return worst


def spectral_data(
    track: TrainTrack,
    cover: StripCover,
    tol: float = DEFAULT_TOLERANCE,
    depth: int | None = None,
    normalization: str = NORMALIZATION_L2,
) -> SpectralData:
    lam, x, y = perron(cover, tol, normalization)
    yp, tail = extend_heights(track, y, lam, depth)
    residual = switch_residuals(track, y, yp)
    if residual > 2 * tail + SWITCH_TOLERANCE:
        raise InternalConsistencyError(f"switch residual {residual} exceeds twice the tail bound {tail}")
    return SpectralData(
        lam=lam,
        X=x,
        Y=y,
        Yp=yp,
        tail_bound=tail,
        switch_residual=residual,
        normalization=normalization,
    )
