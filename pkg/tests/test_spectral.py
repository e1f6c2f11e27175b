import math

import numpy as np
import pytest

from unimodal_gpa.dynamics.errors import DomainError, NotMIAError
from unimodal_gpa.dynamics.spectral import (
    NORMALIZATION_L1,
    char_poly,
    extend_heights,
    largest_real_root,
    perron,
    topological_entropy,
)
from unimodal_gpa.dynamics.traintrack import grow_invariant_track

from .conftest import HORSESHOE, NBT_THIRD, PREPERIODIC_V1, PREPERIODIC_V2, RUNNING

RUNNING_X = (0.543, 0.104, 0.191, 0.724, 0.175, 0.322)
RUNNING_Y = (0.368, 0.291, 0.509, 0.536, 0.490, 0.620)


def test_running_example_perron_data(cover_of):
    lam, x, y = perron(cover_of(RUNNING))
    assert lam == pytest.approx(1.686, abs=6e-4)
    np.testing.assert_allclose(x, RUNNING_X, atol=6e-4)
    np.testing.assert_allclose(y, RUNNING_Y, atol=6e-4)
    assert np.linalg.norm(x) == pytest.approx(1.0)
    assert float(x @ y) == pytest.approx(1.0)


def test_perron_vectors_are_eigenvectors(cover_of):
    for text in (RUNNING, NBT_THIRD, "10(011)", "1000(101)"):
        matrix = cover_of(text).matrix
        lam, x, y = perron(matrix)
        assert np.max(np.abs(matrix @ y - lam * y)) < 1e-10
        assert np.max(np.abs(matrix.T @ x - lam * x)) < 1e-10


def test_one_by_one_matrix():
    lam, x, y = perron(np.array([[2]]))
    assert lam == pytest.approx(2.0)
    np.testing.assert_allclose(x, [1.0])
    np.testing.assert_allclose(y, [1.0])


def test_power_iteration_matches_polynomial_root(cover_of):
    matrix = cover_of(NBT_THIRD).matrix
    lam, _, _ = perron(matrix)
    assert abs(lam - largest_real_root(char_poly(matrix))) <= 1e-10


def test_l1_normalization(cover_of):
    _, x, y = perron(cover_of(RUNNING), normalization=NORMALIZATION_L1)
    assert float(x.sum()) == pytest.approx(1.0)
    assert float(x @ y) == pytest.approx(1.0)


def test_unknown_normalization(cover_of):
    with pytest.raises(DomainError):
        perron(cover_of(RUNNING), normalization="max")


def test_non_mia_matrix_rejected():
    with pytest.raises(NotMIAError):
        perron(np.array([[0, 1], [1, 0]]))


def test_char_poly():
    assert char_poly(np.array([[2]])) == [1, -2]
    assert char_poly(np.array([[0, 1], [1, 1]])) == [1, -1, -1]
    assert largest_real_root([1, -1, -1]) == pytest.approx((1 + math.sqrt(5)) / 2, abs=1e-10)


def test_entropy():
    assert topological_entropy(2.0) == pytest.approx(math.log(2))


def test_horseshoe_weights(analysis):
    spectral = analysis(HORSESHOE, depth=12, build=False).spectral
    assert spectral.lam == pytest.approx(2.0)
    assert spectral.Yp[1] == pytest.approx(0.5)
    assert spectral.Yp[2] == pytest.approx(0.25)
    assert spectral.Yp[3] == pytest.approx(0.125)
    assert spectral.tail_bound == pytest.approx(2.0**-12)
    assert spectral.switch_residual <= 2 * spectral.tail_bound + 1e-12


def test_nbt_weights_are_exact(analysis):
    result = analysis(NBT_THIRD, build=False)
    spectral = result.spectral
    assert result.track.stable
    assert spectral.tail_bound == pytest.approx(0.0, abs=1e-12)
    assert len(spectral.Yp) == 8
    assert all(v > 0 for v in spectral.Yp.values())
    assert spectral.switch_residual <= 1e-9


def test_running_example_weights(analysis):
    spectral = analysis(RUNNING, build=False).spectral
    assert all(v > 0 for v in spectral.Yp.values())
    assert spectral.switch_residual <= 2 * spectral.tail_bound + 1e-9


def test_extend_heights_depth_limit(orbit_of):
    track = grow_invariant_track(orbit_of(HORSESHOE), 3)
    with pytest.raises(DomainError):
        extend_heights(track, [1.0], 2.0, depth=4)
    with pytest.raises(DomainError):
        extend_heights(track, [1.0], 1.0)


def test_horseshoe_residual_shrinks_with_depth(analysis):
    residuals = [analysis(HORSESHOE, depth=d, build=False).spectral.switch_residual for d in (10, 11, 12)]
    assert all(r > 0 for r in residuals)
    for coarse, fine in zip(residuals, residuals[1:]):
        assert coarse / fine >= 2.0 * (1 - 1e-6)


@pytest.mark.parametrize(
    "text, depth",
    [
        (PREPERIODIC_V1, 8),
        (PREPERIODIC_V1, 14),
        (PREPERIODIC_V1, 20),
        (PREPERIODIC_V2, 20),
        (PREPERIODIC_V2, 30),
        (PREPERIODIC_V2, 40),
    ],
)
def test_preperiodic_residual_within_twice_the_tail(analysis, text, depth):
    spectral = analysis(text, depth=depth, build=False).spectral
    assert spectral.tail_bound > 0
    assert spectral.switch_residual <= 2 * spectral.tail_bound + 1e-9


def test_running_example_tail_decays_by_lambda(analysis):
    spectra = [analysis(RUNNING, depth=d, build=False).spectral for d in (8, 14, 20)]
    lam = spectra[0].lam
    for coarse, fine in zip(spectra, spectra[1:]):
        assert coarse.tail_bound / fine.tail_bound == pytest.approx(lam**6, rel=1e-6)
        assert fine.switch_residual < coarse.switch_residual
    for spectral in spectra:
        assert spectral.switch_residual <= 2 * spectral.tail_bound + 1e-9


@pytest.mark.parametrize("depth", [24, 32, 40])
def test_nbt_residual_vanishes_once_stable(analysis, depth):
    result = analysis(NBT_THIRD, depth=depth, build=False)
    spectral = result.spectral
    assert result.track.stable
    assert spectral.switch_residual <= 1e-9


@pytest.mark.parametrize("text", [RUNNING, PREPERIODIC_V1])
def test_deep_weights_decay_geometrically(analysis, text):
    result = analysis(text, depth=20, build=False)
    spectral, track = result.spectral, result.track
    lam = spectral.lam
    # ‖BY‖₁/(λ-1) is the weight of the untruncated series
    total = sum(spectral.Yp.values()) + spectral.tail_bound
    for generation in range(1, track.depth + 1):
        deep = sum(spectral.Yp[e.id] for e in track.inf_edges if e.depth >= generation)
        assert deep <= total * lam ** (1 - generation) + 1e-12


@pytest.mark.parametrize("text", [RUNNING, NBT_THIRD, PREPERIODIC_V1])
def test_char_poly_matches_numpy_eigenvalues(cover_of, text):
    matrix = cover_of(text).matrix
    assert char_poly(matrix) == [round(c) for c in np.poly(matrix.astype(float))]


def test_largest_real_root_isolates_irrational_roots():
    assert largest_real_root([1, 0, 0, -2], tol=1e-14) == pytest.approx(2 ** (1 / 3), abs=1e-13)
    # x^4 - 5x^2 + 4 has roots ±1 and ±2
    assert largest_real_root([1, 0, -5, 0, 4]) == pytest.approx(2.0, abs=1e-12)
