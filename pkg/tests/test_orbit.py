import numpy as np
import pytest

from unimodal_gpa.dynamics.errors import ConventionError, NotKneadingError
from unimodal_gpa.dynamics.orbit import critical_orbit, is_primitive, mia_check
from unimodal_gpa.dynamics.symbolic import parse_seq

RUNNING_A = [
    [0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 1, 0],
    [1, 0, 0, 0, 1, 0],
    [1, 0, 0, 1, 0, 0],
    [0, 1, 0, 1, 0, 0],
    [0, 0, 1, 1, 0, 0],
]


@pytest.mark.parametrize(
    "text, succ",
    [
        ("(10011)", (2, 4, 5, 3, 1)),
        ("(1001011)", (3, 5, 6, 7, 4, 2, 1)),
        ("1000(101)", (2, 4, 5, 6, 6, 3, 1)),
        ("100101(10)", (4, 5, 6, 7, 6, 3, 2, 1)),
    ],
)
def test_critical_orbit_succ(orbit_of, text, succ):
    assert orbit_of(text).succ == succ


def test_critical_orbit_invariants(orbit_of):
    for text in ("(10011)", "(1001011)", "1000(101)", "100101(10)", "1(0)"):
        orbit = orbit_of(text)
        assert orbit.point(orbit.size) == orbit.s
        for j in range(1, orbit.size + 1):
            assert orbit.point(orbit.image(j)) == orbit.point(j).shift()
        if not orbit.periodic:
            assert orbit.preimages(orbit.size) == []
            doubled = [j for j in range(1, orbit.size + 1) if len(orbit.preimages(j)) == 2]
            assert len(doubled) == 1


def test_critical_point_position(orbit_of):
    assert orbit_of("(1001011)").c_slot == 4
    assert orbit_of("(10011)").c_slot == 3
    assert orbit_of("1000(101)").c_slot == 4


def test_period_word_must_end_in_one():
    with pytest.raises(ConventionError):
        critical_orbit(parse_seq("(10)"))


def test_non_kneading_rejected():
    with pytest.raises(NotKneadingError):
        critical_orbit(parse_seq("0(1)"))


def test_running_example_matrix(cover_of):
    np.testing.assert_array_equal(cover_of("(1001011)").matrix, RUNNING_A)


def test_horseshoe_matrix(cover_of):
    cover = cover_of("1(0)")
    np.testing.assert_array_equal(cover.matrix, [[2]])
    assert cover.fold_strip == 1
    assert cover.has_double_cover


def test_nbt_cover_lists(cover_of):
    cover = cover_of("(10011)")
    assert [sorted(cover.cover(j)) for j in range(1, 5)] == [[2, 3], [4], [3, 4], [1, 2]]
    assert cover.fold_strip is None
    assert not cover.has_double_cover


def test_cover_lists_are_intervals(cover_of):
    for text in ("(1001011)", "1000(101)", "100101(10)", "10(011)"):
        for strips in cover_of(text).covers:
            distinct = sorted(set(strips))
            assert distinct == list(range(distinct[0], distinct[-1] + 1))


def test_mia_check(cover_of):
    assert mia_check(cover_of("(1001011)"))
    assert mia_check(np.array([[2]]))
    assert not is_primitive(np.eye(3, dtype=int))
    assert not is_primitive(np.array([[0, 1], [1, 0]]))
