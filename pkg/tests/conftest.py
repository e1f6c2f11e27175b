"""Shared fixtures for the unimodal_gpa tests."""

import pytest

from unimodal_gpa import analyze
from unimodal_gpa.dynamics.orbit import critical_orbit, strip_cover
from unimodal_gpa.dynamics.symbolic import parse_seq

HORSESHOE = "1(0)"
LHE_THIRD = "(101)"
NBT_THIRD = "(10011)"
RHE_THIRD = "10(011)"
RUNNING = "(1001011)"
PREPERIODIC_V1 = "1000(101)"
PREPERIODIC_V2 = "100101(10)"
EXAMPLES = (LHE_THIRD, NBT_THIRD, RUNNING, RHE_THIRD, PREPERIODIC_V1, PREPERIODIC_V2)

# Depth used for the stabilized or truncated tracks in tests
TEST_DEPTH = 24


@pytest.fixture
def orbit_of():
    def _orbit_of(text):
        return critical_orbit(parse_seq(text))

    return _orbit_of


@pytest.fixture
def cover_of(orbit_of):
    def _cover_of(text):
        return strip_cover(orbit_of(text))

    return _cover_of


@pytest.fixture(scope="session")
def analysis():
    cache = {}

    def _analysis(text, depth=TEST_DEPTH, build=True):
        key = (text, depth, build)
        if key not in cache:
            cache[key] = analyze(text, depth=depth, build=build, environ={})
        return cache[key]

    return _analysis
