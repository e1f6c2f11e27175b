import json

import numpy as np
import pytest

from unimodal_gpa.diagnostics import load_track, spectrum_payload, track_payload
from unimodal_gpa.dynamics.errors import DomainError
from unimodal_gpa.dynamics.spectral import switch_residuals
from unimodal_gpa.dynamics.traintrack import validate_track
from unimodal_gpa.util import dump_json, to_jsonable

from .conftest import EXAMPLES, HORSESHOE, RUNNING


def _reparsed(payload):
    return json.loads(dump_json(payload))


@pytest.mark.parametrize("text", [HORSESHOE, *EXAMPLES])
def test_track_json_round_trip(analysis, text):
    result = analysis(text, build=False)
    track = load_track(_reparsed(track_payload(result.track)), result.orbit)
    assert track == result.track
    assert track.pi_map == result.track.pi_map
    assert track.b_rows == result.track.b_rows
    assert validate_track(track, result.description) == validate_track(result.track, result.description)
    spectral = result.spectral
    assert switch_residuals(track, spectral.Y, spectral.Yp) == switch_residuals(
        result.track, spectral.Y, spectral.Yp
    )


def test_track_payload_schema(analysis):
    payload = track_payload(analysis(RUNNING, build=False).track)
    assert payload["description"][1] == {"config": "W+", "side": "L"}
    assert set(payload["inf_edges"][0]) == {"id", "junction", "kind", "depth", "puncture"}
    assert all(len(pair) == 2 for pair in payload["pi"])
    assert all(len(row) == 3 for row in payload["b"])


def test_load_track_rejects_malformed_payload(orbit_of):
    with pytest.raises(DomainError):
        load_track({"description": None}, orbit_of(RUNNING))


def test_load_track_rejects_wrong_orbit(analysis, orbit_of):
    payload = _reparsed(track_payload(analysis(RUNNING, build=False).track))
    with pytest.raises(DomainError):
        load_track(payload, orbit_of(HORSESHOE))


def test_json_floats_keep_full_precision(analysis):
    spectral = analysis(HORSESHOE, depth=40, build=False).spectral
    payload = _reparsed(spectrum_payload(spectral))
    assert payload["tail_bound"] == spectral.tail_bound
    assert payload["tail_bound"] == pytest.approx(2.0**-40, rel=1e-9)
    weights = {row["edge"]: row["weight"] for row in payload["Yp"]}
    assert weights == spectral.Yp
    assert weights[40] == pytest.approx(2.0**-40, rel=1e-9)


def test_to_jsonable_converts_numpy_scalars():
    assert to_jsonable({1: np.float64(0.1) / 3, "n": np.int64(3)}) == {"1": 0.1 / 3, "n": 3}
