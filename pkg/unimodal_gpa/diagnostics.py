"""JSON payloads for the gpa verbs."""

import logging

from .dynamics.const import ConfigType, EdgeKind, Side
from .dynamics.errors import DomainError
from .dynamics.geometry import ModuliBounds, RectangleComplex, SingularityCensus
from .dynamics.height import HeightWords, KneadingClass
from .dynamics.orbit import CriticalOrbit, StripCover
from .dynamics.outside import OutsideOrbit
from .dynamics.spectral import SpectralData
from .dynamics.traintrack import (
    InfEdge,
    JunctionType,
    Token,
    TrackDescription,
    TrainTrack,
    ValidationReport,
    describe,
)

_LOGGER = logging.getLogger(__name__)


def word_payload(words: HeightWords) -> dict:
    return {
        "q": words.q,
        "kappa": list(words.kappa),
        "c_q": str(words.c_q),
        "w_q": str(words.w_q),
        "w_hat_q": str(words.w_hat_q),
        "lhe": str(words.lhe),
        "nbt": str(words.nbt),
        "rhe": str(words.rhe),
    }


def classify_payload(cls: KneadingClass) -> dict:
    return {"tag": cls.tag.value, "q": cls.q}


def orbit_payload(orbit: CriticalOrbit, cover: StripCover) -> dict:
    return {
        "sequence": str(orbit.s),
        "N": orbit.size,
        "periodic": orbit.periodic,
        "points": [str(p) for p in orbit.points],
        "succ": list(orbit.succ),
        "c": orbit.c_slot,
        "covers": [list(c) for c in cover.covers],
        "A": cover.matrix,
    }


def _description_payload(desc: TrackDescription | None) -> list[dict] | None:
    if desc is None:
        return None
    return [{"config": t.config.value, "side": t.side.value if t.side else None} for t in desc.junctions]


def track_payload(track: TrainTrack, report: ValidationReport | None = None) -> dict:
    payload = {
        "summary": describe(track),
        "description": _description_payload(track.description),
        "depth": track.depth,
        "stable": track.stable,
        "inf_edges": [
            {
                "id": e.id,
                "junction": e.junction,
                "kind": e.kind.value,
                "depth": e.depth,
                "puncture": e.encloses_puncture,
            }
            for e in track.inf_edges
        ],
        "junctions": [
            [
                {"kind": t.kind, "edge": t.edge, "side": t.side.value if t.side else None}
                for t in track.config(j)
            ]
            for j in range(1, track.orbit.size + 1)
        ],
        "pi": [[e, f] for e, f in sorted(track.pi_map.items())],
        "b": [[j, e, c] for j, row in sorted(track.b_rows.items()) for e, c in sorted(row.items())],
    }
    if report is not None:
        payload["validation"] = {
            "ok": report.ok,
            "mismatch": list(report.mismatch) if report.mismatch else None,
            "notes": list(report.notes),
        }
    return payload


def load_track(payload: dict, orbit: CriticalOrbit) -> TrainTrack:
    """Rebuild a train track from its `track_payload` form."""
    try:
        description = None
        if payload["description"] is not None:
            description = TrackDescription(
                tuple(
                    JunctionType(ConfigType(t["config"]), Side(t["side"]) if t["side"] else None)
                    for t in payload["description"]
                )
            )
        configs = tuple(
            tuple(Token(t["kind"], t["edge"], Side(t["side"]) if t["side"] else None) for t in tokens)
            for tokens in payload["junctions"]
        )
        if len(configs) != orbit.size:
            raise DomainError(f"payload has {len(configs)} junctions, orbit {orbit.size}")
        edges = []
        for e in payload["inf_edges"]:
            kind, j = EdgeKind(e["kind"]), e["junction"]
            if kind in (EdgeKind.CHORD, EdgeKind.BIGON_SIDE):
                endpoints = ((j, Side.L), (j, Side.R))
            else:
                side = next(t.side for t in configs[j - 1] if t.edge == e["id"])
                endpoints = ((j, side), (j, side))
            edges.append(InfEdge(e["id"], j, kind, endpoints, e["depth"], e["puncture"]))
        b_rows: dict[int, dict[int, int]] = {}
        for j, e, count in payload["b"]:
            b_rows.setdefault(j, {})[e] = count
        track = TrainTrack(
            orbit=orbit,
            description=description,
            real_edges=tuple(range(1, orbit.size)),
            inf_edges=tuple(edges),
            junction_configs=configs,
            pi_map={e: f for e, f in payload["pi"]},
            b_rows=b_rows,
            depth=payload["depth"],
            stable=payload["stable"],
        )
    except (KeyError, TypeError, ValueError, StopIteration) as err:
        raise DomainError(f"malformed track payload: {err}") from err
    _LOGGER.debug("loaded track for %s with %s edges", orbit.s, len(track.inf_edges))
    return track


def spectrum_payload(spectral: SpectralData) -> dict:
    return {
        "lambda": spectral.lam,
        "entropy": spectral.entropy,
        "X": spectral.X,
        "Y": spectral.Y,
        "Yp": [{"edge": e, "weight": w} for e, w in sorted(spectral.Yp.items())],
        "tail_bound": spectral.tail_bound,
        "switch_residual": spectral.switch_residual,
        "normalization": spectral.normalization,
    }


def outside_payload(orbit: OutsideOrbit) -> dict:
    return {
        "steps": [str(p) for p in orbit.steps],
        "n": orbit.n,
        "case": orbit.case.value,
        "lambda_orbit": [str(p) for p in orbit.lambda_orbit],
        "rotation": orbit.rotation,
        "extras": [str(p) for p in orbit.extras],
    }


def census_payload(census: SingularityCensus) -> dict:
    return {
        "one_prong_orbit": list(census.one_prong_orbit),
        "one_prongs": len(census.one_prong_orbit),
        "asymptotics": census.asymptotics.value,
        "three_prongs": census.three_prongs,
        "n_prongs": [{"location": loc, "prongs": k} for loc, k in census.n_prongs],
        "essential": list(census.essential),
        "finite": census.finite,
    }


def moduli_payload(bounds: ModuliBounds) -> dict:
    return {
        "bounds": list(bounds.bounds),
        "partial_sums": list(bounds.partial_sums),
        "first_exceeding": bounds.first_exceeding,
        "note": bounds.note,
    }


def complex_payload(complex_: RectangleComplex) -> dict:
    return {
        "case": complex_.case.value if complex_.case else None,
        "rectangles": [
            {"index": r.index, "left": r.left, "width": r.width, "height": r.height}
            for r in complex_.rectangles
        ],
        "w_v": complex_.w_v,
        "w_h": complex_.w_h,
        "gamma_length": complex_.gamma_length,
        "boundary_polygon": [str(p) for p in complex_.boundary_polygon],
        "horizontal_intervals": [
            {"label": h.label, "level": h.level, "length": h.length, "shape": h.shape}
            for h in complex_.horizontal_intervals
        ],
    }


def iterate_payload(points) -> dict:
    return {"orbit": [{"strip": p.strip, "x": p.x, "y": p.y} for p in points]}
