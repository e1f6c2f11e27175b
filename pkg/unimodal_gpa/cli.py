"""The gpa command line."""

import argparse
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import wraps

from . import analyze, prepare
from .config import validate_options
from .const import (
    DEFAULT_ITERATE_STEPS,
    DEFAULT_MAX_PERIOD,
    DEFAULT_MODULI_COUNT,
    DEFAULT_MODULI_TARGET,
    DEFAULT_OUTSIDE_STEPS,
    DEFAULT_TOLERANCE,
    DEFAULT_WORKERS,
    EXIT_DOMAIN_ERROR,
    EXIT_INTERNAL_ERROR,
    EXIT_OK,
    LOG_FORMAT,
    LOGGER_NAME,
    PROG,
)
from .diagnostics import (
    census_payload,
    classify_payload,
    complex_payload,
    iterate_payload,
    moduli_payload,
    orbit_payload,
    outside_payload,
    spectrum_payload,
    track_payload,
    word_payload,
)
from .dynamics.errors import DomainError, EscapeError, InternalConsistencyError
from .dynamics.geometry import ComplexPoint, iterate, moduli_bounds, singularity_census
from .dynamics.height import classify, height, height_words
from .dynamics.outside import outside_orbit
from .dynamics.render import render_svg
from .dynamics.spectral import perron
from .dynamics.symbolic import BinarySeq, maximal_words, parse_seq
from .dynamics.traintrack import describe, validate_track
from .util import atomic_write, dump_json, format_float

_LOGGER = logging.getLogger(__name__)


def exit_code_on_error(func):
    """Translate library errors into exit codes after logging them."""

    @wraps(func)
    def exit_code_on_error_wrapper(*args, **kwargs) -> int:
        try:
            return func(*args, **kwargs)
        except InternalConsistencyError as err:
            _LOGGER.debug("internal consistency failure", exc_info=True)
            print(f"internal error: {err}", file=sys.stderr)
            return EXIT_INTERNAL_ERROR
        except DomainError as err:
            _LOGGER.debug("domain error: %s", err)
            print(f"error: {err}", file=sys.stderr)
            return EXIT_DOMAIN_ERROR

    return exit_code_on_error_wrapper


def _floats(values) -> str:
    return "(" + ", ".join(format_float(v, 6) for v in values) + ")"


def _emit(args, payload: dict, text: str) -> str:
    return dump_json(payload) if args.json else text


def handle_word(args) -> str:
    try:
        q = Fraction(args.q)
    except (ValueError, ZeroDivisionError) as err:
        raise DomainError(f"not a height: {args.q!r}") from err
    words = height_words(q)
    text = "\n".join(
        [
            f"kappa {' '.join(str(k) for k in words.kappa)}",
            f"c_q {words.c_q}",
            f"w_q {words.w_q}",
            f"w_hat_q {words.w_hat_q}",
            f"lhe {words.lhe}",
            f"NBT {words.nbt}",
            f"rhe {words.rhe}",
        ]
    )
    return _emit(args, word_payload(words), text)


def handle_height(args) -> str:
    q = height(parse_seq(args.seq))
    return _emit(args, {"q": q}, str(q))


def handle_classify(args) -> str:
    cls = classify(parse_seq(args.seq))
    return _emit(args, classify_payload(cls), f"{cls.tag.value} {cls.q}")


def handle_orbit(args) -> str:
    _, _, orbit, cover = prepare(args.seq)
    rows = [f"N {orbit.size}", f"c {orbit.c_slot}"]
    rows.extend(f"{j} -> {orbit.image(j)}  {orbit.point(j)}" for j in range(1, orbit.size + 1))
    rows.append("A")
    rows.extend(" ".join(str(v) for v in row) for row in cover.matrix.tolist())
    return _emit(args, orbit_payload(orbit, cover), "\n".join(rows))


def handle_track(args) -> str:
    result = analyze(args.seq, depth=args.depth, build=False)
    report = validate_track(result.track, result.description) if args.validate else None
    rows = [describe(result.track)]
    if not args.describe:
        rows.append(f"depth {result.track.depth}{' stable' if result.track.stable else ''}")
        rows.extend(
            f"{e.id} J{e.junction} {e.kind.value} depth={e.depth}" for e in result.track.inf_edges
        )
    if report is not None:
        if report.ok:
            rows.append("validation ok")
        else:
            rows.append(f"validation failed at junction {report.mismatch[0]}: {report.mismatch[1]}")
        rows.extend(report.notes)
    return _emit(args, track_payload(result.track, report), "\n".join(rows))


def handle_spectrum(args) -> str:
    result = analyze(args.seq, depth=args.depth, tol=args.tol, build=False)
    spectral = result.spectral
    rows = [
        f"lambda {format_float(spectral.lam, 6)}",
        f"entropy {format_float(spectral.entropy, 6)}",
        f"X {_floats(spectral.X)}",
        f"Y {_floats(spectral.Y)}",
        f"tail_bound {spectral.tail_bound:.3e}",
        f"switch_residual {spectral.switch_residual:.3e}",
    ]
    return _emit(args, spectrum_payload(spectral), "\n".join(rows))


def handle_outside(args) -> str:
    orbit = outside_orbit(parse_seq(args.seq), args.steps or None)
    rows = [f"{i} {p}" for i, p in enumerate(orbit.steps)]
    rows.append(f"case {orbit.case.value}")
    rows.append("Lambda " + " ".join(str(p) for p in orbit.lambda_orbit))
    rows.append(f"rotation {orbit.rotation}")
    if orbit.extras:
        rows.append("extras " + " ".join(str(p) for p in orbit.extras))
    return _emit(args, outside_payload(orbit), "\n".join(rows))


def handle_census(args) -> str:
    result = analyze(args.seq, depth=args.depth)
    census = singularity_census(result.complex, result.depth)
    rows = [
        f"one-prongs {len(census.one_prong_orbit)} ({census.asymptotics.value})",
        f"three-prongs {census.three_prongs}",
    ]
    rows.extend(f"{k}-prong at {loc}" for loc, k in census.n_prongs)
    rows.extend(f"essential at {loc}" for loc in census.essential)
    return _emit(args, census_payload(census), "\n".join(rows))


def handle_iterate(args) -> str:
    if args.point is None:
        raise DomainError("--point strip,x,y is required")
    result = analyze(args.seq, depth=args.depth)
    strip, x, y = args.point
    try:
        points = iterate(result.complex, ComplexPoint(strip, x, y), args.steps)
    except EscapeError as err:
        for p in err.partial_orbit:
            print(f"{p.strip},{format_float(p.x)},{format_float(p.y)}")
        raise
    if args.csv:
        text = "strip,x,y\n" + "\n".join(
            f"{p.strip},{format_float(p.x)},{format_float(p.y)}" for p in points
        )
    else:
        text = _emit(args, iterate_payload(points), "\n".join(
            f"{i} R{p.strip} x={format_float(p.x, 9)} y={format_float(p.y, 9)}" for i, p in enumerate(points)
        ))
    return _write_or_return(args, text)


def handle_moduli(args) -> str:
    result = analyze(args.seq)
    bounds = moduli_bounds(result.complex, args.count, args.target)
    rows = [bounds.note] if bounds.note else []
    rows.extend(
        f"{k} {format_float(b, 9)} {format_float(t, 9)}"
        for k, (b, t) in enumerate(zip(bounds.bounds, bounds.partial_sums), start=1)
    )
    rows.append(f"k* {bounds.first_exceeding}")
    return _emit(args, moduli_payload(bounds), "\n".join(rows))


def handle_render(args) -> str:
    if not args.output:
        raise DomainError("render needs -o FILE")
    result = analyze(args.seq, depth=args.depth)
    target = atomic_write(args.output, render_svg(result.complex))
    if args.json:
        return dump_json({"path": str(target), **complex_payload(result.complex)})
    return str(target)


def _sweep_row(word):
    s = BinarySeq.periodic(word)
    try:
        _, cls, _, cover = prepare(f"({word})")
        lam, _, _ = perron(cover)
    except DomainError as err:
        _LOGGER.debug("sweep skips %s: %s", s, err)
        return None
    return {"sequence": str(s), "q": cls.q, "class": cls.tag.value, "lambda": lam}


def handle_sweep(args) -> str:
    words = [w for w in maximal_words(args.max_period) if w.symbols[-1] == 1]
    with ThreadPoolExecutor(max_workers=args.workers) as pool:
        rows = [row for row in pool.map(_sweep_row, words) if row is not None]
    text = "\n".join(
        f"{r['sequence']} {r['q']} {format_float(r['lambda'], 6)} {r['class']}" for r in rows
    )
    return _write_or_return(args, dump_json({"rows": rows}) if args.json else text)


def _write_or_return(args, text: str) -> str:
    if getattr(args, "output", None):
        return str(atomic_write(args.output, text if text.endswith("\n") else text + "\n"))
    return text


HANDLERS = {
    "word": handle_word,
    "height": handle_height,
    "classify": handle_classify,
    "orbit": handle_orbit,
    "track": handle_track,
    "spectrum": handle_spectrum,
    "outside": handle_outside,
    "census": handle_census,
    "iterate": handle_iterate,
    "moduli": handle_moduli,
    "render": handle_render,
    "sweep": handle_sweep,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=PROG, description="Unimodal generalized pseudo-Anosov maps")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    verbs = parser.add_subparsers(dest="verb", required=True)

    def verb(name, help_text, seq=True, json=True):
        sub = verbs.add_parser(name, help=help_text)
        if seq:
            sub.add_argument("seq", help='kneading sequence such as "10(011)"')
        if json:
            sub.add_argument("--json", action="store_true")
        return sub

    sub = verb("word", "words and landmark sequences of a height", seq=False)
    sub.add_argument("q", help="height m/n")
    verb("height", "height of a kneading sequence")
    verb("classify", "position within the height interval")
    verb("orbit", "critical orbit and transition matrix")
    sub = verb("track", "invariant train track")
    sub.add_argument("--depth", type=int)
    sub.add_argument("--describe", action="store_true")
    sub.add_argument("--validate", action="store_true")
    sub = verb("spectrum", "Perron-Frobenius data")
    sub.add_argument("--tol", type=float, default=DEFAULT_TOLERANCE)
    sub.add_argument("--depth", type=int)
    sub = verb("outside", "outside map orbit")
    sub.add_argument("--steps", type=int, default=DEFAULT_OUTSIDE_STEPS)
    sub = verb("census", "singularity census")
    sub.add_argument("--depth", type=int)
    sub = verb("iterate", "iterate a point of the rectangle complex")
    sub.add_argument("--point")
    sub.add_argument("--steps", type=int, default=DEFAULT_ITERATE_STEPS)
    sub.add_argument("--depth", type=int)
    sub.add_argument("--csv", action="store_true")
    sub.add_argument("-o", "--output")
    sub = verb("moduli", "annulus modulus lower bounds")
    sub.add_argument("--count", type=int, default=DEFAULT_MODULI_COUNT)
    sub.add_argument("--target", type=float, default=DEFAULT_MODULI_TARGET)
    sub = verb("render", "write an SVG of the rectangle complex")
    sub.add_argument("-o", "--output")
    sub.add_argument("--depth", type=int)
    sub = verb("sweep", "tabulate all periodic maximal words", seq=False)
    sub.add_argument("--max-period", type=int, default=DEFAULT_MAX_PERIOD)
    sub.add_argument("--workers", type=int, default=DEFAULT_WORKERS)
    sub.add_argument("-o", "--output")
    return parser


def setup_logging(verbose: bool) -> None:
    logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(logging.DEBUG if verbose else logging.WARNING)
    if not logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logger.addHandler(handler)
    for handler in logger.handlers:
        handler.setLevel(logging.DEBUG if verbose else logging.WARNING)


@exit_code_on_error
def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.verbose)
    options = validate_options({k: v for k, v in vars(args).items() if v is not None})
    for key, value in options.items():
        setattr(args, key, value)
    output = HANDLERS[args.verb](args)
    if output:
        sys.stdout.write(output if output.endswith("\n") else output + "\n")
    return EXIT_OK


def main() -> None:
    sys.exit(run())
