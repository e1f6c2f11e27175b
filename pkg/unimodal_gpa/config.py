"""Option schemas for the command line and the environment."""

import logging
import math
import os

import voluptuous as vol

from .const import (
    CONF_COUNT,
    CONF_DEPTH,
    CONF_MAX_PERIOD,
    CONF_OUTPUT,
    CONF_POINT,
    CONF_STEPS,
    CONF_TARGET,
    CONF_TOLERANCE,
    CONF_WORKERS,
    DEFAULT_DEPTH_CAP,
    DEFAULT_DEPTH_TARGET,
    DEFAULT_FALLBACK_DEPTH,
    ENV_DEPTH,
)
from .dynamics.const import MAX_DEPTH, MIN_DEPTH
from .dynamics.errors import DomainError

_LOGGER = logging.getLogger(__name__)

DEPTH_VALIDATOR = vol.All(vol.Coerce(int), vol.Range(min=MIN_DEPTH, max=MAX_DEPTH))


def _point(value):
    """Parse `i,x,y` into (strip, x, y)."""
    parts = str(value).split(",")
    if len(parts) != 3:
        raise vol.Invalid("point must be written strip,x,y")
    try:
        return int(parts[0]), float(parts[1]), float(parts[2])
    except ValueError as err:
        raise vol.Invalid(f"bad point {value!r}") from err


OPTIONS_SCHEMA = vol.Schema(
    {
        vol.Optional(CONF_DEPTH): vol.Any(None, DEPTH_VALIDATOR),
        vol.Optional(CONF_TOLERANCE): vol.All(vol.Coerce(float), vol.Range(min=0, min_included=False, max=1e-3)),
        vol.Optional(CONF_STEPS): vol.All(vol.Coerce(int), vol.Range(min=0, max=100_000)),
        vol.Optional(CONF_COUNT): vol.All(vol.Coerce(int), vol.Range(min=1, max=100_000)),
        vol.Optional(CONF_TARGET): vol.All(vol.Coerce(float), vol.Range(min=0, min_included=False)),
        vol.Optional(CONF_MAX_PERIOD): vol.All(vol.Coerce(int), vol.Range(min=1, max=16)),
        vol.Optional(CONF_WORKERS): vol.All(vol.Coerce(int), vol.Range(min=1, max=64)),
        vol.Optional(CONF_OUTPUT): vol.Any(None, str),
        vol.Optional(CONF_POINT): vol.Any(None, _point),
    },
    extra=vol.ALLOW_EXTRA,
)


def validate_options(options: dict) -> dict:
    """Validate parsed command line options, raising DomainError on bad values."""
    try:
        return OPTIONS_SCHEMA(options)
    except vol.Invalid as err:
        raise DomainError(f"invalid option: {err}") from err


def depth_from_environment(environ=None) -> int | None:
    environ = os.environ if environ is None else environ
    raw = environ.get(ENV_DEPTH)
    if raw is None or raw == "":
        return None
    try:
        return DEPTH_VALIDATOR(raw)
    except vol.Invalid as err:
        raise DomainError(f"invalid {ENV_DEPTH}={raw!r}: {err}") from err


def default_depth(lam: float | None) -> int:
    """Return the smallest d with λ^-d below the truncation target, clamped to range."""
    if lam is None or lam <= 1:
        return DEFAULT_FALLBACK_DEPTH
    depth = math.ceil(-math.log(DEFAULT_DEPTH_TARGET) / math.log(lam))
    return max(MIN_DEPTH, min(depth, DEFAULT_DEPTH_CAP, MAX_DEPTH))


def resolve_depth(flag: int | None, lam: float | None, environ=None) -> int:
    """Pick the truncation depth: command line flag, then GPA_DEPTH, then computed."""
    if flag is not None:
        return DEPTH_VALIDATOR(flag)
    from_env = depth_from_environment(environ)
    if from_env is not None:
        _LOGGER.debug("depth %s from %s", from_env, ENV_DEPTH)
        return from_env
    return default_depth(lam)
