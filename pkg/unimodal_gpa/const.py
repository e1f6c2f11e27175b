"""Constants for the gpa command line."""

PROG: str = "gpa"
LOGGER_NAME: str = "unimodal_gpa"
LOG_FORMAT: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

ENV_DEPTH: str = "GPA_DEPTH"

# Option keys
CONF_DEPTH: str = "depth"
CONF_TOLERANCE: str = "tol"
CONF_STEPS: str = "steps"
CONF_COUNT: str = "count"
CONF_TARGET: str = "target"
CONF_MAX_PERIOD: str = "max_period"
CONF_WORKERS: str = "workers"
CONF_OUTPUT: str = "output"
CONF_POINT: str = "point"

DEFAULT_TOLERANCE: float = 1e-12
DEFAULT_OUTSIDE_STEPS: int = 0
DEFAULT_ITERATE_STEPS: int = 10
DEFAULT_MODULI_COUNT: int = 20
DEFAULT_MODULI_TARGET: float = 1.0
DEFAULT_MAX_PERIOD: int = 8
DEFAULT_WORKERS: int = 4
DEFAULT_DEPTH_TARGET: float = 1e-12
DEFAULT_FALLBACK_DEPTH: int = 12
# cap for the computed default only; --depth and GPA_DEPTH may exceed it
DEFAULT_DEPTH_CAP: int = 40

# Exit codes
EXIT_OK: int = 0
EXIT_DOMAIN_ERROR: int = 2
EXIT_INTERNAL_ERROR: int = 3

# Fixed float formatting for deterministic output
FLOAT_DIGITS: int = 12
