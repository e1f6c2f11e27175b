"""Constants for the unimodal dynamics library."""

from enum import Enum, IntEnum

# Numeric tolerances
DEFAULT_TOLERANCE: float = 1e-12
BOUNDARY_TOLERANCE: float = 1e-9
SWITCH_TOLERANCE: float = 1e-9
POWER_ITERATION_LIMIT: int = 100_000
CHAR_POLY_CHECK_MAX_SIZE: int = 8
CHAR_POLY_AGREEMENT: float = 1e-10
MODULI_SEARCH_LIMIT: int = 10**15

# Growth engine limits
MIN_DEPTH: int = 1
MAX_DEPTH: int = 200

# Sequence text grammar, e.g. "10(011)" or "(1001011)"
SEQUENCE_PATTERN: str = r"^\s*([01]*)\(([01]+)\)\s*$"

MINUS_SIGN: str = "−"
EMPTY_JUNCTION: str = "∅"


class Order(IntEnum):
    """Result of comparing two sequences in the unimodal order."""

    LESS = -1
    EQUAL = 0
    GREATER = 1


class KneadingTag(Enum):
    """Position of a kneading sequence relative to its height interval."""

    HEIGHT_ZERO = "height_zero"
    HEIGHT_HALF = "height_half"
    LHE = "lhe"
    NBT = "nbt"
    RHE = "rhe"
    INTERIOR_LOW = "interior_low"
    INTERIOR_HIGH = "interior_high"


class Side(Enum):
    """Switch side of a junction."""

    L = "L"
    R = "R"

    @property
    def other(self) -> "Side":
        return Side.R if self is Side.L else Side.L


class ConfigType(Enum):
    """Local configurations of infinitesimal edges inside a junction."""

    BP = "BP"
    S_PLUS = "S+"
    S_MINUS = "S" + MINUS_SIGN
    W_PLUS = "W+"
    W_MINUS = "W" + MINUS_SIGN
    V3_PLUS = "V3+"
    V3_MINUS = "V3" + MINUS_SIGN
    B = "B"
    V0 = "V0"
    V1_PLUS = "V1+"
    V1_MINUS = "V1" + MINUS_SIGN
    V1_PLUS_B = "V1+B"
    V1_MINUS_B = "V1" + MINUS_SIGN + "B"
    V2_PLUS = "V2+"
    V2_MINUS = "V2" + MINUS_SIGN
    V2_PLUS_B2 = "V2+B2"
    V2_MINUS_B2 = "V2" + MINUS_SIGN + "B2"

    @property
    def family(self) -> str:
        """Return the configuration name without chirality or bubble suffix."""
        for prefix in ("BP", "V0", "V1", "V2", "V3"):
            if self.value.startswith(prefix):
                return prefix
        return self.value[0]

    @property
    def chirality(self) -> str | None:
        if "+" in self.value:
            return "+"
        if MINUS_SIGN in self.value:
            return "-"
        return None

    @property
    def external_bubbles(self) -> int:
        """Return the number of bubbles allowed outside the outermost chords."""
        if self.value.endswith("B2"):
            return 2
        if self.family == "V1" and self.value.endswith("B"):
            return 1
        return 0


CONFIG_BY_FAMILY = {
    ("S", "+"): ConfigType.S_PLUS,
    ("S", "-"): ConfigType.S_MINUS,
    ("W", "+"): ConfigType.W_PLUS,
    ("W", "-"): ConfigType.W_MINUS,
    ("V3", "+"): ConfigType.V3_PLUS,
    ("V3", "-"): ConfigType.V3_MINUS,
    ("V1", "+"): ConfigType.V1_PLUS,
    ("V1", "-"): ConfigType.V1_MINUS,
    ("V1B", "+"): ConfigType.V1_PLUS_B,
    ("V1B", "-"): ConfigType.V1_MINUS_B,
    ("V2", "+"): ConfigType.V2_PLUS,
    ("V2", "-"): ConfigType.V2_MINUS,
    ("V2B2", "+"): ConfigType.V2_PLUS_B2,
    ("V2B2", "-"): ConfigType.V2_MINUS_B2,
}

# Configurations whose loops may enclose the puncture
ENCLOSING_CONFIGS = frozenset({"BP", "W", "V3"})
# Configurations holding at most one through-chord in a 2-junction
SINGLE_CHORD_CONFIGS = frozenset({"BP", "S", "W", "B"})
# Configurations with infinitely many infinitesimal edges
INFINITE_CONFIGS = frozenset({"S", "W", "V1", "V2", "V3"})
# Configurations of junctions off the periodic part of the orbit
PREPERIODIC_CONFIGS = frozenset({"B", "V0"})


class EdgeKind(Enum):
    """Kind of an infinitesimal edge."""

    BUBBLE = "bubble"
    LOOP = "loop"
    CHORD = "chord"
    BIGON_SIDE = "bigon-side"


class Half(Enum):
    """Half of the outside circle a point lives on."""

    UPPER = "upper"
    LOWER = "lower"
    A_HAT = "a_hat"
    B_HAT = "b_hat"


class OutsideCase(Enum):
    """Where the escaping orbit of the left endpoint lands on the trapped arc."""

    I = "i"
    II = "ii"
    III = "iii"
    IV = "iv"
    V = "v"


CASE_BY_TAG = {
    KneadingTag.LHE: OutsideCase.I,
    KneadingTag.NBT: OutsideCase.II,
    KneadingTag.RHE: OutsideCase.III,
    KneadingTag.INTERIOR_LOW: OutsideCase.IV,
    KneadingTag.INTERIOR_HIGH: OutsideCase.V,
}


class ProngAsymptotics(Enum):
    """Asymptotic behaviour of the orbit of 1-pronged singularities."""

    HOMOCLINIC = "homoclinic"
    FINITE = "finite"
    BACKWARD_INFINITY_FORWARD_PERIODIC = "backward-to-infinity-forward-to-periodic"


class IdentificationCase(Enum):
    """How the horizontal sides of the rectangle complex are identified."""

    ENDPOINT = "endpoint"
    NBT = "nbt"
    GENERIC = "generic"
