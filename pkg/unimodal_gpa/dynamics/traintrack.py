"""Invariant generalized train tracks.

Architecture:
- lr_assignment propagates the switch side of 2-junctions along the orbit
- classify_junctions gives the configuration type of every junction
- grow_invariant_track applies the image operation to the empty track
  repeatedly, amalgamating parallel edges after each step
- validate_track compares a grown truncation with a classification

A junction configuration is a top-to-bottom list of tokens. A chord runs
from the left switch to the right switch, a loop is a pair of open/close
tokens on one switch and the puncture is a token of its own. Only the
order of the tokens of one side, the chords and the puncture carry
meaning; how left and right tokens interleave does not. Junction 1 has
only a right switch and junction N only a left switch.
"""

from __future__ import annotations

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .const import (
    CONFIG_BY_FAMILY,
    EMPTY_JUNCTION,
    ENCLOSING_CONFIGS,
    INFINITE_CONFIGS,
    PREPERIODIC_CONFIGS,
    SINGLE_CHORD_CONFIGS,
    ConfigType,
    EdgeKind,
    KneadingTag,
    Side,
)
from .errors import DomainError, InternalConsistencyError
from .height import KneadingClass
from .orbit import CriticalOrbit
from .symbolic import Word
from .util import summarize_for_logging

_LOGGER = logging.getLogger(__name__)

CHORD = "chord"
OPEN = "open"
CLOSE = "close"
PUNCT = "punct"

LAYER_DISK = "disk"
LAYER_PASS = "pass"
LAYER_TURN = "turn"


class Token(NamedTuple):
    kind: str
    edge: object = None
    side: Side | None = None


PUNCTURE = Token(PUNCT)


@dataclass(frozen=True)
class LRAssignment:
    left: frozenset[int]
    right: frozenset[int]

    def side_of(self, j: int) -> Side | None:
        """Return the switch side of junction j, or None when j is in both or neither."""
        in_left, in_right = j in self.left, j in self.right
        if in_left and not in_right:
            return Side.L
        if in_right and not in_left:
            return Side.R
        return None


def lr_assignment(orbit: CriticalOrbit) -> LRAssignment:
    n = orbit.size
    if n < 3:
        raise DomainError("L/R assignment needs at least one 2-junction")
    members = {Side.L: set(), Side.R: set()}
    if orbit.periodic:
        current, side = orbit.image(1), Side.R
        members[side].add(current)
        for _ in range(2, n - 1):
            previous = current
            current = orbit.image(previous)
            if previous > orbit.c_slot:
                side = side.other
            members[side].add(current)
    else:
        s = orbit.s
        current, side = orbit.forward(n, 2), Side.R
        members[side].add(current)
        for r in range(3, n + orbit.l):
            current = orbit.image(current)
            if s[r - 1] == 1:
                side = side.other
            members[side].add(current)
    inner = set(range(2, n))
    return LRAssignment(
        left=frozenset(members[Side.L] & inner),
        right=frozenset(members[Side.R] & inner),
    )


@dataclass(frozen=True)
class JunctionType:
    config: ConfigType
    side: Side | None = None

    def __str__(self) -> str:
        if self.side is None:
            return self.config.value
        return f"{self.config.value},{self.side.value}"


@dataclass(frozen=True)
class TrackDescription:
    junctions: tuple[JunctionType, ...]

    def junction(self, j: int) -> JunctionType:
        return self.junctions[j - 1]

    def __str__(self) -> str:
        return "(" + " ; ".join(str(t) for t in self.junctions) + ")"


HORSESHOE_DESCRIPTION = TrackDescription(
    (JunctionType(ConfigType.S_PLUS), JunctionType(ConfigType.B))
)


def _sign_junction(orbit: CriticalOrbit) -> int:
    """Return the junction whose switch side fixes the sign of W, V1, V2 and V3 junctions."""
    if orbit.periodic:
        return orbit.c_slot
    return orbit.forward(orbit.size, orbit.k - 1)


def _chirality_of(j: int, lr: LRAssignment, orbit: CriticalOrbit) -> str:
    # junction 1 carries its edges on its right switch, junction N on its left
    if j == 1:
        return "+"
    if j == orbit.size:
        return "-"
    return "+" if lr.side_of(j) is Side.R else "-"


def classify_junctions(
    orbit: CriticalOrbit, q: Fraction, cls: KneadingClass
) -> TrackDescription:
    if q == 0:
        return HORSESHOE_DESCRIPTION
    if cls.tag is KneadingTag.HEIGHT_HALF:
        raise DomainError("sequences of height 1/2 are not MIA and carry no track description")
    n_points = orbit.size
    n = q.denominator
    lr = lr_assignment(orbit)
    configs: dict[int, ConfigType] = {}
    if orbit.periodic:
        if cls.tag is KneadingTag.LHE:
            configs = {j: ConfigType.S_PLUS for j in range(1, n_points + 1)}
        elif cls.tag is KneadingTag.NBT:
            configs = {j: ConfigType.BP for j in range(1, n_points + 1)}
        else:
            eps = _chirality_of(_sign_junction(orbit), lr, orbit)
            for r in range(n_points):
                family = "W" if r <= n + 1 else "V3"
                configs[orbit.forward(n_points, r)] = CONFIG_BY_FAMILY[(family, eps)]
    else:
        k = orbit.k
        if cls.tag is KneadingTag.RHE:
            for r in range(n_points):
                configs[orbit.forward(n_points, r)] = (
                    ConfigType.B if r < k else ConfigType.S_MINUS
                )
        else:
            eps = _chirality_of(_sign_junction(orbit), lr, orbit)
            even = Word(orbit.s.period).is_even
            for r in range(n_points):
                if r < k:
                    config = ConfigType.B if r <= n + 1 else ConfigType.V0
                else:
                    if r <= n + 1:
                        family = "V1B" if even else "V2B2"
                    else:
                        family = "V1" if even else "V2"
                    config = CONFIG_BY_FAMILY[(family, eps)]
                configs[orbit.forward(n_points, r)] = config
    junctions = []
    for j in range(1, n_points + 1):
        side = lr.side_of(j) if 1 < j < n_points else None
        junctions.append(JunctionType(configs[j], side))
    return TrackDescription(tuple(junctions))


@dataclass(frozen=True)
class InfEdge:
    id: int
    junction: int
    kind: EdgeKind
    endpoints: tuple[tuple[int, Side], ...]
    depth: int
    encloses_puncture: bool

    @property
    def is_loop(self) -> bool:
        return self.kind in (EdgeKind.BUBBLE, EdgeKind.LOOP)


@dataclass(frozen=True)
class TrainTrack:
    orbit: CriticalOrbit
    description: TrackDescription | None
    real_edges: tuple[int, ...]
    inf_edges: tuple[InfEdge, ...]
    junction_configs: tuple[tuple[Token, ...], ...]
    pi_map: dict[int, int] = field(compare=False)
    b_rows: dict[int, dict[int, int]] = field(compare=False)
    depth: int = 0
    stable: bool = False

    def edge(self, edge_id: int) -> InfEdge:
        for edge in self.inf_edges:
            if edge.id == edge_id:
                return edge
        raise KeyError(edge_id)

    def config(self, j: int) -> tuple[Token, ...]:
        return self.junction_configs[j - 1]

    def edges_in(self, j: int) -> list[InfEdge]:
        return [e for e in self.inf_edges if e.junction == j]

    def switch_order(self, j: int, side: Side) -> list[int]:
        """Return edge ids in top-to-bottom order of their ends at a switch."""
        order = []
        for token in self.config(j):
            if token.kind == CHORD or (token.kind in (OPEN, CLOSE) and token.side is side):
                order.append(token.edge)
        return order

    def switches(self) -> list[tuple[int, Side]]:
        result = []
        for j in range(1, self.orbit.size + 1):
            if j > 1:
                result.append((j, Side.L))
            if j < self.orbit.size:
                result.append((j, Side.R))
        return result


def empty_track(orbit: CriticalOrbit) -> TrainTrack:
    """Return τ(∅), the track with real edges only."""
    return TrainTrack(
        orbit=orbit,
        description=None,
        real_edges=tuple(range(1, orbit.size)),
        inf_edges=(),
        junction_configs=tuple(
            (PUNCTURE,) if orbit.is_periodic_point(j) else () for j in range(1, orbit.size + 1)
        ),
        pi_map={},
        b_rows={},
    )


class _UnionFind:
    def __init__(self):
        self._parent = {}

    def add(self, item):
        self._parent.setdefault(item, item)

    def find(self, item):
        self.add(item)
        root = item
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[item] != root:
            self._parent[item], item = root, self._parent[item]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self._parent[rb] = ra


@dataclass
class _Frame:
    label: object
    index: int
    children: list = field(default_factory=list)
    punct_direct: bool = False


def _rotate(tokens) -> list[Token]:
    """Image of a junction under the orientation-reversing branch."""
    swap = {OPEN: CLOSE, CLOSE: OPEN}
    result = []
    for token in reversed(tokens):
        if token.kind in swap:
            result.append(Token(swap[token.kind], token.edge, token.side.other))
        else:
            result.append(token)
    return result


def _fold(tokens) -> list[Token]:
    """Image of the critical junction, folded onto the left switch of junction N."""
    encloser = _puncture_encloser(tokens)
    right_part, left_part = [], []
    chords_above = 0
    for token in tokens:
        if token.kind == CHORD:
            right_part.append(token)
            left_part.append(token)
        elif token.kind == PUNCT:
            if encloser is Side.L:
                left_part.append(token)
            elif encloser is Side.R:
                right_part.append(token)
        elif token.side is Side.R:
            right_part.append(token)
        else:
            left_part.append(token)
        if token.kind == CHORD and not any(t.kind == PUNCT for t in tokens[: tokens.index(token)]):
            chords_above += 1
    has_puncture = any(t.kind == PUNCT for t in tokens)
    if has_puncture and encloser is None:
        seen = 0
        position = 0
        if chords_above:
            for position, token in enumerate(left_part, start=1):
                if token.kind == CHORD:
                    seen += 1
                    if seen == chords_above:
                        break
        left_part.insert(position, PUNCTURE)
    upper = []
    swap = {OPEN: CLOSE, CLOSE: OPEN}
    for token in reversed(right_part):
        if token.kind in swap:
            upper.append(Token(swap[token.kind], token.edge, Side.L))
        else:
            upper.append(token)
    merged = []
    opened = set()
    for token in upper + left_part:
        if token.kind == CHORD:
            kind = CLOSE if token.edge in opened else OPEN
            opened.add(token.edge)
            merged.append(Token(kind, token.edge, Side.L))
        elif token.kind == PUNCT:
            merged.append(token)
        else:
            merged.append(Token(token.kind, token.edge, Side.L))
    return merged


def _puncture_encloser(tokens) -> Side | None:
    """Return the side of the loop enclosing the puncture, if any."""
    depth = {Side.L: 0, Side.R: 0}
    for token in tokens:
        if token.kind == OPEN:
            depth[token.side] += 1
        elif token.kind == CLOSE:
            depth[token.side] -= 1
        elif token.kind == PUNCT:
            inside = [side for side in Side if depth[side] > 0]
            if len(inside) > 1:
                raise InternalConsistencyError("puncture inside loops on both switches")
            return inside[0] if inside else None
    return None


def _relabel(tokens, label_fn) -> list[Token]:
    return [t if t.kind == PUNCT else Token(t.kind, label_fn(t.edge), t.side) for t in tokens]


def _amalgamate(tokens, classes: _UnionFind) -> list[Token]:
    """Merge parallel edges of one junction, innermost first."""
    out: list[Token | None] = []
    stacks = {Side.L: [], Side.R: []}

    def last_alive():
        for token in reversed(out):
            if token is not None:
                return token
        return None

    for token in tokens:
        if token.kind == PUNCT:
            tops = [stacks[side][-1] for side in Side if stacks[side]]
            if len(tops) > 1:
                raise InternalConsistencyError("puncture inside loops on both switches")
            for frame in tops:
                frame.punct_direct = True
            out.append(token)
        elif token.kind == CHORD:
            classes.add(token.edge)
            previous = last_alive()
            if previous is not None and previous.kind == CHORD:
                classes.union(previous.edge, token.edge)
                continue
            out.append(token)
        elif token.kind == OPEN:
            classes.add(token.edge)
            stacks[token.side].append(_Frame(label=token.edge, index=len(out)))
            out.append(token)
        else:
            stack = stacks[token.side]
            if not stack or stack[-1].label != token.edge:
                raise InternalConsistencyError(f"unbalanced loop {token.edge}")
            frame = stack.pop()
            if len(frame.children) == 1 and not frame.punct_direct:
                classes.union(frame.children[0], frame.label)
                out[frame.index] = None
                survivor = frame.children[0]
            else:
                out.append(token)
                survivor = frame.label
            if stack:
                stack[-1].children.append(survivor)
    return [t for t in out if t is not None]


def _label_priority(label) -> tuple:
    kind, value = label
    return (0, repr(value)) if kind == "real" else (1, value)


class _TrackGrower:
    """Repeated image operation on junction configurations."""

    def __init__(self, orbit: CriticalOrbit):
        self.orbit = orbit
        self.size = orbit.size
        self.configs = {
            j: [PUNCTURE] if orbit.is_periodic_point(j) else [] for j in range(1, self.size + 1)
        }
        self.depths: dict[int, int] = {}
        self.real_ids: dict[tuple, int] = {}
        self.pi_map: dict[int, int] = {}
        self.b_rows: dict[int, Counter] = {}
        self.next_id = 1
        self.steps = 0
        self.layers = self._layer_plan()

    def _layer_plan(self) -> dict[int, list[tuple]]:
        orbit, n = self.orbit, self.size
        upper: dict[int, tuple] = {}
        lower: dict[int, tuple] = {}
        folded: dict[int, tuple] = {}

        def put(table, junction, layer):
            if junction in table:
                raise InternalConsistencyError(f"two layers from one branch in junction {junction}")
            table[junction] = layer

        for j in range(1, n + 1):
            branch = orbit.junction_branch(j)
            target = orbit.image(j)
            if branch == "left":
                put(lower, target, (LAYER_DISK, j, "identity"))
            elif branch == "right":
                put(upper, target, (LAYER_DISK, j, "rotate"))
            else:
                folded[target] = (LAYER_DISK, j, "fold")
        for j in range(1, n):
            branch = orbit.strip_branch(j)
            a, b = orbit.image(j), orbit.image(j + 1)
            if branch == "fold":
                for i in range(a + 1, n):
                    put(lower, i, (LAYER_PASS, ("pass", j, i, 0)))
                for i in range(b + 1, n):
                    put(upper, i, (LAYER_PASS, ("pass", j, i, 1)))
                folded[n] = (LAYER_TURN, ("turn", j))
                continue
            table = lower if branch == "left" else upper
            for i in range(min(a, b) + 1, max(a, b)):
                put(table, i, (LAYER_PASS, ("pass", j, i, 0)))
        plan = {}
        for i in range(1, n + 1):
            if i in folded:
                plan[i] = [folded[i]]
            else:
                plan[i] = [layer for layer in (upper.get(i), lower.get(i)) if layer is not None]
        _LOGGER.debug("layer plan: %s", summarize_for_logging(plan))
        return plan

    def _layer_tokens(self, layer) -> list[Token]:
        if layer[0] == LAYER_PASS:
            return [Token(CHORD, ("real", layer[1]))]
        if layer[0] == LAYER_TURN:
            label = ("real", layer[1])
            return [Token(OPEN, label, Side.L), Token(CLOSE, label, Side.L)]
        _, source, transform = layer
        tokens = self.configs[source]
        if transform == "rotate":
            tokens = _rotate(tokens)
        elif transform == "fold":
            tokens = _fold(tokens)
        return _relabel(tokens, lambda e: ("img", e))

    def step(self) -> int:
        """Apply the image operation once and return the number of new edges."""
        self.steps += 1
        classes = _UnionFind()
        stacked = {}
        for i in range(1, self.size + 1):
            tokens = []
            for layer in self.layers[i]:
                tokens.extend(self._layer_tokens(layer))
            stacked[i] = tokens
        amalgamated = {i: _amalgamate(stacked[i], classes) for i in stacked}

        members: dict[object, list] = {}
        for i in range(1, self.size + 1):
            for token in stacked[i]:
                if token.kind != PUNCT:
                    members.setdefault(classes.find(token.edge), [])
                    if token.edge not in members[classes.find(token.edge)]:
                        members[classes.find(token.edge)].append(token.edge)

        claims: dict[object, int | None] = {}
        for root, labels in members.items():
            candidates = set()
            for kind, value in labels:
                if kind == "real" and value in self.real_ids:
                    candidates.add(self.real_ids[value])
                elif kind == "img" and value in self.pi_map:
                    candidates.add(self.pi_map[value])
            if len(candidates) > 1:
                raise InternalConsistencyError(
                    f"edges {sorted(candidates)} amalgamated at step {self.steps}"
                )
            claims[root] = candidates.pop() if candidates else None

        claimants = defaultdict(list)
        for root, claim in claims.items():
            if claim is not None:
                claimants[claim].append(root)
        ids: dict[object, int] = {}
        for claim, roots in claimants.items():
            keeper = min(roots, key=lambda r: min(_label_priority(x) for x in members[r]))
            ids[keeper] = claim
            if len(roots) > 1:
                _LOGGER.debug("edge %s splits into %s classes at step %s", claim, len(roots), self.steps)
        new_edges = 0
        depths = {}
        for root in members:
            if root not in ids:
                ids[root] = self.next_id
                self.next_id += 1
                new_edges += 1
                depths[ids[root]] = self.steps
            else:
                depths[ids[root]] = self.depths.get(ids[root], self.steps)

        def edge_id(label):
            return ids[classes.find(label)]

        pi_map = {}
        for edge in self.depths:
            label = ("img", edge)
            if classes.find(label) in ids:
                pi_map[edge] = edge_id(label)
        b_rows: dict[int, Counter] = defaultdict(Counter)
        for labels in members.values():
            for label in labels:
                if label[0] == "real":
                    key = label[1]
                    self.real_ids[key] = edge_id(label)
                    b_rows[key[1]][edge_id(label)] += 1

        self.configs = {i: _relabel(tokens, edge_id) for i, tokens in amalgamated.items()}
        self.depths = depths
        self.pi_map = {e: image for e, image in pi_map.items()}
        self.b_rows = dict(b_rows)
        _LOGGER.debug(
            "step %s: %s edges, %s new", self.steps, len(self.depths), new_edges
        )
        return new_edges

    def build(self, description: TrackDescription | None, stable: bool) -> TrainTrack:
        edges = []
        for j in range(1, self.size + 1):
            tokens = self.configs[j]
            chord_count = sum(1 for t in tokens if t.kind == CHORD)
            inside = {Side.L: [], Side.R: []}
            enclosing = set()
            # loops with another loop nested inside do not bound an empty disk
            nesting = set()
            for token in tokens:
                if token.kind == OPEN:
                    if inside[token.side]:
                        nesting.add(inside[token.side][-1])
                    inside[token.side].append(token.edge)
                elif token.kind == CLOSE:
                    inside[token.side].pop()
                elif token.kind == PUNCT:
                    enclosing.update(inside[Side.L])
                    enclosing.update(inside[Side.R])
            seen = set()
            for token in tokens:
                if token.kind == PUNCT or token.edge in seen:
                    continue
                seen.add(token.edge)
                if token.kind == CHORD:
                    kind = EdgeKind.BIGON_SIDE if chord_count >= 2 else EdgeKind.CHORD
                    endpoints = ((j, Side.L), (j, Side.R))
                else:
                    kind = EdgeKind.LOOP if token.edge in nesting else EdgeKind.BUBBLE
                    endpoints = ((j, token.side), (j, token.side))
                edges.append(
                    InfEdge(
                        id=token.edge,
                        junction=j,
                        kind=kind,
                        endpoints=endpoints,
                        depth=self.depths[token.edge],
                        encloses_puncture=token.edge in enclosing,
                    )
                )
        edges.sort(key=lambda e: e.id)
        live = {e.id for e in edges}
        return TrainTrack(
            orbit=self.orbit,
            description=description,
            real_edges=tuple(range(1, self.size)),
            inf_edges=tuple(edges),
            junction_configs=tuple(tuple(self.configs[j]) for j in range(1, self.size + 1)),
            pi_map={e: f for e, f in self.pi_map.items() if e in live and f in live},
            b_rows={j: dict(row) for j, row in sorted(self.b_rows.items())},
            depth=self.steps,
            stable=stable,
        )


def grow_invariant_track(
    orbit: CriticalOrbit, depth: int, description: TrackDescription | None = None
) -> TrainTrack:
    """Grow the invariant track by applying the image operation `depth` times.

    Growth stops early once a step creates no new edge; the track is then
    complete and marked stable.
    """
    if depth < 1:
        raise DomainError(f"depth must be positive, got {depth}")
    grower = _TrackGrower(orbit)
    stable = False
    for _ in range(depth):
        new_edges = grower.step()
        if new_edges == 0 and grower.steps > 1:
            stable = True
            break
    track = grower.build(description, stable)
    _LOGGER.debug(
        "grew track for %s: depth=%s edges=%s stable=%s",
        orbit.s,
        track.depth,
        len(track.inf_edges),
        stable,
    )
    return track


def describe(track) -> str:
    """Render the junction types in tuple notation, e.g. `(S+ ; B)`."""
    if isinstance(track, TrackDescription):
        return str(track)
    if track.description is None or not track.inf_edges:
        return "(" + " ; ".join([EMPTY_JUNCTION] * track.orbit.size) + ")"
    return str(track.description)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    mismatch: tuple[int, str] | None = None
    notes: tuple[str, ...] = ()


@dataclass
class _JunctionSummary:
    chords: list[int]
    loops: list[tuple[int, Side, bool, int]]
    edge_tokens: list[Token]

    @classmethod
    def of(cls, tokens) -> _JunctionSummary:
        chords, loops = [], []
        edge_tokens = [t for t in tokens if t.kind != PUNCT]
        inside = {Side.L: [], Side.R: []}
        enclosing = set()
        for token in tokens:
            if token.kind == OPEN:
                inside[token.side].append(token.edge)
            elif token.kind == CLOSE:
                inside[token.side].pop()
            elif token.kind == PUNCT:
                enclosing.update(inside[Side.L] + inside[Side.R])
        for position, token in enumerate(edge_tokens):
            if token.kind == CHORD:
                chords.append(position)
            elif token.kind == OPEN:
                loops.append((token.edge, token.side, False, position))
        loops = [(e, side, e in enclosing, pos) for e, side, _, pos in loops]
        return cls(chords=chords, loops=loops, edge_tokens=edge_tokens)

    def external_bubbles(self) -> int:
        if not self.chords:
            return 0
        first, last = self.chords[0], self.chords[-1]
        return sum(1 for _, _, encl, pos in self.loops if not encl and (pos < first or pos > last))


def _check_junction(
    j: int, n: int, expected: JunctionType, summary: _JunctionSummary, periodic: bool
) -> str | None:
    family = expected.config.family
    loops = summary.loops
    if (family in PREPERIODIC_CONFIGS) == periodic:
        where = "periodic" if periodic else "preperiodic"
        return f"{expected.config.value} junction on a {where} point"
    if any(encl for _, _, encl, _ in loops) and family not in ENCLOSING_CONFIGS:
        return f"loop encloses the puncture in a {expected.config.value} junction"
    if family == "BP" and len(loops) > 1:
        return "more than one loop in a BP junction"
    if family in PREPERIODIC_CONFIGS and len(loops) > 1:
        return f"more than one bubble in a {family} junction"
    if expected.side is not None and any(side is not expected.side for _, side, _, _ in loops):
        return f"loop attached away from the {expected.side.value} switch"
    if not 1 < j < n or not summary.chords:
        return None
    chords, last = summary.chords, len(summary.edge_tokens) - 1
    if family in SINGLE_CHORD_CONFIGS:
        if len(chords) > 1:
            return f"{len(chords)} chords in a {expected.config.value} junction"
        if expected.side is Side.R and chords[0] != 0:
            return "through-chord is not above the other edges"
        if expected.side is Side.L and chords[0] != last:
            return "through-chord is not below the other edges"
    elif family in ("V3", "V0"):
        if len(chords) > 2:
            return f"{len(chords)} chords in a {family} junction"
        if any(position not in (0, last) for position in chords):
            return f"chord inside a {family} junction"
    elif family in ("V1", "V2"):
        if summary.external_bubbles() > expected.config.external_bubbles:
            return f"too many bubbles outside the chords of a {expected.config.value} junction"
    return None


def _loop_side_chirality(summary: _JunctionSummary) -> str | None:
    sides = {side for _, side, _, _ in summary.loops}
    if len(sides) != 1:
        return None
    return "+" if sides.pop() is Side.R else "-"


def _bouquet_chirality(track: TrainTrack, summary: _JunctionSummary) -> str | None:
    """Read the sign of a bubble bouquet off the depths of its outermost bubbles.

    On the right switch an S+ bouquet stacks newer bubbles below older ones;
    on the left switch the order is reversed.
    """
    loops = summary.loops
    sides = {side for _, side, _, _ in loops}
    if len(loops) < 2 or len(sides) != 1:
        return None
    first, last = track.edge(loops[0][0]).depth, track.edge(loops[-1][0]).depth
    if first == last:
        return None
    return "+" if (sides.pop() is Side.R) == (first < last) else "-"


def _check_chirality(track: TrainTrack, desc: TrackDescription) -> tuple[int, str] | None:
    anchor = _loop_side_chirality(_JunctionSummary.of(track.config(_sign_junction(track.orbit))))
    for j, expected in enumerate(desc.junctions, start=1):
        config = expected.config
        if config.chirality is None:
            continue
        if config.family == "S":
            grown = _bouquet_chirality(track, _JunctionSummary.of(track.config(j)))
        else:
            grown = anchor
        if grown is not None and grown != config.chirality:
            return j, f"{config.value} junction grew with sign {grown}"
    return None


def validate_track(track: TrainTrack, desc: TrackDescription, depth: int | None = None) -> ValidationReport:
    """Check a grown truncation against a classified description.

    Contradictions fail the report at the first junction found; features
    not grown yet are only noted.
    """
    n = track.orbit.size
    depth = track.depth if depth is None else depth
    if len(desc.junctions) != n:
        return ValidationReport(False, (0, f"description has {len(desc.junctions)} junctions, track {n}"))
    notes = []
    for j in range(1, n + 1):
        expected = desc.junction(j)
        summary = _JunctionSummary.of(track.config(j))
        problem = _check_junction(j, n, expected, summary, track.orbit.is_periodic_point(j))
        if problem is not None:
            _LOGGER.debug("junction %s fails validation: %s", j, problem)
            return ValidationReport(False, (j, problem), tuple(notes))
        if not summary.edge_tokens:
            notes.append(f"junction {j}: no edges at depth {depth}, insufficient depth")
        elif expected.config.family in INFINITE_CONFIGS and len(summary.loops) < 2:
            notes.append(f"junction {j}: {expected.config.value} not resolved at depth {depth}, insufficient depth")
        elif 1 < j < n and not summary.chords:
            notes.append(f"junction {j}: through-chord missing at depth {depth}, insufficient depth")
    mismatch = _check_chirality(track, desc)
    if mismatch is not None:
        _LOGGER.debug("junction %s fails validation: %s", *mismatch)
        return ValidationReport(False, mismatch, tuple(notes))
    return ValidationReport(True, None, tuple(notes))
