"""Edge lengths, scaffold threading and staple generation.

Layout along every face strand of length ``L`` (tree edge) or ``L/2`` per
half (cut edge), in scaffold direction::

    tree strand   |arm| interior (main staple arm, C-shape arm) |arm|
    cut half      |arm| cut-staple side |    ... U-turn ...

``arm`` nucleotides at each vertex end belong to that vertex's staple. The
interior of a tree edge is shared by a main staple (one arm per strand,
joined by a staple crossover next to the lower-position vertex arms) and a
C-shaped staple covering the rest. Each cut-edge U-turn is bridged by one
staple spanning the two half-strand interiors on either side of it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import FootprintOverlap, InvalidConfig, LengthMismatch, SequenceError
from .mesh_io import PolyhedralMesh
from .router import EulerianCircuit, Half
from .sequences import ScaffoldSource, reverse_complement
from .topology import SpanningTreeResult

Range = tuple[int, int]

LONG_VERTEX_STAPLE = 60


def allowed_edge_length(bp: int) -> bool:
    """Even lengths that are 52 or a rounded whole number of 10.5-bp turns."""
    if bp % 2:
        return False
    if bp == 52:
        return True
    k = round(bp / 10.5)
    return any(math.floor(10.5 * j + 0.5) == bp for j in (k - 1, k, k + 1) if j > 0)


@dataclass(frozen=True)
class DesignParameters:
    bp_per_turn: float = 10.5
    tree_edge_len: int = 52
    vertex_arm_len: int = 10
    default_scaffold_len: int = 7429

    def __post_init__(self):
        if not allowed_edge_length(self.tree_edge_len):
            raise InvalidConfig(
                f"edge length {self.tree_edge_len} bp is neither 52 nor an even rounded multiple of 10.5"
            )
        if self.cut_staple_side < 1 or self.c_staple_arm < 1:
            raise InvalidConfig(f"edge length {self.tree_edge_len} bp leaves no room between vertex arms")

    @property
    def cut_half_len(self) -> int:
        return self.tree_edge_len // 2

    @property
    def edge_interior(self) -> int:
        return self.tree_edge_len - 2 * self.vertex_arm_len

    @property
    def edge_staple_arm(self) -> int:
        # 21 of the 32 interior nt at 52 bp
        return 2 * self.edge_interior // 3

    @property
    def c_staple_arm(self) -> int:
        return self.edge_interior - self.edge_staple_arm

    @property
    def cut_staple_side(self) -> int:
        return self.cut_half_len - self.vertex_arm_len


def assign_lengths(circuit: EulerianCircuit, params: DesignParameters = DesignParameters()) -> tuple[int, ...]:
    return tuple(params.tree_edge_len if s.half is Half.WHOLE else params.cut_half_len for s in circuit.segments)


@dataclass(frozen=True)
class ScaffoldDesign:
    sequence: str
    segment_map: tuple[Range, ...]
    source: ScaffoldSource = ScaffoldSource.BUNDLED_M13

    def bases(self, r: Range) -> str:
        return self.sequence[r[0] : r[1]]


def thread_scaffold(
    circuit: EulerianCircuit,
    lengths: tuple[int, ...],
    scaffold: str,
    source: ScaffoldSource | str = ScaffoldSource.BUNDLED_M13,
) -> ScaffoldDesign:
    if len(lengths) != len(circuit.segments):
        raise LengthMismatch(f"{len(lengths)} lengths for {len(circuit.segments)} segments")
    total = sum(lengths)
    if len(scaffold) != total:
        raise LengthMismatch(f"scaffold has {len(scaffold)} nt; circuit needs {total}")
    ranges = []
    pos = 0
    for n in lengths:
        ranges.append((pos, pos + n))
        pos += n
    return ScaffoldDesign(scaffold, tuple(ranges), ScaffoldSource(source))


class StapleKind(Enum):
    VERTEX = "vertex"
    EDGE = "edge"
    CUT_EDGE = "cutedge"
    C_SHAPE = "cshape"

    @property
    def family(self) -> str:
        return "edge" if self is StapleKind.C_SHAPE else self.value


@dataclass(frozen=True)
class Staple:
    """``footprint`` ranges are listed in staple 5'->3' order."""

    kind: StapleKind
    sequence: str
    footprint: tuple[Range, ...]
    anchor: int

    def __len__(self) -> int:
        return len(self.sequence)


@dataclass(frozen=True)
class StapleSet:
    staples: tuple[Staple, ...]
    scaffold_nt: int
    uncovered: tuple[Range, ...] = ()
    warnings: tuple[str, ...] = field(default=())

    @property
    def counts(self) -> dict[str, int]:
        out = {"vertex": 0, "edge": 0, "cutedge": 0}
        for s in self.staples:
            out[s.kind.family] += 1
        return out

    @property
    def total_staple_nt(self) -> int:
        return sum(len(s) for s in self.staples)

    @property
    def total_design_nt(self) -> int:
        return self.scaffold_nt + self.total_staple_nt

    def of_kind(self, *kinds: StapleKind) -> list[Staple]:
        return [s for s in self.staples if s.kind in kinds]


def _staple(kind: StapleKind, anchor: int, footprint: list[Range], scaffold: ScaffoldDesign) -> Staple:
    seq = "".join(reverse_complement(scaffold.bases(r)) for r in footprint)
    return Staple(kind, seq, tuple(footprint), anchor)


def _vertex_staples(design: ScaffoldDesign, circuit: EulerianCircuit, arm: int) -> list[Staple]:
    # Two stacks per vertex: the inbound arm (end of the strand arriving at a
    # corner) and the outbound arm (start of the strand leaving it), pushed in
    # circuit order. Popping both stacks in lockstep walks the corners
    # clockwise, which is the staple's 5'->3' direction; consecutive pops then
    # pair the two strands of the same edge into one arm.
    segs = circuit.segments
    rng = design.segment_map
    inbound: dict[int, list[Range]] = {}
    outbound: dict[int, list[Range]] = {}
    arm_edge: dict[Range, int] = {}
    n = len(segs)
    for i in range(n):
        arriving, leaving = segs[i], segs[(i + 1) % n]
        v = arriving.end_vertex
        if v is None:
            continue  # midpoint U-turn, not a corner
        a_end = rng[i][1]
        b_start = rng[(i + 1) % n][0]
        in_r, out_r = (a_end - arm, a_end), (b_start, b_start + arm)
        arm_edge[in_r], arm_edge[out_r] = arriving.edge, leaving.edge
        inbound.setdefault(v, []).append(in_r)
        outbound.setdefault(v, []).append(out_r)

    staples = []
    for v in sorted(inbound):
        ins, outs = inbound[v], outbound[v]
        footprint: list[Range] = []
        while outs:
            footprint.append(outs.pop())
            footprint.append(ins.pop())
        pieces = [arm_edge[r] for r in footprint]
        paired = pieces[1:] + pieces[:1]
        if any(paired[j] != paired[j + 1] for j in range(0, len(paired), 2)):
            raise SequenceError(f"corners of vertex {v + 1} are not visited in face-fan order")
        staples.append(_staple(StapleKind.VERTEX, v, footprint, design))
    return staples


def generate_staples(
    design: ScaffoldDesign,
    circuit: EulerianCircuit,
    tree: SpanningTreeResult,
    params: DesignParameters = DesignParameters(),
) -> StapleSet:
    arm = params.vertex_arm_len
    rng = design.segment_map
    segs = circuit.segments
    staples = _vertex_staples(design, circuit, arm)

    whole: dict[int, dict[bool, int]] = {}
    uturns: dict[int, list[tuple[int, int]]] = {}
    for i, s in enumerate(segs):
        if s.half is Half.WHOLE:
            whole.setdefault(s.edge, {})[s.direction[0] < s.direction[1]] = i
        elif s.half is Half.FIRST_HALF:
            uturns.setdefault(s.edge, []).append((s.direction[0], i))

    m, c = params.edge_staple_arm, params.c_staple_arm
    L = params.tree_edge_len
    for eid in sorted(whole):
        up, down = rng[whole[eid][True]][0], rng[whole[eid][False]][0]
        main = [(up + arm, up + arm + m), (down + L - arm - m, down + L - arm)]
        cshape = [(down + arm, down + arm + c), (up + arm + m, up + L - arm)]
        staples.append(_staple(StapleKind.EDGE, eid, main, design))
        staples.append(_staple(StapleKind.C_SHAPE, eid, cshape, design))

    h, side = params.cut_half_len, params.cut_staple_side
    for eid in sorted(uturns):
        for _, i in sorted(uturns[eid]):
            first, second = rng[i][0], rng[i + 1][0]
            footprint = [(second, second + side), (first + arm, first + h)]
            staples.append(_staple(StapleKind.CUT_EDGE, eid, footprint, design))

    order = {StapleKind.VERTEX: 0, StapleKind.EDGE: 1, StapleKind.C_SHAPE: 1, StapleKind.CUT_EDGE: 2}
    staples.sort(key=lambda s: order[s.kind])

    uncovered = _check_coverage(staples, len(design.sequence))
    warnings = []
    if uncovered:
        span = ", ".join(f"{a}-{b}" for a, b in uncovered)
        warnings.append(f"scaffold positions not covered by any staple: {span}")
    for s in staples:
        if s.kind is StapleKind.VERTEX and len(s) > LONG_VERTEX_STAPLE:
            warnings.append(f"vertex staple at v{s.anchor + 1} is {len(s)} nt (longer than {LONG_VERTEX_STAPLE})")
    return StapleSet(tuple(staples), len(design.sequence), uncovered, tuple(warnings))


def _check_coverage(staples: list[Staple], length: int) -> tuple[Range, ...]:
    owner = [-1] * length
    for k, s in enumerate(staples):
        for a, b in s.footprint:
            for p in range(a, b):
                if owner[p] != -1:
                    raise FootprintOverlap(f"scaffold position {p} bound by two staples")
                owner[p] = k
    gaps = []
    p = 0
    while p < length:
        if owner[p] == -1:
            q = p
            while q < length and owner[q] == -1:
                q += 1
            gaps.append((p, q))
            p = q
        else:
            p += 1
    return tuple(gaps)


# Totals printed in the original report, for the two solids it lists.
PAPER_TOTALS = {"tetrahedron": 1026, "octahedron": 2058}

_PLATONIC = {
    (4, 6, 4, 3, 3): "tetrahedron",
    (8, 12, 6, 3, 4): "cube",
    (6, 12, 8, 4, 3): "octahedron",
    (20, 30, 12, 3, 5): "dodecahedron",
    (12, 30, 20, 5, 3): "icosahedron",
}


def recognize_platonic(mesh: PolyhedralMesh) -> str | None:
    """Name of the Platonic solid with this combinatorial type, if any."""
    degree = [0] * len(mesh.vertices)
    for a, b in mesh.edges:
        degree[a] += 1
        degree[b] += 1
    sizes = {len(f) for f in mesh.faces}
    if len(set(degree)) != 1 or len(sizes) != 1:
        return None
    key = (len(mesh.vertices), len(mesh.edges), len(mesh.faces), degree[0], sizes.pop())
    return _PLATONIC.get(key)


@dataclass(frozen=True)
class DesignTotals:
    scaffold_nt: int
    staple_nt: int
    total_nt: int
    per_kind: dict[str, int]
    solid: str | None = None
    paper_total_nt: int | None = None
    note: str | None = None


def design_totals(design: ScaffoldDesign, staples: StapleSet, mesh: PolyhedralMesh | None = None) -> DesignTotals:
    per_kind = {"vertex": 0, "edge": 0, "cutedge": 0}
    for s in staples.staples:
        per_kind[s.kind.family] += len(s)
    scaffold_nt = len(design.sequence)
    staple_nt = sum(per_kind.values())
    solid = recognize_platonic(mesh) if mesh is not None else None
    reported = PAPER_TOTALS.get(solid) if solid else None
    note = None
    if reported is not None:
        note = (
            f"previously published total for the {solid} is {reported} nt; it does not follow from "
            f"the edge lengths (scaffold {scaffold_nt} nt, full staple coverage {staple_nt} nt)"
        )
    return DesignTotals(scaffold_nt, staple_nt, scaffold_nt + staple_nt, per_kind, solid, reported, note)
