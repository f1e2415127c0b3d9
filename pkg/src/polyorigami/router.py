"""Pseudo-vertex expansion and the anticlockwise scaffold circuit.

Each undirected edge carries two antiparallel scaffold strands, one along
each adjacent face, running in that face's winding direction. A corner
pseudo-vertex ``(v, f)`` joins the strand of face ``f`` arriving at ``v`` to
the strand of ``f`` leaving ``v``. Tree edges keep both strands whole. A
cut edge is split at its midpoint by two pseudo-nodes, each turning the
scaffold from one face's strand back onto the other face's strand, which
is the single scaffold crossover of that edge.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum

from .errors import MultipleCycles, NonEulerian, RoutingError
from .mesh_io import Edge
from .topology import EdgeGraph, SpanningTreeResult


class Half(Enum):
    WHOLE = "whole"
    FIRST_HALF = "first"
    SECOND_HALF = "second"


@dataclass(frozen=True)
class PseudoVertex:
    """Face corner of ``vertex`` in ``face``; ``joins`` = (edge in, edge out)."""

    vertex: int
    face: int
    joins: tuple[int, int]


@dataclass(frozen=True)
class MidpointNode:
    """U-turn on a cut edge for the strand that left ``from_vertex``."""

    edge: int
    from_vertex: int


@dataclass(frozen=True)
class Segment:
    """Directed piece of scaffold.

    ``direction`` is the (tail, head) of the full face strand the piece lies
    on, so a FIRST_HALF runs tail->midpoint and a SECOND_HALF midpoint->head.
    """

    edge: int
    direction: tuple[int, int]
    half: Half
    face: int
    enter: int
    leave: int

    @property
    def start_vertex(self) -> int | None:
        return None if self.half is Half.SECOND_HALF else self.direction[0]

    @property
    def end_vertex(self) -> int | None:
        return None if self.half is Half.FIRST_HALF else self.direction[1]


@dataclass(frozen=True)
class ExpandedGraph:
    corners: tuple[PseudoVertex, ...]
    midpoints: tuple[MidpointNode, ...]
    arcs: tuple[Segment, ...]
    root: int
    start_arc: int

    @property
    def node_count(self) -> int:
        return len(self.corners) + len(self.midpoints)

    def node(self, node_id: int) -> PseudoVertex | MidpointNode:
        if node_id < len(self.corners):
            return self.corners[node_id]
        return self.midpoints[node_id - len(self.corners)]

    def degree(self, node_id: int) -> int:
        return sum((a.enter == node_id) + (a.leave == node_id) for a in self.arcs)


_HALF_ORDER = {Half.WHOLE: 0, Half.FIRST_HALF: 1, Half.SECOND_HALF: 2}


def expand_pseudo_vertices(graph: EdgeGraph, tree: SpanningTreeResult) -> ExpandedGraph:
    if not graph.faces:
        raise RoutingError("graph carries no faces; pseudo-vertex expansion needs the mesh faces")

    corner_keys = []
    joins = {}
    for fi, face in enumerate(graph.faces):
        n = len(face)
        for i, v in enumerate(face):
            corner_keys.append((v, fi))
            joins[(v, fi)] = (graph.edge_id(face[i - 1], v), graph.edge_id(v, face[(i + 1) % n]))
    corner_keys.sort()
    corner_id = {k: i for i, k in enumerate(corner_keys)}
    corners = tuple(PseudoVertex(v, f, joins[(v, f)]) for v, f in corner_keys)

    midpoints: list[MidpointNode] = []
    mid_id = {}
    for eid in tree.cut_edges:
        for v in graph.edges[eid]:
            mid_id[(eid, v)] = len(corners) + len(midpoints)
            midpoints.append(MidpointNode(eid, v))

    arcs = []
    for fi, face in enumerate(graph.faces):
        n = len(face)
        for i, a in enumerate(face):
            b = face[(i + 1) % n]
            eid = graph.edge_id(a, b)
            src, dst = corner_id[(a, fi)], corner_id[(b, fi)]
            if tree.is_tree(eid):
                arcs.append(Segment(eid, (a, b), Half.WHOLE, fi, src, dst))
            else:
                arcs.append(Segment(eid, (a, b), Half.FIRST_HALF, fi, src, mid_id[(eid, a)]))
                arcs.append(Segment(eid, (a, b), Half.SECOND_HALF, fi, mid_id[(eid, b)], dst))
    arcs.sort(key=lambda s: (s.edge, s.direction, _HALF_ORDER[s.half]))

    node_count = len(corners) + len(midpoints)
    outs = Counter(a.enter for a in arcs)
    ins = Counter(a.leave for a in arcs)
    bad = [n for n in range(node_count) if outs[n] != 1 or ins[n] != 1]
    if bad:
        raise NonEulerian(f"{len(bad)} pseudo-vertices do not have exactly one strand in and one out")

    root = tree.root
    incident = [eid for _, eid in graph.adjacency[root] if tree.is_tree(eid)]
    if not incident:
        raise RoutingError(f"root vertex {root + 1} has no spanning-tree edge")
    first_edge = min(incident)
    start = next(
        i for i, s in enumerate(arcs) if s.edge == first_edge and s.half is Half.WHOLE and s.direction[0] == root
    )
    return ExpandedGraph(corners, tuple(midpoints), tuple(arcs), root, start)


@dataclass(frozen=True)
class EulerianCircuit:
    segments: tuple[Segment, ...]
    start_segment: int = 0

    def runs(self) -> list[tuple[int, ...]]:
        """Vertex-to-vertex scaffold pieces as tuples of segment indices.

        A whole tree strand is one run; a cut-edge U-turn (first half then the
        returning second half) is one run.
        """
        out = []
        i = 0
        n = len(self.segments)
        while i < n:
            if self.segments[i].half is Half.FIRST_HALF:
                out.append((i, i + 1))
                i += 2
            else:
                out.append((i,))
                i += 1
        return out


def eulerian_circuit(expanded: ExpandedGraph) -> EulerianCircuit:
    """Walk the forced closed circuit starting at the canonical start arc.

    Every pseudo-vertex has one strand in and one out, so the walk is fixed
    once the start is; if it closes before using every strand the expansion
    decomposed into several loops and :class:`MultipleCycles` is raised.
    """
    arcs = expanded.arcs
    out_arc = {a.enter: i for i, a in enumerate(arcs)}
    walk = []
    i = expanded.start_arc
    while True:
        walk.append(arcs[i])
        i = out_arc[arcs[i].leave]
        if i == expanded.start_arc:
            break
    if len(walk) != len(arcs):
        raise MultipleCycles(count_cycles(expanded))
    return EulerianCircuit(tuple(walk))


def count_cycles(expanded: ExpandedGraph) -> int:
    out_arc = {a.enter: i for i, a in enumerate(expanded.arcs)}
    seen = set()
    cycles = 0
    for start in range(len(expanded.arcs)):
        if start in seen:
            continue
        cycles += 1
        i = start
        while i not in seen:
            seen.add(i)
            i = out_arc[expanded.arcs[i].leave]
    return cycles


@dataclass(frozen=True)
class CircuitReport:
    edge_visits: tuple[int, ...]
    first_edge: int
    second_edge: int | None
    traversal_counts: dict[int, int]


def circuit_report(circuit: EulerianCircuit) -> CircuitReport:
    visits = tuple(circuit.segments[run[0]].edge for run in circuit.runs())
    first = visits[0]
    second = next((e for e in visits if e != first), None)
    # one traversal per face strand: whole strands plus the first half of split ones
    counts = Counter(s.edge for s in circuit.segments if s.half is not Half.SECOND_HALF)
    return CircuitReport(visits, first, second, dict(sorted(counts.items())))


def circuit_annotation(graph: EdgeGraph, circuit: EulerianCircuit) -> list[tuple[Edge, str]]:
    """Stage-export tags: first routed edge red, second distinct edge blue."""
    report = circuit_report(circuit)
    tags = [(graph.edges[report.first_edge], "red")]
    if report.second_edge is not None:
        tags.append((graph.edges[report.second_edge], "blue"))
    return tags
