"""Edge graph of a mesh, branching spanning tree, crossover classification."""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from .errors import Disconnected, TopologyError
from .mesh_io import Edge, PolyhedralMesh, face_halfedges


@dataclass(frozen=True)
class EdgeGraph:
    """Undirected graph with edges sorted lexicographically and ids ``0..E-1``.

    ``adjacency[v]`` lists ``(neighbor, edge_id)`` in face-fan order when the
    graph comes from a mesh (consecutive entries share a face), otherwise by
    neighbor id. ``edge_faces[e]`` is ``(face with a->b, face with b->a)``
    for ``edges[e] == (a, b)``.
    """

    vertex_count: int
    edges: tuple[Edge, ...]
    adjacency: tuple[tuple[tuple[int, int], ...], ...]
    edge_faces: tuple[tuple[int, int], ...] = ()
    faces: tuple[tuple[int, ...], ...] = ()
    edge_index: dict[Edge, int] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if not self.edge_index:
            object.__setattr__(self, "edge_index", {e: i for i, e in enumerate(self.edges)})

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[Edge]) -> EdgeGraph:
        """Abstract graph without faces; adjacency ordered by neighbor id."""
        norm = sorted({(a, b) if a < b else (b, a) for a, b in edges})
        adj: list[list[tuple[int, int]]] = [[] for _ in range(vertex_count)]
        for eid, (a, b) in enumerate(norm):
            adj[a].append((b, eid))
            adj[b].append((a, eid))
        return cls(vertex_count, tuple(norm), tuple(tuple(sorted(x)) for x in adj))

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def edge_id(self, a: int, b: int) -> int:
        return self.edge_index[(a, b) if a < b else (b, a)]

    def neighbors(self, v: int) -> list[int]:
        return sorted(w for w, _ in self.adjacency[v])


def build_graph(mesh: PolyhedralMesh) -> EdgeGraph:
    """Derive the edge graph of a validated mesh.

    Raises :class:`Disconnected` for multi-component meshes or vertices no
    face uses.
    """
    edges = mesh.edges
    index = {e: i for i, e in enumerate(edges)}
    face_of: dict[Edge, int] = {}
    prev_of: dict[Edge, int] = {}
    for fi, face in enumerate(mesh.faces):
        for i, (a, b) in enumerate(face_halfedges(face)):
            face_of[(a, b)] = fi
            prev_of[(a, b)] = face[i - 1]

    edge_faces = tuple((face_of[(a, b)], face_of[(b, a)]) for a, b in edges)

    out: list[list[int]] = [[] for _ in range(len(mesh.vertices))]
    for a, b in face_of:
        out[a].append(b)
    adjacency = []
    for v, targets in enumerate(out):
        fan = []
        if targets:
            start = min(targets)
            w = start
            while True:
                fan.append((w, index[(v, w) if v < w else (w, v)]))
                # next outgoing half-edge around v shares face face_of[(v, w)]
                w = prev_of[(v, w)]
                if w == start:
                    break
        adjacency.append(tuple(fan))

    graph = EdgeGraph(len(mesh.vertices), edges, tuple(adjacency), edge_faces, mesh.faces, index)
    _require_connected(graph)
    return graph


def _require_connected(graph: EdgeGraph) -> None:
    if graph.vertex_count == 0:
        raise Disconnected("graph has no vertices")
    seen = {0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w, _ in graph.adjacency[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    if len(seen) != graph.vertex_count:
        missing = sorted(set(range(graph.vertex_count)) - seen)
        raise Disconnected(
            f"graph has more than one component; vertices unreachable from 1: {[m + 1 for m in missing[:10]]}"
        )


class Crossover(Enum):
    ZERO = "zero"  # spanning-tree edge
    ONE = "one"  # cut edge


@dataclass(frozen=True)
class SpanningTreeResult:
    root: int
    tree_edges: frozenset[int]
    classification: tuple[Crossover, ...]
    expansion_order: tuple[int, ...]

    @property
    def cut_edges(self) -> tuple[int, ...]:
        return tuple(e for e, c in enumerate(self.classification) if c is Crossover.ONE)

    def is_tree(self, edge_id: int) -> bool:
        return self.classification[edge_id] is Crossover.ZERO


def prim_spanning_tree(graph: EdgeGraph, root: int = 0) -> SpanningTreeResult:
    """Prim's algorithm with unit weights grown from ``root``.

    Among frontier edges of equal weight the one whose tree-side endpoint
    joined the tree earliest wins, then the lowest outside vertex id. With
    unit weights this makes the expansion order a breadth-first order,
    which yields the most branched tree.
    """
    if not 0 <= root < graph.vertex_count:
        raise TopologyError(f"root vertex {root} outside 0..{graph.vertex_count - 1}")
    joined = {root: 0}
    order = [root]
    tree: set[int] = set()
    heap: list[tuple[int, int, int, int]] = []

    def push_frontier(u: int) -> None:
        for w, eid in graph.adjacency[u]:
            if w not in joined:
                heapq.heappush(heap, (1, joined[u], w, eid))

    push_frontier(root)
    while heap:
        _, _, w, eid = heapq.heappop(heap)
        if w in joined:
            continue
        joined[w] = len(order)
        order.append(w)
        tree.add(eid)
        push_frontier(w)

    if len(order) != graph.vertex_count:
        raise Disconnected("spanning tree does not reach every vertex")
    classification = tuple(Crossover.ZERO if e in tree else Crossover.ONE for e in range(len(graph.edges)))
    return SpanningTreeResult(root, frozenset(tree), classification, tuple(order))


@dataclass(frozen=True)
class TreeStats:
    tree_edge_count: int
    cut_edge_count: int
    max_branch_degree: int
    leaf_count: int


def tree_stats(result: SpanningTreeResult, graph: EdgeGraph) -> TreeStats:
    deg = [0] * graph.vertex_count
    for eid in result.tree_edges:
        a, b = graph.edges[eid]
        deg[a] += 1
        deg[b] += 1
    return TreeStats(
        tree_edge_count=len(result.tree_edges),
        cut_edge_count=len(graph.edges) - len(result.tree_edges),
        max_branch_degree=max(deg, default=0),
        leaf_count=sum(1 for d in deg if d == 1),
    )


def tree_annotation(graph: EdgeGraph, result: SpanningTreeResult) -> list[tuple[Edge, str]]:
    """Stage-export tags: every tree edge red, in edge-id order."""
    return [(graph.edges[e], "red") for e in sorted(result.tree_edges)]


def edge_label(edges: Sequence[Edge], eid: int) -> str:
    """1-based ``a-b`` label matching .obj vertex numbering."""
    a, b = edges[eid]
    return f"{a + 1}-{b + 1}"
