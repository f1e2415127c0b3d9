from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyorigami.app import design_mesh
from polyorigami.errors import InvalidConfig, LengthMismatch
from polyorigami.router import EulerianCircuit, Half, Segment, eulerian_circuit, expand_pseudo_vertices
from polyorigami.sequences import bundled_m13
from polyorigami.stapler import (
    DesignParameters,
    StapleKind,
    allowed_edge_length,
    assign_lengths,
    design_totals,
    recognize_platonic,
    thread_scaffold,
)
from polyorigami.topology import build_graph, prim_spanning_tree

from oracles import random_polyhedron

PAIR = {"A": "T", "T": "A", "C": "G", "G": "C"}


def circuit_of(mesh):
    g = build_graph(mesh)
    t = prim_spanning_tree(g)
    return g, t, eulerian_circuit(expand_pseudo_vertices(g, t))


def segment_sum_oracle(graph, tree, tree_len=52, half=26):
    # each tree edge: two whole strands; each cut edge: two strands, each split in two halves
    cut = len(graph.edges) - len(tree.tree_edges)
    return len(tree.tree_edges) * 2 * tree_len + cut * 4 * half


def complementary_base_by_base(staple, scaffold):
    k = 0
    for a, b in staple.footprint:
        for p in range(b - 1, a - 1, -1):
            if PAIR[scaffold[p]] != staple.sequence[k]:
                return False
            k += 1
    return k == len(staple.sequence)


@pytest.mark.parametrize("name, total", [("tetrahedron", 624), ("octahedron", 1248), ("cube", 1248)])
def test_assign_lengths_total(solid, name, total):
    g, t, c = circuit_of(solid(name))
    lengths = assign_lengths(c)
    assert sum(lengths) == segment_sum_oracle(g, t) == total
    assert {n for n, s in zip(lengths, c.segments) if s.half is Half.WHOLE} == {52}
    assert {n for n, s in zip(lengths, c.segments) if s.half is not Half.WHOLE} == {26}


def test_assign_lengths_tree_only_circuit():
    segs = tuple(Segment(e, (0, 1) if k == 0 else (1, 0), Half.WHOLE, 0, 0, 0) for e in range(3) for k in range(2))
    assert sum(assign_lengths(EulerianCircuit(segs))) == 2 * 52 * 3


def test_thread_scaffold_partition(solid):
    _, _, c = circuit_of(solid("tetrahedron"))
    lengths = assign_lengths(c)
    seq = bundled_m13()[:624]
    design = thread_scaffold(c, lengths, seq)
    covered = [p for a, b in design.segment_map for p in range(a, b)]
    assert covered == list(range(624))
    assert design.segment_map[0][0] == 0
    rev = thread_scaffold(c, lengths, seq[::-1])
    assert rev.segment_map == design.segment_map and rev.sequence != design.sequence
    with pytest.raises(LengthMismatch):
        thread_scaffold(c, lengths, seq[:600])


@pytest.mark.parametrize(
    "name, counts",
    [("tetrahedron", {"vertex": 4, "edge": 6, "cutedge": 6}), ("octahedron", {"vertex": 6, "edge": 10, "cutedge": 14})],
)
def test_paper_staple_counts(solid, name, counts):
    assert design_mesh(solid(name)).staples.counts == counts


@pytest.mark.parametrize("name", ["tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron"])
def test_staple_anatomy(solid, name):
    d = design_mesh(solid(name))
    g, scaffold = d.graph, d.scaffold.sequence
    seg_at = {}
    for i, (a, b) in enumerate(d.scaffold.segment_map):
        for p in range(a, b):
            seg_at[p] = d.circuit.segments[i]
    for s in d.staples.staples:
        assert complementary_base_by_base(s, scaffold)
        sizes = [b - a for a, b in s.footprint]
        pieces = [seg_at[a] for a, _ in s.footprint]
        if s.kind is StapleKind.VERTEX:
            n = g.degree(s.anchor)
            assert sizes == [10] * 2 * n and len(s) == 20 * n
            # consecutive pieces (cyclically, offset by one) are the two strands of one edge arm
            shifted = pieces[1:] + pieces[:1]
            for x, y in zip(shifted[::2], shifted[1::2]):
                assert x.edge == y.edge and x.direction == y.direction[::-1]
            assert {p.edge for p in pieces} == {e for _, e in g.adjacency[s.anchor]}
        elif s.kind is StapleKind.EDGE:
            assert sizes == [21, 21] and {p.edge for p in pieces} == {s.anchor}
            assert pieces[0].direction == pieces[1].direction[::-1]
        elif s.kind is StapleKind.C_SHAPE:
            assert sizes == [11, 11] and {p.edge for p in pieces} == {s.anchor}
        else:
            assert sizes == [16, 16] and {p.edge for p in pieces} == {s.anchor}
            assert [p.half for p in pieces] == [Half.SECOND_HALF, Half.FIRST_HALF]


def test_edge_staple_arms_face_each_other(solid):
    # main staple's two arms cover the same stretch of the edge on both helices
    d = design_mesh(solid("cube"))
    starts = {i: r[0] for i, r in enumerate(d.scaffold.segment_map)}
    for s in d.staples.of_kind(StapleKind.EDGE):
        segs = [i for i, seg in enumerate(d.circuit.segments) if seg.edge == s.anchor]
        up = next(i for i in segs if d.circuit.segments[i].direction[0] < d.circuit.segments[i].direction[1])
        down = next(i for i in segs if i != up)
        (a0, a1), (b0, b1) = s.footprint
        along_up = {p - starts[up] for p in range(a0, a1)}
        along_down = {51 - (p - starts[down]) for p in range(b0, b1)}
        assert along_up == along_down == set(range(10, 31))


@pytest.mark.parametrize("name", ["tetrahedron", "octahedron", "icosahedron"])
def test_full_coverage_no_overlap(solid, name):
    d = design_mesh(solid(name))
    positions = Counter(p for s in d.staples.staples for a, b in s.footprint for p in range(a, b))
    assert set(positions.values()) == {1}
    assert len(positions) == len(d.scaffold.sequence)
    assert d.staples.uncovered == ()


def test_long_vertex_staples_flagged(solid):
    assert design_mesh(solid("tetrahedron")).staples.warnings == ()
    warnings = design_mesh(solid("icosahedron")).staples.warnings
    assert len(warnings) == 12 and all("100 nt" in w for w in warnings)


def test_totals(solid):
    tet = design_mesh(solid("tetrahedron"))
    t = design_totals(tet.scaffold, tet.staples, tet.mesh)
    assert (t.scaffold_nt, t.staple_nt, t.total_nt) == (624, 624, 1248)
    assert t.per_kind == {"vertex": 240, "edge": 192, "cutedge": 192}
    assert t.solid == "tetrahedron" and t.paper_total_nt == 1026
    octa = design_mesh(solid("octahedron")).totals
    assert octa.scaffold_nt == 1248 and octa.paper_total_nt == 2058
    cube = design_mesh(solid("cube")).totals
    assert cube.solid == "cube" and cube.paper_total_nt is None


@pytest.mark.parametrize("name", ["tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron"])
def test_recognize_platonic(solid, name):
    assert recognize_platonic(solid(name)) == name


def test_random_mesh_not_platonic():
    assert recognize_platonic(random_polyhedron(3, 17)) is None


def test_edge_length_rule():
    assert allowed_edge_length(52) and allowed_edge_length(42) and allowed_edge_length(32)
    assert not allowed_edge_length(53)  # odd: cut edges need two equal halves
    assert not allowed_edge_length(50)
    with pytest.raises(InvalidConfig):
        DesignParameters(tree_edge_len=50)


def test_alternate_edge_length(solid):
    params = DesignParameters(tree_edge_len=84)
    d = design_mesh(solid("tetrahedron"), params=params)
    assert len(d.scaffold.sequence) == 2 * 84 * 6
    assert d.staples.uncovered == ()
    assert d.staples.counts == {"vertex": 4, "edge": 6, "cutedge": 6}


@given(st.integers(0, 2**31), st.integers(4, 30))
@settings(max_examples=40, deadline=None)
def test_random_mesh_staple_properties(seed, n):
    mesh = random_polyhedron(seed, n)
    d = design_mesh(mesh, source="seeded_random", seed=seed)
    V, E = len(mesh.vertices), len(mesh.edges)
    assert len(d.scaffold.sequence) == 104 * E
    assert d.staples.counts == {"vertex": V, "edge": 2 * (V - 1), "cutedge": 2 * (E - V + 1)}
    assert all(complementary_base_by_base(s, d.scaffold.sequence) for s in d.staples.staples)
    positions = [p for s in d.staples.staples for a, b in s.footprint for p in range(a, b)]
    assert len(positions) == len(set(positions))


def test_generate_staples_deterministic(solid):
    a = design_mesh(solid("dodecahedron")).staples
    b = design_mesh(solid("dodecahedron")).staples
    assert a == b
