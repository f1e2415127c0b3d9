"""Pipeline orchestration, output files and the cost estimator."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path

from .errors import InvalidConfig, NegativeInput
from .mesh_io import PolyhedralMesh, Stage, export_stage, load_obj
from .router import EulerianCircuit, circuit_annotation, circuit_report, eulerian_circuit, expand_pseudo_vertices
from .sequences import ScaffoldSource, load_scaffold
from .stapler import (
    DesignParameters,
    DesignTotals,
    ScaffoldDesign,
    StapleKind,
    StapleSet,
    allowed_edge_length,
    assign_lengths,
    design_totals,
    generate_staples,
    thread_scaffold,
)
from .topology import EdgeGraph, SpanningTreeResult, build_graph, edge_label, prim_spanning_tree, tree_annotation


CSV_NAME = "Output_Sequences.csv"
CSV_COLUMNS = ["section", "anchor", "length_nt", "sequence_5to3", "footprint_ranges"]
STAGE_FILES = {Stage.MESH: "mesh.json", Stage.SPANNING_TREE: "tree.json", Stage.CIRCUIT: "circuit.json"}
_SECTION = {
    StapleKind.VERTEX: "vertex_staple",
    StapleKind.EDGE: "edge_staple",
    StapleKind.C_SHAPE: "edge_staple",
    StapleKind.CUT_EDGE: "cutedge_staple",
}


@dataclass(frozen=True)
class RunConfig:
    """One pipeline invocation. ``root`` is a 0-based vertex index."""

    input_path: Path
    scaffold_fasta: Path | None = None
    scaffold_seed: int | None = None
    root: int | None = None
    edge_length: int = 52
    out_dir: Path = Path("sequences")
    export_stages: bool = False
    estimate: bool = False
    price_per_nt: Decimal | None = None
    offset: int = 0

    def __post_init__(self):
        if self.scaffold_fasta is not None and self.scaffold_seed is not None:
            raise InvalidConfig("choose either a scaffold FASTA or a scaffold seed, not both")
        if not allowed_edge_length(self.edge_length):
            raise InvalidConfig(f"edge length {self.edge_length} bp is neither 52 nor an even rounded multiple of 10.5")
        if self.price_per_nt is not None and Decimal(self.price_per_nt) < 0:
            raise NegativeInput("price per nt must be nonnegative")
        if self.estimate and self.price_per_nt is None:
            raise InvalidConfig("the estimator needs an explicit price per nt")
        if self.offset < 0:
            raise InvalidConfig("scaffold offset must be nonnegative")


@dataclass
class Design:
    mesh: PolyhedralMesh
    graph: EdgeGraph
    tree: SpanningTreeResult
    circuit: EulerianCircuit
    scaffold: ScaffoldDesign
    staples: StapleSet
    totals: DesignTotals
    params: DesignParameters


def design_mesh(
    mesh: PolyhedralMesh,
    root: int | None = None,
    params: DesignParameters = DesignParameters(),
    source: ScaffoldSource | str = ScaffoldSource.BUNDLED_M13,
    fasta_text: str | None = None,
    seed: int | None = None,
    offset: int = 0,
) -> Design:
    """Run every stage on an already parsed mesh."""
    graph = build_graph(mesh)
    tree = prim_spanning_tree(graph, 0 if root is None else root)
    circuit = eulerian_circuit(expand_pseudo_vertices(graph, tree))
    lengths = assign_lengths(circuit, params)
    seq = load_scaffold(source, sum(lengths), fasta_text=fasta_text, seed=seed, offset=offset)
    scaffold = thread_scaffold(circuit, lengths, seq, source)
    staples = generate_staples(scaffold, circuit, tree, params)
    return Design(mesh, graph, tree, circuit, scaffold, staples, design_totals(scaffold, staples, mesh), params)


def estimate_cost(total_nt: int, price_per_nt) -> Decimal:
    """Synthesis cost ``total_nt * price_per_nt`` rounded half-up to cents."""
    price = Decimal(str(price_per_nt))
    if total_nt < 0 or price < 0:
        raise NegativeInput("nucleotide count and price must be nonnegative")
    return (Decimal(total_nt) * price).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP)


def _ranges(footprint) -> str:
    return ";".join(f"{a}-{b}" for a, b in footprint)


def sequences_csv(design: Design) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    edges = design.graph.edges
    segs = design.circuit.segments
    seg_map = design.scaffold.segment_map
    for run in design.circuit.runs():
        footprint = [seg_map[i] for i in run]
        seq = "".join(design.scaffold.bases(r) for r in footprint)
        anchor = "e" + edge_label(edges, segs[run[0]].edge)
        writer.writerow(["scaffold", anchor, len(seq), seq, _ranges(footprint)])
    for s in design.staples.staples:
        anchor = f"v{s.anchor + 1}" if s.kind is StapleKind.VERTEX else "e" + edge_label(edges, s.anchor)
        writer.writerow([_SECTION[s.kind], anchor, len(s), s.sequence, _ranges(s.footprint)])
    return buf.getvalue()


def stage_documents(design: Design) -> dict[Stage, str]:
    return {
        Stage.MESH: export_stage(design.mesh, (), Stage.MESH),
        Stage.SPANNING_TREE: export_stage(design.mesh, tree_annotation(design.graph, design.tree), Stage.SPANNING_TREE),
        Stage.CIRCUIT: export_stage(design.mesh, circuit_annotation(design.graph, design.circuit), Stage.CIRCUIT),
    }


@dataclass
class RunResult:
    design: Design
    files: list[Path]
    summary: str
    cost: Decimal | None = None
    warnings: list[str] = field(default_factory=list)


def summarize(design: Design, cost: Decimal | None, warnings: list[str]) -> str:
    mesh, graph, tree = design.mesh, design.graph, design.tree
    report = circuit_report(design.circuit)
    counts = design.staples.counts
    totals = design.totals
    lines = [
        f"mesh: V={len(mesh.vertices)} E={len(mesh.edges)} F={len(mesh.faces)}",
        f"spanning tree: root v{tree.root + 1}, {len(tree.tree_edges)} tree edges, {len(tree.cut_edges)} cut edges",
        "  tree edges: " + ", ".join(edge_label(graph.edges, e) for e in sorted(tree.tree_edges)),
        f"circuit: {len(design.circuit.segments)} segments, starts on e{edge_label(graph.edges, report.first_edge)}",
        f"staples: vertex={counts['vertex']} edge={counts['edge']} cutedge={counts['cutedge']}",
        f"nucleotides: scaffold={totals.scaffold_nt} staples={totals.staple_nt} total={totals.total_nt}",
    ]
    if totals.note:
        lines.append(f"note: {totals.note}")
    if cost is not None:
        lines.append(f"estimated cost: {cost}")
    lines.extend(f"warning: {w}" for w in warnings)
    return "\n".join(lines) + "\n"


class DesignContext:
    """Holds the artifacts of the most recent run until :meth:`reset`."""

    def __init__(self):
        self.last: RunResult | None = None

    def reset(self) -> DesignContext:
        self.last = None
        return self

    def run(self, config: RunConfig) -> RunResult:
        self.reset()
        mesh = load_obj(config.input_path)
        params = DesignParameters(tree_edge_len=config.edge_length)
        if config.scaffold_fasta is not None:
            try:
                fasta = Path(config.scaffold_fasta).read_text(encoding="utf-8")
            except OSError as exc:
                raise InvalidConfig(f"cannot read {config.scaffold_fasta}: {exc}") from exc
            source, seed = ScaffoldSource.USER_FASTA, None
        elif config.scaffold_seed is not None:
            fasta, source, seed = None, ScaffoldSource.SEEDED_RANDOM, config.scaffold_seed
        else:
            fasta, source, seed = None, ScaffoldSource.BUNDLED_M13, None
        if config.root is not None and not 0 <= config.root < len(mesh.vertices):
            raise InvalidConfig(f"root vertex {config.root + 1} is not in the mesh")
        design = design_mesh(mesh, config.root, params, source, fasta, seed, config.offset)

        warnings = list(design.staples.warnings)
        chi = mesh.euler_characteristic
        if chi != 2:
            warnings.insert(0, f"Euler characteristic is {chi}, not 2")
        cost = estimate_cost(design.totals.total_nt, config.price_per_nt) if config.estimate else None

        out = Path(config.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        files = [out / CSV_NAME]
        _write(files[0], sequences_csv(design))
        if config.export_stages:
            for stage, text in stage_documents(design).items():
                path = out / STAGE_FILES[stage]
                _write(path, text)
                files.append(path)
        self.last = RunResult(design, files, summarize(design, cost, warnings), cost, warnings)
        return self.last


def _write(path: Path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def reset_state() -> DesignContext:
    """Fresh, empty pipeline context."""
    return DesignContext()


def run_pipeline(config: RunConfig, context: DesignContext | None = None) -> RunResult:
    return (context or DesignContext()).run(config)
