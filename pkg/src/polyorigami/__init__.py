"""Closed polyhedral mesh to wireframe DNA origami: scaffold route plus staples."""

from .app import DesignContext, RunConfig, design_mesh, estimate_cost, reset_state, run_pipeline
from .errors import OrigamiError
from .mesh_io import PolyhedralMesh, export_stage, load_obj, parse_obj
from .router import circuit_report, eulerian_circuit, expand_pseudo_vertices
from .sequences import load_scaffold, reverse_complement
from .stapler import DesignParameters, assign_lengths, design_totals, generate_staples, thread_scaffold
from .topology import build_graph, prim_spanning_tree, tree_stats

__all__ = [
    "DesignContext",
    "DesignParameters",
    "OrigamiError",
    "PolyhedralMesh",
    "RunConfig",
    "assign_lengths",
    "build_graph",
    "circuit_report",
    "design_mesh",
    "design_totals",
    "estimate_cost",
    "eulerian_circuit",
    "expand_pseudo_vertices",
    "export_stage",
    "generate_staples",
    "load_obj",
    "load_scaffold",
    "parse_obj",
    "prim_spanning_tree",
    "reset_state",
    "reverse_complement",
    "run_pipeline",
    "thread_scaffold",
    "tree_stats",
]
