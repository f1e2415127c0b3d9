"""Command-line entry point: ``polyorigami design <input.obj> [options]``."""

from __future__ import annotations

import argparse
import json
import sys
from decimal import Decimal, InvalidOperation
from pathlib import Path

from .app import RunConfig, run_pipeline
from .errors import OrigamiError, exit_code_for


def _price(text: str) -> Decimal:
    try:
        return Decimal(text)
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polyorigami", description="Wireframe DNA origami design from .obj meshes.")
    sub = parser.add_subparsers(dest="command", required=True)
    d = sub.add_parser("design", help="route a scaffold and generate staples for a closed mesh")
    d.add_argument("input", type=Path, help="Wavefront .obj file")
    src = d.add_mutually_exclusive_group()
    src.add_argument("--scaffold-fasta", type=Path, metavar="PATH", help="single-record FASTA scaffold")
    src.add_argument("--scaffold-seed", type=int, metavar="N", help="use a seeded random scaffold")
    d.add_argument("--root", type=int, metavar="V", help="1-based root vertex of the spanning tree (default 1)")
    d.add_argument("--edge-length", type=int, default=52, metavar="BP", help="tree-edge length in bp (default 52)")
    d.add_argument("--offset", type=int, default=0, metavar="NT", help="scaffold start offset (default 0)")
    d.add_argument("--out", type=Path, default=Path("sequences"), metavar="DIR", help="output directory")
    d.add_argument("--export-stages", action="store_true", help="also write mesh.json, tree.json, circuit.json")
    d.add_argument("--estimate", action="store_true", help="print a synthesis cost estimate")
    d.add_argument("--price-per-nt", type=_price, metavar="P", help="price per nucleotide for --estimate")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(
            input_path=args.input,
            scaffold_fasta=args.scaffold_fasta,
            scaffold_seed=args.scaffold_seed,
            root=None if args.root is None else args.root - 1,
            edge_length=args.edge_length,
            out_dir=args.out,
            export_stages=args.export_stages,
            estimate=args.estimate,
            price_per_nt=args.price_per_nt,
            offset=args.offset,
        )
        result = run_pipeline(config)
    except OrigamiError as exc:
        print(json.dumps(exc.record()), file=sys.stderr)
        return exit_code_for(exc)
    sys.stdout.write(result.summary)
    for path in result.files:
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
