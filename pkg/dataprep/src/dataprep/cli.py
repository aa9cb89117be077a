"""Command-line entry point for the dataset preparation tools."""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .container import read_container
from .convert import ConversionRecipe, convert
from .oracle import OracleError, oracle_forward
from .sources import SourceError

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_IO = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gvt-dataprep",
        description="Convert public graph benchmarks into the binary container "
        "format and run dense reference forward passes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    conv = sub.add_parser("convert", help="convert a raw benchmark into a container")
    conv.add_argument("--dataset", required=True, help="cora | citeseer | pubmed | texas | cornell | wisconsin")
    conv.add_argument("--src", required=True, help="directory holding the raw source files")
    conv.add_argument("--out", required=True, help="output container directory")
    conv.add_argument("--policy", default="public", choices=("public", "sample20"))
    conv.add_argument("--seed", type=int, default=0)

    orc = sub.add_parser("oracle", help="dense reference forward pass over a container")
    orc.add_argument("--container", required=True, help="container directory")
    orc.add_argument("--checkpoint", required=True, help="encoder checkpoint (.gvtc)")
    orc.add_argument("--depth", type=int, default=1)
    orc.add_argument("--out", required=True, help="output CSV of representations")

    info = sub.add_parser("info", help="print a container's metadata")
    info.add_argument("--container", required=True)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK

    try:
        if args.command == "convert":
            recipe = ConversionRecipe(args.dataset, args.policy, args.seed)
            out = convert(recipe, args.src, args.out)
            meta = read_container(out)["meta"]
            print(json.dumps(meta, indent=2))
            return EXIT_OK
        if args.command == "oracle":
            z = oracle_forward(args.container, args.checkpoint, depth=args.depth)
            np.savetxt(args.out, z, delimiter=",", fmt="%.10g")
            print(f"wrote {z.shape[0]} rows to {args.out}")
            return EXIT_OK
        if args.command == "info":
            print(json.dumps(read_container(args.container)["meta"], indent=2))
            return EXIT_OK
    except (SourceError, OracleError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
