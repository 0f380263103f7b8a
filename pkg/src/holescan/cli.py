"""Command-line front end.

Subcommands wire the pipeline together: ``check`` tests edge-manifoldness,
``detect`` runs trace -> decompose -> classify and writes the JSON report
(optionally exporting OBJ polylines), ``gen`` emits synthetic fixture
meshes, and ``stats`` summarizes an existing report.

Exit codes: 0 ok, 1 I/O or parse error, 2 input not edge-manifold,
3 internal invariant violation. Progress goes to stderr (level set by the
``HOLESCAN_LOG`` environment variable: error, info, or debug); stdout stays
machine-parseable.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import __version__
from .classify import detect_holes
from .errors import HolescanError, InternalInvariantError, NotEdgeManifoldError
from .mesh import is_edge_manifold, non_manifold_edges, singular_vertices
from .meshgen import generate, parse_spec, write_ply
from .meshio import export_boundaries_obj, read_ply, sha256_of_file, write_report

log = logging.getLogger("holescan")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_EDGE_MANIFOLD = 2
EXIT_INTERNAL = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, which would collide with the
    # not-edge-manifold code; remap to the generic error code.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="holescan",
        description="Detect and classify boundary loops (holes) of a triangle mesh.",
    )
    parser.add_argument("--version", action="version", version=f"holescan {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_check = sub.add_parser("check", help="report edge-manifoldness and singular vertices")
    p_check.add_argument("input", help="input PLY mesh")

    p_detect = sub.add_parser("detect", help="trace, decompose, and classify all boundaries")
    p_detect.add_argument("input", help="input PLY mesh")
    p_detect.add_argument("--out", required=True, help="output JSON report path")
    p_detect.add_argument(
        "--no-classify",
        action="store_true",
        help="skip continent/hole classification (boundaries only)",
    )
    p_detect.add_argument(
        "--export-obj", metavar="PATH", help="also write boundaries as OBJ polylines"
    )

    p_gen = sub.add_parser("gen", help="generate a synthetic fixture mesh")
    p_gen.add_argument("spec", help='e.g. "random_delete(grid(10,10),0.5,7)"')
    p_gen.add_argument("--out", required=True, help="output PLY path")
    p_gen.add_argument("--binary", action="store_true", help="binary_little_endian output")

    p_stats = sub.add_parser("stats", help="summarize a JSON report")
    p_stats.add_argument("report", help="report JSON produced by detect")

    return parser


def _configure_logging() -> None:
    levels = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}
    wanted = os.environ.get("HOLESCAN_LOG", "info").lower()
    if wanted not in levels:
        print(f"holescan: ignoring unknown HOLESCAN_LOG={wanted!r}", file=sys.stderr)
        wanted = "info"
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(message)s"))
    log.handlers[:] = [handler]
    log.setLevel(levels[wanted])


def _cmd_check(args) -> int:
    mesh = read_ply(args.input)
    log.info("loaded %s: %d vertices, %d triangles",
             args.input, mesh.vertex_count, mesh.triangle_count)
    if not is_edge_manifold(mesh):
        bad = non_manifold_edges(mesh)
        print("edge_manifold: false")
        print(f"non_manifold_edges: {len(bad)}")
        return EXIT_NOT_EDGE_MANIFOLD
    print("edge_manifold: true")
    print(f"singular_vertices: {len(singular_vertices(mesh))}")
    return EXIT_OK


def _cmd_detect(args) -> int:
    mesh = read_ply(args.input)
    log.info("loaded %s: %d vertices, %d triangles",
             args.input, mesh.vertex_count, mesh.triangle_count)
    report = detect_holes(mesh, classify_holes=not args.no_classify)
    log.info("traced %d simple boundaries over %d half-edges (%d continents)",
             len(report.boundaries), report.half_edge_count, len(report.continents))
    write_report(
        report,
        args.out,
        input_path=str(args.input),
        input_sha256=sha256_of_file(args.input),
    )
    log.info("wrote %s", args.out)
    if args.export_obj:
        export_boundaries_obj(report, mesh, args.export_obj)
        log.info("wrote %s", args.export_obj)
    return EXIT_OK


def _cmd_gen(args) -> int:
    spec = parse_spec(args.spec)
    mesh = generate(spec)
    write_ply(mesh, args.out, binary=args.binary)
    log.info("wrote %s: %d vertices, %d triangles",
             args.out, mesh.vertex_count, mesh.triangle_count)
    return EXIT_OK


def _cmd_stats(args) -> int:
    try:
        with open(args.report, encoding="utf-8") as fh:
            doc = json.load(fh)
        boundaries = doc["boundaries"]
        flags = [bool(b["has_singular_vertex"]) for b in boundaries]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        print(f"holescan: {args.report}: not a valid report: {exc}", file=sys.stderr)
        return EXIT_ERROR
    total = len(flags)
    with_singular = sum(flags)
    pct = 100.0 * with_singular / total if total else 0.0
    print(f"boundaries: {total}")
    print(f"with_singular_vertices: {with_singular}")
    print(f"singular_pct: {pct:.1f}")
    return EXIT_OK


_COMMANDS = {
    "check": _cmd_check,
    "detect": _cmd_detect,
    "gen": _cmd_gen,
    "stats": _cmd_stats,
}


def run(argv=None) -> int:
    """Parse arguments and run one subcommand; returns the exit code."""
    _configure_logging()
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except NotEdgeManifoldError as exc:
        print(f"holescan: {exc}", file=sys.stderr)
        return EXIT_NOT_EDGE_MANIFOLD
    except InternalInvariantError as exc:
        print(f"holescan: internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except HolescanError as exc:
        print(f"holescan: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"holescan: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
