"""Command line entry point.

Subcommands: list-models, classify, table, render-diagram, validate, aut.
Exit status is 0 on success, 1 when a supplied diagram fails validation and
2 for usage errors (bad flags, unknown models, parameters out of range).
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import catalog
from .actions import compute_aut
from .catalog import CatalogError
from .classify import main_table, report, table_tsv
from .cohomology import ClassificationError
from .equipment import Diagram, DiagramFormatError, diagram_loads, validate_diagram
from .render import render_ascii, render_svg

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def _model_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--model", required=True, help="figure code (a1..i4) or geometric name (X_k, W, Y, Y0, Z, P3, Q3, P2xP1)")
    for name in ("k", "n", "m", "a", "b", "r"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--alpha", help="spoke parameter, a rational or z[N]:c0,c1,...")
    p.add_argument("--ns", help="comma separated n_i for b1/b2")
    p.add_argument("--alphas", help="comma separated alpha_i for b1/b2; ';' separated if they contain commas")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sl2forms", description="Equivariant real forms of SL2/H completions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("list-models", help="list catalog models")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("classify", help="classify the real structures of one model")
    _model_flags(p)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("table", help="count real forms over the parameter grid")
    p.add_argument("--kmax", type=int, default=8)
    p.add_argument("--nmax", type=int, default=4)
    p.add_argument("--abmax", type=int, default=5)
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")

    p = sub.add_parser("render-diagram", help="draw a skeleton diagram")
    _model_flags(p)
    p.add_argument("--out", "--format", dest="format", choices=("svg", "text"), default="text")

    p = sub.add_parser("validate", help="check a diagram given as JSON")
    p.add_argument("--in", dest="path", required=True, help="diagram JSON file, or - for stdin")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("aut", help="the automorphism group of one model")
    _model_flags(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def _split_list(text: str | None) -> list[str] | None:
    if text is None:
        return None
    sep = ";" if ";" in text or ":" in text else ","
    return [s.strip() for s in text.split(sep) if s.strip()]


def model_from_args(args: argparse.Namespace) -> Diagram:
    params = {name: getattr(args, name) for name in ("k", "n", "m", "a", "b", "r", "alpha")}
    ns = _split_list(args.ns)
    if ns is not None:
        try:
            params["ns"] = [int(x) for x in ns]
        except ValueError as exc:
            raise CatalogError("--ns must be a list of integers") from exc
    params["alphas"] = _split_list(args.alphas)
    return catalog.build_model(args.model, **params)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _cmd_list(args, out) -> int:
    models = catalog.list_models()
    if args.format == "json":
        out.write(_dump({"models": models, "geometric": list(catalog.GEOMETRIC_FAMILIES)}))
        return EXIT_OK
    for m in models:
        params = ",".join(m["params"]) or "-"
        proj = "projective" if m["projective"] else "nonprojective"
        out.write(f"{m['label']:<5} k={m['k']:<2} {m['name']:<14} params={params:<10} {proj:<13} {m['row'] or '-'}\n")
    out.write("geometric names: " + " ".join(catalog.GEOMETRIC_FAMILIES) + "\n")
    return EXIT_OK


def _cmd_classify(args, out) -> int:
    rep = report(model_from_args(args))
    out.write(rep.dumps() + "\n" if args.format == "json" else rep.text())
    return EXIT_OK


def _cmd_table(args, out) -> int:
    models = catalog.grid_instances(args.kmax, args.nmax, args.abmax)
    rows = main_table(models)
    if args.format == "json":
        out.write(_dump([
            {"row": r.key, "consistent": r.consistent,
             "variants": [{"counts": list(c), "instances": sorted(v)}
                          for c, v in sorted(r.variants.items(), key=lambda kv: str(kv[0]))]}
            for r in rows
        ]))
    else:
        out.write(table_tsv(rows))
    return EXIT_OK


def _cmd_render(args, out) -> int:
    d = model_from_args(args)
    out.write(render_svg(d) if args.format == "svg" else render_ascii(d))
    return EXIT_OK


def _cmd_validate(args, out) -> int:
    text = sys.stdin.read() if args.path == "-" else Path(args.path).read_text(encoding="utf-8")
    try:
        d = diagram_loads(text)
    except DiagramFormatError as exc:
        problems = [str(exc)]
    else:
        problems = validate_diagram(d)
    if args.format == "json":
        out.write(_dump({"valid": not problems, "violations": problems}))
    elif problems:
        out.write("".join(f"violation: {p}\n" for p in problems))
    else:
        out.write("ok\n")
    return EXIT_INVALID if problems else EXIT_OK


def _cmd_aut(args, out) -> int:
    aut = compute_aut(model_from_args(args))
    if args.format == "json":
        out.write(_dump(aut.to_json()))
        return EXIT_OK
    out.write(f"{aut.kind.value} (k={aut.k})\n")
    if aut.fixed_pole:
        out.write(f"fixed pole: {aut.fixed_pole}\n")
    if aut.kind.finite:
        out.write(f"{len(aut.reps)} representatives\n")
        for r in aut.reps:
            out.write(f"  {r}\n")
    return EXIT_OK


COMMANDS = {
    "list-models": _cmd_list,
    "classify": _cmd_classify,
    "table": _cmd_table,
    "render-diagram": _cmd_render,
    "validate": _cmd_validate,
    "aut": _cmd_aut,
}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:
        # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    except ClassificationError as exc:
        err.write(f"classification failed: {exc}\n")
        return EXIT_INVALID
    except (CatalogError, ValueError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
