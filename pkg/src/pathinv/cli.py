"""Command line entry point.

    pathinv validate INSTANCE.json
    pathinv classify INSTANCE.json
    pathinv compute INSTANCE.json [--max-degree N] [--json OUT] [--dot OUT]

Exit codes: 0 ok, 2 parse error, 3 invalid action, 4 internal psi-identity failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .action import validate
from .instance import ParseError, load_instance, parse_field
from .invariants import PsiIdentityError
from .quiver import classify_quiver
from .report import build_report, dumps_report, run, text_summary, to_dot

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_PSI = 0, 2, 3, 4


def _field_arg(text: str):
    try:
        return parse_field(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pathinv", description="Invariants of path algebras under homogeneous group actions.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("path", type=Path, help="JSON instance file")
    common.add_argument("--field", type=_field_arg, default=None,
                        help="override the coefficient field: 'rational' or a prime p")
    common.add_argument("--quiet", action="store_true", help="suppress the text summary")

    sub.add_parser("validate", parents=[common], help="parse the instance and validate the action")
    sub.add_parser("classify", parents=[common], help="representation type of the original quiver")
    p = sub.add_parser("compute", parents=[common], help="compute the invariant quiver and all checks")
    p.add_argument("--max-degree", type=int, default=None, help="truncation degree (overrides the instance)")
    p.add_argument("--json", type=Path, default=None, dest="json_out", help="write the JSON report here")
    p.add_argument("--dot", type=Path, default=None, help="write the invariant quiver as DOT here")
    p.add_argument("--closure-cap", type=int, default=None, help="maximum group order explored")
    p.add_argument("--window", type=int, default=None, help="stabilization window (degrees)")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings in the JSON report")
    return parser


def _load(args):
    try:
        return load_instance(args.path, args.field)
    except ParseError as exc:
        print(f"{args.path}: {exc}", file=sys.stderr)
        return None
    except OSError as exc:
        print(f"{args.path}: {exc.strerror or exc}", file=sys.stderr)
        return None


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    inst = _load(args)
    if inst is None:
        return EXIT_PARSE
    errors = validate(inst.action)
    if errors:
        for e in errors:
            print(str(e), file=sys.stderr)
        return EXIT_INVALID

    if args.command == "validate":
        if not args.quiet:
            q = inst.quiver
            print(f"ok: {len(q.vertices)} vertices, {sum(q.arrow_dim.values())} arrows, "
                  f"{len(inst.action.generators)} generators over {inst.action.field}")
        return EXIT_OK

    if args.command == "classify":
        print(classify_quiver(inst.quiver).summary())
        return EXIT_OK

    if args.closure_cap is not None or args.window is not None:
        from dataclasses import replace
        opts = inst.options
        if args.closure_cap is not None:
            opts = replace(opts, closure_cap=args.closure_cap)
        if args.window is not None:
            opts = replace(opts, stabilization_window=args.window)
        inst = replace(inst, options=opts)
    try:
        comp = run(inst, args.max_degree)
    except PsiIdentityError as exc:
        print(f"internal fault: {exc}", file=sys.stderr)
        return EXIT_PSI
    if args.json_out is not None:
        args.json_out.write_text(dumps_report(build_report(comp, args.timings)), encoding="utf-8")
    if args.dot is not None:
        args.dot.write_text(to_dot(comp.result.quiver), encoding="utf-8")
    if not args.quiet:
        print(text_summary(comp))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
