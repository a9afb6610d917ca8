"""Command line interface: ``fusionkit <command> ...``.

Exit codes: 0 success, 1 validation or axiom failure, 2 usage error,
3 a theorem-level check or internal invariant failed.
"""
from __future__ import annotations

import argparse
import os
import sys

from . import catalog
from .errors import (ConvergenceError, InvariantViolation, NotModularError, SchemaError,
                     StructuralError)
from .io import emit_modular, emit_report, emit_ring, parse_any
from .modular import ModularData, modular_suite, verlinde_fusion
from .report import analyze, report_ok, series_report
from .ring import DEFAULT_MAX_ITER, DEFAULT_TOL, validate_ring

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_THEOREM = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _default_tol() -> float:
    raw = os.environ.get("FUSIONKIT_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise UsageError(f"FUSIONKIT_TOL={raw!r} is not a number") from None
    if not tol > 0:
        raise UsageError("FUSIONKIT_TOL must be positive")
    return tol


def _positive_float(text):
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=_positive_float, default=None,
                        help="numerical tolerance (default 1e-9, or $FUSIONKIT_TOL)")
    common.add_argument("--max-iter", type=_positive_int, default=DEFAULT_MAX_ITER)
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--output", "-o", help="write to this file instead of stdout")

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("input", nargs="?", help="ring or modular JSON file; '-' or omitted reads stdin")
    source.add_argument("--catalog", metavar="NAME", help="use a built-in catalog entry")

    parser = argparse.ArgumentParser(prog="fusionkit", description="Fusion ring analysis.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common, source], help="check the based-ring axioms")
    p = sub.add_parser("analyze", parents=[common, source], help="full analysis report")
    p.add_argument("--all-catalog", action="store_true", help="analyze every catalog entry")
    sub.add_parser("series", parents=[common, source], help="central series only")
    sub.add_parser("modular", parents=[common, source], help="modular data checks")
    cat = sub.add_parser("catalog", help="list or emit built-in entries")
    cat_sub = cat.add_subparsers(dest="action", required=True)
    cat_sub.add_parser("list", parents=[common])
    emit = cat_sub.add_parser("emit", parents=[common])
    emit.add_argument("name")
    emit.add_argument("--kind", choices=["ring", "modular"], default="ring")
    return parser


def _load(args):
    """Return (ring, modular data or None)."""
    if args.catalog and args.input:
        raise UsageError("give either a file or --catalog, not both")
    if args.catalog:
        try:
            entry = catalog.get(args.catalog)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
        return entry.ring, entry.modular
    src = args.input
    if src in (None, "-"):
        obj = parse_any(sys.stdin)
    else:
        try:
            obj = parse_any(src)
        except OSError as exc:
            raise UsageError(f"cannot read {src}: {exc.strerror}") from None
    if isinstance(obj, ModularData):
        return verlinde_fusion(obj), obj
    return obj, None


def _write(args, payload: bytes) -> None:
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()


def _run(args) -> int:
    tol = args.tol if args.tol is not None else _default_tol()
    fmt = args.format

    if args.command == "catalog":
        if args.action == "list":
            rows = {n: {"modular": n in catalog.modular_names()} for n in catalog.names()}
            if fmt == "text":
                _write(args, "".join(f"{n}{' (modular)' if r['modular'] else ''}\n"
                                     for n, r in rows.items()).encode())
            else:
                _write(args, emit_report({"entries": rows}))
            return EXIT_OK
        try:
            entry = catalog.get(args.name)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
        if args.kind == "modular":
            if entry.modular is None:
                raise UsageError(f"{args.name} has no modular data")
            _write(args, emit_modular(entry.modular))
        else:
            _write(args, emit_ring(entry.ring))
        return EXIT_OK

    if args.command == "analyze" and args.all_catalog:
        if args.input or args.catalog:
            raise UsageError("--all-catalog takes no input")
        reports = {e.name: analyze(e.ring, e.modular, tolerance=tol, max_iterations=args.max_iter)
                   for e in catalog.all_entries()}
        _write(args, emit_report(reports, fmt))
        return EXIT_OK if all(report_ok(r) for r in reports.values()) else EXIT_THEOREM

    ring, md = _load(args)

    if args.command == "validate":
        rep = validate_ring(ring).to_dict()
        if md is not None:
            rep = {"ring": rep, "modular": modular_suite(md)["validation"]}
            ok = rep["ring"]["ok"] and rep["modular"]["ok"]
        else:
            ok = rep["ok"]
        _write(args, emit_report(rep, fmt))
        return EXIT_OK if ok else EXIT_INVALID

    vrep = validate_ring(ring)
    if args.command == "analyze":
        report = analyze(ring, md, tolerance=tol, max_iterations=args.max_iter)
        _write(args, emit_report(report, fmt))
        if not vrep.ok:
            return EXIT_INVALID
        return EXIT_OK if report_ok(report) else EXIT_THEOREM

    if not vrep.ok:
        _write(args, emit_report({"validation": vrep.to_dict()}, fmt))
        return EXIT_INVALID

    if args.command == "series":
        report = series_report(ring)
        _write(args, emit_report(report, fmt))
        ok = report["duality"] is None or report["duality"]["ok"]
        return EXIT_OK if ok else EXIT_THEOREM

    # modular
    if md is None:
        raise UsageError("the modular command needs modular data (S and T)")
    suite = modular_suite(md)
    _write(args, emit_report(suite, fmt))
    if not suite["validation"]["ok"]:
        return EXIT_INVALID
    return EXIT_OK if suite["ok"] else EXIT_THEOREM


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return _run(args)
    except UsageError as exc:
        print(f"fusionkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SchemaError, StructuralError, NotModularError) as exc:
        print(f"fusionkit: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (InvariantViolation, ConvergenceError) as exc:
        print(f"fusionkit: check failed: {exc}", file=sys.stderr)
        return EXIT_THEOREM


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
