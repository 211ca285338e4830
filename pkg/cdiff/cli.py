# -*- coding: utf-8 -*-

"""Command line: python -m cdiff <eval|decompose|check|catalog> ...

Output:
- stdout carries only results (CSV or JSON), byte-identical across identical runs;
- diagnostics, the check summary and errors ("ERROR: ...") go to stderr.

Exit codes:
- 0  ok (check: every verdict PASS)
- 1  check: at least one FAIL
- 2  bad input: FnSpec, grid, flags, inadmissible order, domain/precondition errors
- 3  quadrature did not converge (eval output is suppressed)
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from typing import Any, Sequence, TextIO

from cdiff.catalog import CatalogEntry, catalog
from cdiff.checks.common import Grid, derivative_grid, nudge_above_base, span_grid
from cdiff.errors import CdiffError, NonConvergenceError, PreconditionError, SpecError
from cdiff.fnspec import parse_fn
from cdiff.pairspace import decompose
from cdiff.quadrature import DEFAULT_QUAD, QuadSpec
from cdiff.rlnum import rl_derivative
from cdiff.settings import Conventions
from cdiff.verify import CHECK_NAMES, Selection, run_suite, summarize

logger = logging.getLogger(__name__)

PREVIEW_POINTS = 11

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_NONCONVERGENCE = 3


def fmt(v: float) -> str:
    """15 significant digits, locale independent, no negative zero."""
    return f"{float(v) + 0.0:.15g}"


def parse_grid(text: str) -> Grid:
    """'lo:hi:n' (n points, endpoints included) or a comma list of points."""
    text = text.strip()
    try:
        if ":" in text:
            parts = text.split(":")
            if len(parts) != 3:
                raise ValueError("expected lo:hi:n")
            lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
            return Grid(lo=lo, hi=hi, n=n)
        return Grid.of_points([float(tok) for tok in text.split(",") if tok.strip()])
    except (ValueError, CdiffError) as e:
        raise SpecError(f"{text!r}: {e}", where="--grid") from e


def _quad(args: argparse.Namespace) -> QuadSpec:
    if getattr(args, "nodes", None) is None:
        return DEFAULT_QUAD
    return DEFAULT_QUAD.with_nodes(args.nodes)


def _conventions(args: argparse.Namespace) -> Conventions:
    return Conventions.from_flags(getattr(args, "taylor_order", None), getattr(args, "shift", None))


def _grid(args: argparse.Namespace) -> Grid | None:
    return parse_grid(args.grid) if getattr(args, "grid", None) else None


def _write_json(out: TextIO, payload: Any) -> None:
    out.write(json.dumps(payload, ensure_ascii=False))
    out.write("\n")


def cmd_eval(args: argparse.Namespace, out: TextIO) -> int:
    entry = parse_fn(args.fn, args.a)
    f = entry.handle
    spec = _quad(args)
    grid = _grid(args) or (span_grid(f) if args.p == 0 else derivative_grid(f))
    xs = grid.points() if args.p <= 0 else nudge_above_base(f, grid.points())
    rows = [(float(x), rl_derivative(f, args.p, float(x), spec)) for x in xs]

    # Everything is computed before anything is written: no partial output on failure.
    if args.format == "json":
        _write_json(
            out,
            {"fn": entry.id, "p": args.p, "a": f.base_point, "points": [[x, v] for x, v in rows]},
        )
        return EXIT_OK
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "value"])
    writer.writerows([fmt(x), fmt(v)] for x, v in rows)
    out.write(buf.getvalue())
    return EXIT_OK


def cmd_decompose(args: argparse.Namespace, out: TextIO) -> int:
    entry = parse_fn(args.fn, args.a)
    f = entry.handle
    conventions = _conventions(args)
    pair = decompose(f, None, _quad(args), conventions)
    preview = (_grid(args) or span_grid(f, PREVIEW_POINTS)).points()
    payload = {"fn": entry.id, "convention": conventions.to_payload(f.smoothness_k)}
    payload.update(pair.to_payload(preview))
    _write_json(out, payload)
    return EXIT_OK


def cmd_check(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    entries: list[CatalogEntry] = [parse_fn(args.fn, args.a)] if args.fn else catalog()
    sel = Selection(
        which=args.which,
        p=args.p,
        q=args.q,
        g=parse_fn(args.g, args.a) if args.g else None,
        c=args.c,
        grid=_grid(args),
        tol=args.tol,
    )
    reports = run_suite(entries, sel, _conventions(args), _quad(args), max_workers=args.workers)
    if not reports:
        raise PreconditionError(f"no admissible orders for check {args.which!r}; pass --p/--q explicitly")
    buf = io.StringIO()
    for report in reports:
        _write_json(buf, report.to_payload())
    out.write(buf.getvalue())
    print(summarize(reports), file=err)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_catalog(args: argparse.Namespace, out: TextIO) -> int:
    rows = [
        {
            "id": e.id,
            "class_k": e.handle.smoothness_k,
            "a": e.handle.base_point,
            "lo": e.handle.domain[0],
            "hi": e.handle.domain[1],
            "closed_form": e.closed_form_differint is not None,
            "notes": e.notes,
        }
        for e in catalog()
    ]
    if args.format == "json":
        _write_json(out, rows)
        return EXIT_OK
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({**row, "a": fmt(row["a"]), "lo": fmt(row["lo"]), "hi": fmt(row["hi"])})
    out.write(buf.getvalue())
    return EXIT_OK


def _add_fn_flags(p: argparse.ArgumentParser, *, required: bool = True) -> None:
    p.add_argument("--fn", required=required, help="catalog id, JSON FnSpec, or @file")
    p.add_argument("--a", type=float, default=None, help="base point for constructed FnSpecs")


def _add_numeric_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--grid", default=None, help="lo:hi:n or x1,x2,...")
    p.add_argument("--nodes", type=int, default=None, help="initial Gauss-Jacobi node count")


def _add_convention_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--taylor-order", dest="taylor_order", default=None, help="kminus1 (default) or k")
    p.add_argument("--shift", default=None, help="identity (default) or literal")


class _Parser(argparse.ArgumentParser):
    """Usage errors raise SpecError so main() reports them on its own err stream."""

    def error(self, message: str):
        raise SpecError(message, where=self.prog)


# Flags whose values may start with "-" (negative grid ends, negative orders).
_VALUE_FLAGS = ("--grid", "--p", "--q", "--a", "--c")


def _join_values(argv: Sequence[str]) -> list[str]:
    """'--grid -1:2:4' -> '--grid=-1:2:4' so argparse does not read the value as a flag."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            value = next(it, None)
            out.append(tok if value is None else f"{tok}={value}")
        else:
            out.append(tok)
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cdiff", description="Commutative fractional derivative on pairs.")
    parser.add_argument("--verbose", action="store_true", help="debug diagnostics on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="_aD_x^p f on a grid")
    _add_fn_flags(p_eval)
    p_eval.add_argument("--p", type=float, required=True)
    _add_numeric_flags(p_eval)
    p_eval.add_argument("--format", choices=("csv", "json"), default="csv")

    p_dec = sub.add_parser("decompose", help="R⁻¹f as JSON")
    _add_fn_flags(p_dec)
    _add_numeric_flags(p_dec)
    _add_convention_flags(p_dec)

    p_check = sub.add_parser("check", help="verify a diagram; one JSON report per line")
    p_check.add_argument("which", choices=("all",) + CHECK_NAMES)
    _add_fn_flags(p_check, required=False)
    p_check.add_argument("--g", default=None, help="second function (homomorphism)")
    p_check.add_argument("--c", type=float, default=1.0, help="scalar for the homomorphism check")
    p_check.add_argument("--p", type=float, default=None)
    p_check.add_argument("--q", type=float, default=None)
    p_check.add_argument("--tol", type=float, default=None)
    p_check.add_argument("--workers", type=int, default=None, help="thread pool size")
    _add_numeric_flags(p_check)
    _add_convention_flags(p_check)

    p_cat = sub.add_parser("catalog", help="list catalog entries")
    p_cat.add_argument("--format", choices=("csv", "json"), default="csv")
    return parser


def _configure_logging(verbose: bool, err: TextIO) -> None:
    handler = logging.StreamHandler(err)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s %(message)s"))
    root = logging.getLogger("cdiff")
    root.handlers[:] = [handler]
    root.setLevel(logging.DEBUG if verbose else logging.WARNING)
    root.propagate = False


def main(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(_join_values(sys.argv[1:] if argv is None else argv))
    except SpecError as e:
        print(f"ERROR: {e}", file=err)
        return EXIT_INPUT
    except SystemExit as e:
        return EXIT_INPUT if e.code not in (0, None) else EXIT_OK
    _configure_logging(args.verbose, err)

    try:
        if args.command == "eval":
            return cmd_eval(args, out)
        if args.command == "decompose":
            return cmd_decompose(args, out)
        if args.command == "check":
            return cmd_check(args, out, err)
        return cmd_catalog(args, out)
    except NonConvergenceError as e:
        logger.warning("nonconvergence previous=%r last=%r nodes=%d", e.previous, e.last, e.nodes)
        print(f"ERROR: {e}", file=err)
        return EXIT_NONCONVERGENCE
    except CdiffError as e:
        print(f"ERROR: {e}", file=err)
        return EXIT_INPUT
