"""Command-line interface.

Exit codes: 0 success, 1 a check/verification found a failure or
discrepancy, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from typing import Sequence, TextIO

from . import corpus, oracle
from .familygen import NotIntegralBase, family_params, instantiate
from .integrality import SolutionRow, is_distance_integral, verify_row
from .model import PartitionSpec, SpecError, format_spec, parse_spec
from .search import BoundsError, BoundsTooLarge, Checkpoint, RowWriter, SearchBounds, search
from .serialize import eigen_to_json, report_to_dict, spectrum_to_dict
from .spectral import spectrum

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
WORKERS_ENV = "DISTINT_WORKERS"


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        bad = next(x for x in text.split(",") if not x.strip().lstrip("-").isdigit())
        raise argparse.ArgumentTypeError(f"bad token {bad.strip()!r}: expected an integer")


def _gap_list(text: str) -> list[int | None]:
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok in ("", "-", "none"):
            out.append(None)
        elif tok.isdigit():
            out.append(int(tok))
        else:
            raise argparse.ArgumentTypeError(f"bad token {tok!r}: expected a positive integer or '-'")
    return out


def _resolve_format(args) -> str:
    if args.format != "auto":
        return args.format
    return "table" if sys.stdout.isatty() else "json"


def _spec(text: str, max_s: int) -> PartitionSpec:
    spec = parse_spec(text)
    if spec.s > max_s:
        raise UsageError(f"{spec.s} distinct part sizes exceeds --max-s {max_s}")
    return spec


def _emit_json(out: TextIO, obj) -> None:
    out.write(json.dumps(obj, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------


def cmd_spectrum(args, out: TextIO) -> int:
    spec = _spec(args.spec, args.max_s)
    sp = spectrum(spec)
    fmt = _resolve_format(args)
    if fmt == "json":
        _emit_json(out, spectrum_to_dict(format_spec(spec), sp))
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["eigenvalue", "lo", "hi", "multiplicity"])
        for lam, m in sp.entries:
            if isinstance(lam, int):
                w.writerow([lam, "", "", m])
            else:
                w.writerow(["", lam.lo, lam.hi, m])
    else:
        out.write(str(sp) + "\n")
        out.write(("distance integral" if sp.integral else "not distance integral") + "\n")
    return EXIT_OK


def cmd_check(args, out: TextIO) -> int:
    spec = _spec(args.spec, args.max_s)
    rep = is_distance_integral(spec)
    fmt = _resolve_format(args)
    if fmt == "json":
        _emit_json(out, report_to_dict(format_spec(spec), rep))
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["spec", "integral"] + [f"mu{i}" for i in range(1, spec.s + 1)])
        w.writerow([format_spec(spec), int(rep.integral)] + [str(r) for r in rep.roots])
    elif rep.integral:
        out.write("distance integral; mu = " + " ".join(map(str, rep.mu)) + "\n")
    else:
        out.write("not distance integral; roots = " + " ".join(map(str, rep.roots)) + "\n")
    return EXIT_OK if rep.integral else EXIT_FAIL


def _write_errata(report: corpus.ErrataReport, fmt: str, out: TextIO) -> None:
    if fmt == "json":
        out.write(report.to_json())
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["source", "kind", "status", "details"])
        for e in report.entries:
            w.writerow([e.source, e.kind, e.status, json.dumps(list(e.details), sort_keys=True) if e.details else ""])
    else:
        out.write(report.to_text())


def cmd_verify(args, out: TextIO) -> int:
    fmt = _resolve_format(args)
    if args.corpus:
        report = corpus.run_errata_report()
        _write_errata(report, fmt, out)
        return EXIT_FAIL if report.discrepancies else EXIT_OK
    if args.p is None or args.a is None or args.mu is None:
        raise UsageError("verify needs --p, --a and --mu, or --corpus")
    if len(args.p) > args.max_s:
        raise UsageError(f"{len(args.p)} distinct part sizes exceeds --max-s {args.max_s}")
    row = SolutionRow.build(args.p, args.a, args.mu, args.n)
    report = verify_row(row)
    if fmt == "json":
        _emit_json(out, report.to_dict())
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["check", "passed", "details"])
        for c in report.checks:
            w.writerow([c.name, int(c.passed), json.dumps(c.detail, sort_keys=True) if c.detail else ""])
    else:
        out.write(report.to_text() + "\n")
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_errata(args, out: TextIO) -> int:
    report = corpus.run_errata_report()
    _write_errata(report, _resolve_format(args), out)
    return EXIT_FAIL if report.discrepancies else EXIT_OK


def cmd_family(args, out: TextIO) -> int:
    if len(args.p) > args.max_s:
        raise UsageError(f"{len(args.p)} distinct part sizes exceeds --max-s {args.max_s}")
    try:
        fam = family_params(args.p, args.mu)
    except NotIntegralBase as exc:
        raise UsageError(f"base is not a distance-integral solution: {exc}")
    errata = [
        {"source": c.source, "differences": corpus.compare_family_claim(c.payload, fam)}
        for c in corpus.find_family_claims(args.p, args.mu)
    ]
    fmt = _resolve_format(args)
    if fmt == "json":
        d = fam.to_dict()
        d["errata"] = errata
        if args.t is not None:
            spec, mu = instantiate(fam, args.t)
            d["instance"] = {"t": args.t, "spec": format_spec(spec), "mu": list(mu)}
        _emit_json(out, d)
        return EXIT_OK
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["k", "p", "d", "r", "slope", "intercept"])
        for k in range(len(fam.p)):
            w.writerow([k + 1, fam.p[k], fam.d[k], fam.r[k], fam.slopes[k], fam.intercepts[k]])
        return EXIT_OK
    out.write(f"step {fam.step}\n")
    if args.emit_formulas:
        for line in fam.formulas():
            out.write(line + "\n")
    else:
        out.write("d " + " ".join(map(str, fam.d)) + "\n")
        out.write("r " + " ".join(map(str, fam.r)) + "\n")
        out.write("slopes " + " ".join(map(str, fam.slopes)) + "\n")
        out.write("intercepts " + " ".join(map(str, fam.intercepts)) + "\n")
    for e in errata:
        for diff in e["differences"]:
            out.write(f"errata {e['source']}: {diff['field']} printed {diff['printed']} derived {diff['recomputed']}\n")
    if args.t is not None:
        spec, mu = instantiate(fam, args.t)
        out.write(f"t={args.t}: {format_spec(spec)} mu = {' '.join(map(str, mu))}\n")
    return EXIT_OK


def _bounds_from_args(args) -> SearchBounds:
    if args.s is None or args.pmax is None or args.mumax is None:
        raise UsageError("search needs --s, --pmax and --mumax (or --resume)")
    if args.s > args.max_s:
        raise UsageError(f"s = {args.s} exceeds --max-s {args.max_s}")
    pmin = args.pmin if args.pmin is not None else [1] * args.s
    return SearchBounds(args.s, tuple(pmin), tuple(args.pmax), args.mumax,
                        None if args.gap is None else tuple(args.gap), args.nmax, args.limit)


def cmd_search(args, out: TextIO) -> int:
    if args.resume:
        cp = Checkpoint.load(args.resume)
        if args.pmax is not None and _bounds_from_args(args) != cp.bounds:
            raise UsageError("bounds on the command line differ from the checkpoint")
        bounds = cp.bounds
    else:
        bounds = _bounds_from_args(args)
        cp = Checkpoint(args.checkpoint, bounds) if args.checkpoint else None
    workers = args.workers if args.workers is not None else int(os.environ.get(WORKERS_ENV, "1"))
    writer = RowWriter(out, _resolve_format(args), bounds.s)
    rows = search(bounds, workers=workers, budget=args.budget, force=args.force, checkpoint=cp, strategy=args.strategy)
    for row in rows:
        writer.write(row)
    writer.close()
    return EXIT_OK


def cmd_oracle(args, out: TextIO) -> int:
    spec = _spec(args.spec, args.max_s)
    try:
        m = oracle.distance_matrix(spec, limit=args.oracle_limit)
    except (oracle.TooLarge, oracle.Disconnected) as exc:
        raise UsageError(str(exc))
    if args.dump:
        out.write(oracle.dump_matrix(m))
        return EXIT_OK
    cp = oracle.charpoly_exact(m)
    from .spectral import d_polynomial_factored

    expected = d_polynomial_factored(spec).expand()
    ok = cp == expected
    fmt = _resolve_format(args)
    if fmt == "json":
        _emit_json(out, {"spec": format_spec(spec), "match": ok, "charpoly": list(cp.high), "factored": list(expected.high)})
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["degree", "charpoly", "factored"])
        for k in range(max(len(cp.coeffs), len(expected.coeffs)) - 1, -1, -1):
            w.writerow([k, cp.coeffs[k] if k < len(cp.coeffs) else 0, expected.coeffs[k] if k < len(expected.coeffs) else 0])
    else:
        out.write(f"charpoly {cp}\n")
        out.write(("match" if ok else "MISMATCH") + "\n")
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["auto", "table", "csv", "json"], default="auto",
                        help="output format (default: table on a terminal, json when piped)")
    common.add_argument("--max-s", type=int, default=8, help="ceiling on the number of distinct part sizes")

    parser = argparse.ArgumentParser(prog="distint", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", parents=[common], help="full distance spectrum")
    p.add_argument("spec", help="partition, e.g. 2x2 or 1,1,3")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("check", parents=[common], help="decide distance integrality")
    p.add_argument("spec")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", parents=[common], help="verify a solution row or the bundled corpus")
    p.add_argument("--p", type=_int_list)
    p.add_argument("--a", type=_int_list)
    p.add_argument("--mu", type=_int_list)
    p.add_argument("--n", type=int, help="claimed vertex count (defaults to the recomputed one)")
    p.add_argument("--corpus", action="store_true", help="verify every published entry")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("errata", parents=[common], help="errata report for the bundled corpus")
    p.set_defaults(func=cmd_errata)

    p = sub.add_parser("family", parents=[common], help="infinite family from one solution")
    p.add_argument("--p", type=_int_list, required=True)
    p.add_argument("--mu", type=_int_list, required=True)
    p.add_argument("--emit-formulas", action="store_true")
    p.add_argument("--t", type=int, help="also instantiate the family at this t")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("search", parents=[common], help="exhaustive search inside a box")
    p.add_argument("--s", type=int)
    p.add_argument("--pmin", type=_int_list)
    p.add_argument("--pmax", type=_int_list)
    p.add_argument("--gap", type=_gap_list, help="max p_i - p_{i-1} per index, '-' for none")
    p.add_argument("--mumax", type=int, help="inclusive ceiling on mu_s")
    p.add_argument("--nmax", type=int)
    p.add_argument("--limit", type=int, help="stop after this many rows")
    p.add_argument("--workers", type=int, help=f"worker processes (default ${WORKERS_ENV} or 1)")
    p.add_argument("--checkpoint", help="write resumable state to this file")
    p.add_argument("--resume", help="continue from a checkpoint file (and keep updating it)")
    p.add_argument("--budget", type=int, default=10**7, help="max work prefixes without --force")
    p.add_argument("--force", action="store_true")
    p.add_argument("--strategy", choices=["crt", "scan"], default="crt")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("oracle", parents=[common], help="dense-matrix cross-check of the factored polynomial")
    p.add_argument("spec")
    p.add_argument("--dump", action="store_true", help="print the distance matrix instead")
    p.add_argument("--oracle-limit", type=int, default=oracle.DEFAULT_LIMIT)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    out = sys.stdout if out is None else out
    if args.command == "search":
        logging.basicConfig(level=logging.INFO, stream=sys.stderr, format="%(message)s")
    try:
        return args.func(args, out)
    except SpecError as exc:
        print(f"distint: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, BoundsError, BoundsTooLarge) as exc:
        print(f"distint: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())
