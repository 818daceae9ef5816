"""Command-line front end.

Exit status: 0 on success, 1 when a verification finds a violation (a JSON
failure report goes to stderr), 2 on usage or configuration errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import acceptance, constructors, decompose, lattice, linalg, rpverify, spaces
from .config import ConfigError, RunConfig, parse_range, parse_rational_list
from .errors import InvariantViolation
from .ratpoly import Poly, heat_op, laplacian, poly_from_json, poly_to_json

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _map_cells(func, cells, workers: int):
    """Evaluate independent cells, results in cell order regardless of workers."""
    cells = list(cells)
    if workers <= 1 or len(cells) <= 1:
        return [func(c) for c in cells]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, cells))


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _dump_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_poly(arg: str) -> Poly:
    if arg == "-":
        text = sys.stdin.read()
    elif arg.lstrip().startswith("{"):
        text = arg
    else:
        try:
            with open(arg, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read polynomial {arg!r}: {exc}") from None
    try:
        return poly_from_json(json.loads(text))
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"bad polynomial JSON: {exc}") from None


# cell functions (module level so they pickle) -----------------------------------


def _dims_cell(cell):
    n, p = cell
    return spaces.dimension_row(n, p)


def _lattice_cell(cell):
    n, d = cell
    return lattice.lattice_row(n, d)


def _check_cell(cell):
    i, kwargs = cell
    return acceptance.run_check(i, kwargs)


# subcommands ---------------------------------------------------------------------


def cmd_dims(cfg: RunConfig, args) -> int:
    cells = [(n, p) for n in cfg.ns for p in cfg.degrees]
    rows = _map_cells(_dims_cell, cells, cfg.workers())
    header = ["n", "p", "dim_A", "dim_H_homog", "dim_Hd", "dim_P"]
    if cfg.output_format == "json":
        _emit(_dump_json(rows), cfg.output_path)
    else:
        _emit(_dump_csv(header, [[r[h] for h in header] for r in rows]), cfg.output_path)
    return EXIT_OK


def cmd_basis(cfg: RunConfig, args) -> int:
    n, p = cfg.n_range[1], cfg.degree_range[1]
    if args.kind == "spatial":
        b = spaces.basis_A(n, p)
    elif args.kind == "parabolic":
        b = spaces.basis_parabolic(n, p)
    else:
        b = spaces.basis_filtered(n, p, parabolic=args.kind == "parabolic_filtered")
    _emit(_dump_json(b.to_json()), cfg.output_path)
    return EXIT_OK


def cmd_kernel(cfg: RunConfig, args) -> int:
    n, p = cfg.n_range[1], cfg.degree_range[1]
    if args.operator == "laplacian":
        ker = spaces.harmonic_layer(n, p)
    else:
        ker = spaces.caloric_layer(n, p)
    out = ker.to_json()
    out.update({"operator": args.operator, "n": n, "degree": p})
    _emit(_dump_json(out), cfg.output_path)
    return EXIT_OK


def cmd_construct(cfg: RunConfig, args) -> int:
    u = _read_poly(args.poly)
    try:
        if args.kind == "laplace":
            trace = constructors.laplace_preimage(u)
            out = trace.to_json()
            out["check"] = laplacian(trace.result) == u
        elif args.kind == "heat":
            v = constructors.heat_preimage_layers(u)
            out = {"input": poly_to_json(u), "result": poly_to_json(v), "check": heat_op(v) == u}
        else:
            v = constructors.caloric_extension(u)
            out = {"input": poly_to_json(u), "result": poly_to_json(v),
                   "check": heat_op(v).is_zero()}
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(_dump_json(out), cfg.output_path)
    return EXIT_OK if out["check"] else EXIT_VIOLATION


def cmd_decompose(cfg: RunConfig, args) -> int:
    u = _read_poly(args.poly)
    try:
        dec = decompose.decompose_caloric(u, args.k, cfg.nodes)
        rescaled = decompose.rescaled_slice_identity(u, args.k, Fraction(3), cfg.nodes)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    dec.checks["rescaled_slice_identity"] = rescaled.holds
    out = dec.to_json()
    out["slice_coefficients"] = decompose.slice_coefficients(args.k, cfg.nodes).to_json()
    _emit(_dump_json(out), cfg.output_path)
    return EXIT_OK if all(dec.checks.values()) else EXIT_VIOLATION


def cmd_lattice(cfg: RunConfig, args) -> int:
    cells = [(n, d) for n in cfg.ns for d in cfg.degrees]
    rows = _map_cells(_lattice_cell, cells, cfg.workers())
    if cfg.output_format == "json":
        _emit(_dump_json([dict(zip(lattice.CSV_HEADER, r.as_csv())) for r in rows]), cfg.output_path)
    else:
        _emit(_dump_csv(lattice.CSV_HEADER, [r.as_csv() for r in rows]), cfg.output_path)
    return EXIT_OK if all(r.thm1_ok is not False for r in rows) else EXIT_VIOLATION


def cmd_rpoincare(cfg: RunConfig, args) -> int:
    u = _read_poly(args.poly)
    try:
        table = rpverify.rp_scale_table(u, cfg.radii)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if cfg.output_format == "json":
        rows = [dict(zip(rpverify.CSV_HEADER, r.as_csv())) for r in table]
        _emit(_dump_json(rows), cfg.output_path)
    else:
        _emit(_dump_csv(rpverify.CSV_HEADER, [r.as_csv() for r in table]), cfg.output_path)
    return EXIT_OK


def cmd_verify_all(cfg: RunConfig, args) -> int:
    full = args.full
    kwargs = acceptance.scaled_arguments(None if full else cfg.ns, None if full else cfg.ks)
    results = _map_cells(_check_cell, sorted(kwargs.items()), cfg.workers())
    for res in results:
        print(res.line(), file=sys.stderr)
    outdir = cfg.output_path or "verify-output"
    os.makedirs(outdir, exist_ok=True)
    report = {
        "config": {"n_range": list(cfg.n_range), "k_range": list(cfg.k_range), "full": full},
        "checks": [r.to_json() for r in results],
        "passed": all(r.passed for r in results),
    }
    with open(os.path.join(outdir, "report.json"), "w", encoding="utf-8") as fh:
        fh.write(_dump_json(report))
    dims = [spaces.dimension_row(n, p) for n in cfg.ns for p in range(2 * cfg.k_range[1] + 1)]
    header = ["n", "p", "dim_A", "dim_H_homog", "dim_Hd", "dim_P"]
    with open(os.path.join(outdir, "dims.csv"), "w", encoding="utf-8", newline="") as fh:
        fh.write(_dump_csv(header, [[r[h] for h in header] for r in dims]))
    failures = [r for r in results if not r.passed]
    if failures:
        failure_report = [{"check": r.name, "module": r.module, "operation": r.operation,
                           "witness": r.witness} for r in failures]
        with open(os.path.join(outdir, "failures.json"), "w", encoding="utf-8") as fh:
            fh.write(_dump_json(failure_report))
        sys.stderr.write(_dump_json({"failures": failure_report}))
        return EXIT_VIOLATION
    return EXIT_OK


COMMANDS = {
    "dims": cmd_dims,
    "basis": cmd_basis,
    "kernel": cmd_kernel,
    "construct": cmd_construct,
    "decompose": cmd_decompose,
    "lattice": cmd_lattice,
    "rpoincare": cmd_rpoincare,
    "verify-all": cmd_verify_all,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="config file (default: $CALORIC_CONFIG)")
    common.add_argument("--n", type=int, help="single spatial dimension")
    common.add_argument("--n-range", help="dimension range a..b")
    common.add_argument("--max-degree", type=int, help="degrees 0..D")
    common.add_argument("--degree", type=int, help="single degree")
    common.add_argument("--degree-range", help="degree range a..b")
    common.add_argument("--k-range", help="k range a..b")
    common.add_argument("--nodes", help="comma separated rational time nodes")
    common.add_argument("--radii", help="comma separated positive rationals")
    common.add_argument("--format", choices=["csv", "json"], dest="output_format")
    common.add_argument("--output", "-o", dest="output_path")
    common.add_argument("--parallelism", type=int, help="worker processes, 0 = auto")

    parser = _Parser(prog="caloric", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s 0.1.0 ({linalg.BACKEND} kernel)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("dims", parents=[common], help="dimension table")
    p = sub.add_parser("basis", parents=[common], help="graded monomial basis as JSON")
    p.add_argument("--kind", default="parabolic",
                   choices=["spatial", "parabolic", "spatial_filtered", "parabolic_filtered"])
    p = sub.add_parser("kernel", parents=[common], help="kernel basis of an operator layer")
    p.add_argument("--operator", default="heat_op", choices=["laplacian", "heat_op"])
    p = sub.add_parser("construct", parents=[common], help="explicit preimages / extensions")
    p.add_argument("--kind", required=True, choices=["laplace", "heat", "caloric"])
    p.add_argument("--poly", required=True, help="Poly JSON, a file path, or - for stdin")
    p = sub.add_parser("decompose", parents=[common], help="time-slice decomposition")
    p.add_argument("--poly", required=True, help="Poly JSON, a file path, or - for stdin")
    p.add_argument("--k", type=int, required=True)
    sub.add_parser("lattice", parents=[common], help="discrete vs continuum dimensions")
    p = sub.add_parser("rpoincare", parents=[common], help="reverse-Poincare ratio table")
    p.add_argument("--poly", required=True, help="Poly JSON, a file path, or - for stdin")
    p = sub.add_parser("verify-all", parents=[common], help="run the acceptance checks")
    p.add_argument("--full", action="store_true", help="ignore ranges, use the full check ranges")
    return parser


def resolve_config(args) -> RunConfig:
    cfg = RunConfig.load(args.config)
    changes = {}
    if args.n is not None:
        changes["n_range"] = (args.n, args.n)
    if args.n_range:
        changes["n_range"] = parse_range(args.n_range)
    if args.max_degree is not None:
        changes["degree_range"] = (0, args.max_degree)
    if args.degree is not None:
        changes["degree_range"] = (args.degree, args.degree)
    if args.degree_range:
        changes["degree_range"] = parse_range(args.degree_range)
    if args.k_range:
        changes["k_range"] = parse_range(args.k_range)
    if args.nodes:
        changes["nodes"] = parse_rational_list(args.nodes)
    if args.radii:
        changes["radii"] = parse_rational_list(args.radii)
    for name in ("output_format", "output_path", "parallelism"):
        if getattr(args, name) is not None:
            changes[name] = getattr(args, name)
    return cfg.updated(**changes)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        return COMMANDS[args.command](cfg, args)
    except (ConfigError, UsageError) as exc:
        sys.stderr.write(f"caloric: error: {exc}\n")
        return EXIT_USAGE
    except InvariantViolation as exc:
        sys.stderr.write(_dump_json({"failures": [exc.to_json()]}))
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
