"""Command-line entry point: ``tjfcalc <subcommand> ...``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from .catalog import catalog, catalog_names
from .cells import CellComplex, CellError, OutOfCatalog, sphere
from .jacobi import GENERATORS, JacobiForm, TwistNotTrivialized, torsion_restrict, torsion_sum
from .les import homotopy_groups
from .modular import mf_generator, to_csv
from .render import render_ascii, render_svg
from .series import QYSeries, SeriesError
from .tables import DATA_ENV, TableError, TableRangeExceeded, default_tables, load_table
from .verify import SUITES, TORSION_TRUNCATION, IDENTITY_TRUNCATION, run_suite

FORMS = ("a", "b", "c", "c4", "c6", "delta")
FORMATS = ("json", "csv", "svg", "ascii")

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# -- gen ---------------------------------------------------------------------


def _series_csv(series: QYSeries) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["q_exponent", "y_exponent", "coefficient"])
    for e, r, c in series.items():
        w.writerow([str(e), str(r), str(c.to_rational()) if c.is_rational() else repr(c)])
    return buf.getvalue()


def generate(form: str, truncation: int, fmt: str) -> str:
    """Serialized q-expansion of a named generator."""
    if truncation < 1:
        raise UsageError("truncation must be at least 1")
    if form in GENERATORS:
        phi: JacobiForm = GENERATORS[form](truncation)
        if fmt == "json":
            return json.dumps(phi.to_json_obj(), indent=2) + "\n"
        return _series_csv(phi.series)
    if form in ("c4", "c6", "delta"):
        f = mf_generator(form, truncation)
        if fmt == "json":
            obj = f.series.to_json_obj()
            obj["degree"] = f.degree
            return json.dumps(obj, indent=2) + "\n"
        return to_csv({form: f.series})
    raise UsageError(f"unknown form {form!r}; choose from {', '.join(FORMS)}")


# -- torsion -----------------------------------------------------------------

_FACTOR = re.compile(r"([abc])(?:\^(\d+))?")


def parse_monomial(expr: str) -> List[Tuple[str, int]]:
    """Factors of a monomial such as ``a^4``, ``a^2 b``, ``(a·c)`` or ``a*c``."""
    text = expr.replace("(", " ").replace(")", " ").replace("·", " ").replace("*", " ")
    factors = []
    for token in text.split():
        pos = 0
        while pos < len(token):
            m = _FACTOR.match(token, pos)
            if not m:
                raise UsageError(f"cannot parse {expr!r}: expected a monomial in a, b, c")
            e = int(m.group(2) or 1)
            if e < 1:
                raise UsageError(f"cannot parse {expr!r}: exponents must be positive")
            factors.append((m.group(1), e))
            pos = m.end()
    if not factors:
        raise UsageError(f"cannot parse {expr!r}: empty monomial")
    return factors


def build_monomial(expr: str, truncation: int) -> JacobiForm:
    phi = None
    for name, e in parse_monomial(expr):
        g = GENERATORS[name](truncation) ** e
        phi = g if phi is None else phi * g
    return phi


def torsion_report(expr: str, n: int, pole_bound: int, truncation: int) -> dict:
    phi = build_monomial(expr, truncation)
    restriction = torsion_restrict(phi, n)
    s = torsion_sum(restriction, pole_bound)
    m = s.membership
    return {
        "expression": expr,
        "n": n,
        "k": phi.k,
        "degree": restriction.degree,
        "truncation": truncation,
        "components": {f"{a},{b}": repr(c) for (a, b), c in sorted(restriction.components.items())},
        "sum": repr(s.total),
        "in_span": m.in_span,
        "coordinates": {f"c4^{i} c6^{j} D^{l}": str(v) for (i, j, l), v in m.rational_coordinates().items()},
        "integral_coordinates": m.integral,
        "integral_all_components": s.integral_all_components,
        "integral_cusp_component": s.integral_cusp_component,
    }


def _torsion_text(rep: dict) -> str:
    lines = [f"{rep['expression']}: k = {rep['k']}, n = {rep['n']}, degree {rep['degree']}, truncation {rep['truncation']}"]
    for key, val in rep["components"].items():
        lines.append(f"  component {key}: {val}")
    lines.append(f"  normalized sum: {rep['sum']}")
    coords = ", ".join(f"{k}: {v}" for k, v in rep["coordinates"].items() if v != "0") or "zero"
    lines.append(f"  membership: {'in span' if rep['in_span'] else 'NOT in span'}; coordinates {coords}")
    lines.append(
        f"  integral: coordinates {rep['integral_coordinates']}, all components {rep['integral_all_components']}, "
        f"cusp component {rep['integral_cusp_component']}"
    )
    return "\n".join(lines) + "\n"


# -- complexes and ranges ----------------------------------------------------


def resolve_complex(target: str) -> CellComplex:
    """A catalog name, ``s0``/``S0`` for the sphere, or a path to a complex JSON file."""
    if target.lower() in ("s0", "sphere"):
        return sphere(0).renamed("S0")
    p = Path(target)
    if p.suffix == ".json" or p.exists():
        return CellComplex.from_json(p.read_text())
    return catalog(target)


def parse_range(text: str) -> range:
    m = re.fullmatch(r"\s*(-?\d+)\s*(?:\.\.\s*(-?\d+))?\s*", text)
    if not m:
        raise UsageError(f"cannot parse degree range {text!r}; use LO..HI")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) is not None else lo
    if hi < lo:
        raise UsageError(f"empty degree range {text!r}")
    return range(lo, hi + 1)


def resolve_table(name: Optional[str], prime: Optional[int], directory: Optional[str]):
    if name is None:
        return default_tables(prime, directory).base
    p = Path(name)
    if p.exists():
        return load_table(str(p))
    stem = name[: -len(".table")] if name.endswith(".table") else name
    return load_table(stem, directory)


# -- parser ------------------------------------------------------------------


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--truncation", type=int, default=default, help="q-expansion truncation")
    parser.add_argument("--prime", type=int, choices=(2, 3, 0), default=default, help="work integrally (0, 2) or 3-locally")
    parser.add_argument("--format", choices=FORMATS, default=default, help="output format")
    parser.add_argument("--data-dir", default=default, help=f"tables and golden files (also ${DATA_ENV})")
    parser.add_argument("--out", default=default, help="write output to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tjfcalc", description="Jacobi form expansions and TMF cell diagrams.")
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="q-expansion of a generator")
    p.add_argument("form", choices=FORMS)
    p.add_argument("trunc", nargs="?", type=int)
    p.add_argument("fmt", nargs="?", choices=("json", "csv"))

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("suite", nargs="?", default="all", choices=SUITES + ("all",))
    p.add_argument("trunc", nargs="?", type=int)
    p.add_argument("--cases", type=int, default=1000, help="randomized cases per property")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-timings", action="store_true", help="omit elapsed times for byte-stable reports")

    p = sub.add_parser("torsion", parents=[common], help="torsion restriction and fiberwise sum")
    p.add_argument("expression", help="monomial in a, b, c, e.g. a^4 or a*c")
    p.add_argument("n", type=int)
    p.add_argument("pole_bound", type=int)

    p = sub.add_parser("render", parents=[common], help="draw a cell diagram")
    p.add_argument("target", help="catalog name or complex JSON file")
    p.add_argument("backend", nargs="?", choices=("svg", "ascii"))

    p = sub.add_parser("homotopy", parents=[common], help="homotopy groups from a coefficient table")
    p.add_argument("complex", help="catalog name, s0, or complex JSON file")
    p.add_argument("table", nargs="?", help="table file or bundled table name")
    p.add_argument("range", nargs="?", default=None, help="degrees LO..HI")
    p.add_argument("--degrees", default=None, help="degrees LO..HI; use --degrees=-6..2 for negative bounds")

    p = sub.add_parser("cells", parents=[common], help="dump catalog complexes")
    p.add_argument("name", nargs="?", help="catalog entry; omit to list names")
    return parser


def _fix_homotopy_args(args) -> None:
    if args.degrees is not None:
        if args.range is not None:
            raise UsageError("give the degree range once")
        args.range = args.degrees
    # "homotopy X 7..7" leaves the table slot holding the range
    if args.range is None and args.table is not None and re.fullmatch(r"\s*-?\d+(\s*\.\.\s*-?\d+)?\s*", args.table):
        args.table, args.range = None, args.table
    if args.range is None:
        raise UsageError("homotopy needs a degree range LO..HI")


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if not args.data_dir:
        return _dispatch(args)
    saved = os.environ.get(DATA_ENV)
    os.environ[DATA_ENV] = args.data_dir
    try:
        return _dispatch(args)
    finally:
        if saved is None:
            del os.environ[DATA_ENV]
        else:
            os.environ[DATA_ENV] = saved


def _dispatch(args) -> int:
    out, fmt = args.out, args.format
    prime = None if args.prime in (None, 0, 2) else args.prime

    if args.command == "gen":
        trunc = args.trunc or args.truncation or IDENTITY_TRUNCATION
        _emit(generate(args.form, trunc, args.fmt or fmt or "json"), out)
        return EXIT_OK

    if args.command == "verify":
        report = run_suite(args.suite, args.trunc or args.truncation, cases=args.cases, seed=args.seed)
        timings = not args.no_timings
        _emit(report.to_json(timings) if fmt == "json" else report.to_text(timings), out)
        return report.exit_status

    if args.command == "torsion":
        rep = torsion_report(args.expression, args.n, args.pole_bound, args.truncation or TORSION_TRUNCATION)
        _emit(json.dumps(rep, indent=2) + "\n" if fmt == "json" else _torsion_text(rep), out)
        return EXIT_OK

    if args.command == "render":
        x = resolve_complex(args.target)
        backend = args.backend or fmt or "svg"
        if backend not in ("svg", "ascii"):
            raise UsageError("render supports svg and ascii")
        _emit(render_svg(x) if backend == "svg" else render_ascii(x), out)
        return EXIT_OK

    if args.command == "homotopy":
        _fix_homotopy_args(args)
        x = resolve_complex(args.complex)
        table = resolve_table(args.table, prime, args.data_dir)
        results = homotopy_groups(x, table, parse_range(args.range))
        if fmt == "json":
            _emit(json.dumps([r.to_json_obj() for r in results], indent=2) + "\n", out)
        else:
            _emit("".join(f"{r}\n" for r in results), out)
        return EXIT_OK

    if args.command == "cells":
        if args.name is None:
            _emit("".join(f"{n}\n" for n in catalog_names()), out)
        else:
            x = resolve_complex(args.name)
            _emit(render_ascii(x) if fmt == "ascii" else json.dumps(x.to_json_obj(), indent=2) + "\n", out)
        return EXIT_OK
    raise UsageError(f"unknown command {args.command!r}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        return run(argv)
    except (UsageError, OutOfCatalog, CellError, TableError, TableRangeExceeded, TwistNotTrivialized, SeriesError) as exc:
        print(f"tjfcalc: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"tjfcalc: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
