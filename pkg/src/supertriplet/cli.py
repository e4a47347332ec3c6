"""Command-line front end: character tables, verification suites, modular checks.

Exit codes: 0 success, 1 check failure, 2 usage error.  Output is JSON
(sorted keys, canonical rationals, schema field "1") or CSV with exact
values as "num/den" strings.  Configuration is flags only; no environment
variables, so identical invocations produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import List, Optional

from . import characters as ch
from . import modular, suites, zhu

SCHEMA = "1"

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def _parse_rational(text: str) -> Fraction:
    return Fraction(text)


def _emit(payload: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
        if not payload.endswith("\n"):
            sys.stdout.write("\n")


def _json_dump(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2)


def _frac_str(pair) -> str:
    return f"{pair[0]}/{pair[1]}"


# ----------------------------------------------------------------------
# char
# ----------------------------------------------------------------------


def _cmd_char(args) -> int:
    m = args.m
    cutoff = args.cutoff if args.cutoff is not None else Fraction(30)
    if args.all:
        labels = ch.all_labels(m)
    else:
        if not args.family or args.index is None:
            print("char: provide --family and --index, or --all", file=sys.stderr)
            return EXIT_USAGE
        try:
            label = ch.ModuleLabel(args.family, args.index, m)
        except ValueError as exc:
            print(f"char: {exc}", file=sys.stderr)
            return EXIT_USAGE
        flavor = args.flavor
        if label.twisted and flavor == "supercharacter":
            print("char: twisted families have no supercharacter flavor", file=sys.stderr)
            return EXIT_USAGE
        labels = [(label, flavor)]
    rows = ch.char_table_rows(m, cutoff, labels)
    if args.format == "json":
        _emit(_json_dump({"schema": SCHEMA, "rows": rows}), args.out)
    else:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["family", "index", "flavor", "m", "exponent", "coefficient"])
        for row in rows:
            for term in row["series"]["terms"]:
                writer.writerow(
                    [
                        row["family"],
                        row["index"],
                        row["flavor"],
                        row["m"],
                        _frac_str(term["exp"]),
                        _frac_str(term["coef"]),
                    ]
                )
        _emit(buf.getvalue(), args.out)
    return EXIT_OK


# ----------------------------------------------------------------------
# verify
# ----------------------------------------------------------------------


def _cmd_verify(args) -> int:
    cutoff = args.cutoff if args.cutoff is not None else Fraction(30)
    try:
        results = suites.run_suite(
            args.suite,
            args.m,
            cutoff=cutoff,
            tolerance=args.tolerance,
            inject_fault=args.inject_fault,
        )
    except ValueError as exc:
        print(f"verify: {exc}", file=sys.stderr)
        return EXIT_USAGE
    passed = all(r.passed for r in results)
    report = {
        "schema": SCHEMA,
        "suite": args.suite,
        "m": args.m,
        "cutoff": [str(Fraction(cutoff).numerator), str(Fraction(cutoff).denominator)],
        "passed": passed,
        "checks": [r.to_json() for r in results],
    }
    _emit(_json_dump(report), args.out)
    return EXIT_OK if passed else EXIT_CHECK_FAILED


# ----------------------------------------------------------------------
# classify
# ----------------------------------------------------------------------


def _cmd_classify(args) -> int:
    records = zhu.classify_twisted(args.m)
    if args.format == "json":
        payload = {"schema": SCHEMA, "m": args.m, "modules": [r.to_json() for r in records]}
        _emit(_json_dump(payload), args.out)
    else:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["family", "index", "i_index", "lowest_weight", "top_dim_graded", "g0_squared"])
        for r in records:
            writer.writerow(
                [
                    r.family,
                    r.index,
                    r.i_index,
                    f"{r.lowest_weight.numerator}/{r.lowest_weight.denominator}",
                    r.top_dim_graded,
                    f"{r.g0_squared.numerator}/{r.g0_squared.denominator}",
                ]
            )
        _emit(buf.getvalue(), args.out)
    return EXIT_OK


# ----------------------------------------------------------------------
# modular
# ----------------------------------------------------------------------


def _grid_json(grid) -> list:
    return [[tau.real, tau.imag] for tau in grid.points]


def _cmd_modular(args) -> int:
    cutoff = args.cutoff if args.cutoff is not None else Fraction(400)
    if cutoff < 100:
        print("modular: numeric cutoff must be >= 100", file=sys.stderr)
        return EXIT_USAGE
    m = args.m
    if args.check == "rank":
        grid = modular.standard_grid(m, cutoff)
        report = modular.closure_rank(m, grid)
        payload = {
            "schema": SCHEMA,
            "test": "rank",
            "cutoff": float(cutoff),
            "grid": _grid_json(grid),
            **report.to_json(),
        }
        _emit(_json_dump(payload), args.out)
        return EXIT_OK if report.rank == report.expected else EXIT_CHECK_FAILED
    if args.check == "closure":
        grid = modular.standard_grid(m, cutoff)
        report = modular.closure_under_s_t(m, grid)
        payload = {
            "schema": SCHEMA,
            "test": "closure",
            "cutoff": float(cutoff),
            "grid": _grid_json(grid),
            **report.to_json(),
        }
        _emit(_json_dump(payload), args.out)
        ok = (
            report.worst_s_residual < args.tolerance
            and report.worst_t_residual < args.tolerance
            and report.negative_control_residual > 1e-2
        )
        return EXIT_OK if ok else EXIT_CHECK_FAILED
    if args.check == "s-transform":
        grid = modular.theta_transform_grid(cutoff)
        worst = 0.0
        per = []
        for idx in modular.character_theta_indices(m):
            for variant in ("theta", "theta_deriv"):
                r = modular.s_transform_residual(idx, variant, grid, args.tolerance)
                per.append(
                    {"j": str(idx.j), "k": str(idx.k), "variant": variant, "residual": r}
                )
                worst = max(worst, r)
        payload = {
            "schema": SCHEMA,
            "test": "s-transform",
            "m": m,
            "cutoff": float(cutoff),
            "grid": _grid_json(grid),
            "worst_residual": worst,
            "residuals": per,
        }
        _emit(_json_dump(payload), args.out)
        return EXIT_OK if worst < args.tolerance else EXIT_CHECK_FAILED
    if args.check == "mde":
        result = modular.find_mde(m, allow_large_m=True)
        payload = {"schema": SCHEMA, "test": "mde", **result.to_json()}
        _emit(_json_dump(payload), args.out)
        return EXIT_OK if result.success and result.negative_control_nonzero else EXIT_CHECK_FAILED
    print(f"modular: unknown check {args.check!r}", file=sys.stderr)
    return EXIT_USAGE


# ----------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="supertriplet",
        description="Characters, twisted Zhu data, and modular checks for the "
        "N=1 super triplet algebra family.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, default_cutoff=None):
        p.add_argument("--m", type=int, required=True, help="family parameter, >= 1")
        p.add_argument("--cutoff", type=_parse_rational, default=default_cutoff)
        p.add_argument("--tolerance", type=float, default=1e-8)
        p.add_argument("--out", type=str, default=None)

    p_char = sub.add_parser("char", help="emit character tables")
    add_common(p_char)
    p_char.add_argument("--family", choices=["RLambda", "RPi", "SLambda", "SPi"])
    p_char.add_argument("--index", type=int)
    p_char.add_argument(
        "--flavor", choices=["character", "supercharacter"], default="character"
    )
    p_char.add_argument("--all", action="store_true")
    p_char.add_argument("--format", choices=["json", "csv"], default="json")
    p_char.set_defaults(func=_cmd_char)

    p_verify = sub.add_parser("verify", help="run named invariant suites")
    add_common(p_verify)
    p_verify.add_argument("--suite", choices=list(suites.SUITE_NAMES), default="all")
    p_verify.add_argument(
        "--inject-fault",
        type=str,
        default=None,
        help="test hook: adds a deliberately failing check with this name",
    )
    p_verify.set_defaults(func=_cmd_verify)

    p_classify = sub.add_parser("classify", help="emit the twisted module table")
    add_common(p_classify)
    p_classify.add_argument("--format", choices=["json", "csv"], default="json")
    p_classify.set_defaults(func=_cmd_classify)

    p_mod = sub.add_parser("modular", help="numeric modular checks")
    p_mod.add_argument("check", choices=["rank", "closure", "s-transform", "mde"])
    add_common(p_mod)
    p_mod.set_defaults(func=_cmd_modular)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses exit code 2 for usage errors already
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    if args.m < 1:
        print("m must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
