"""Command line front end.

Subcommands: series, enumerate, verify, alien, estimate, qft. All numeric
output is exact (decimal strings for rationals) unless --digits asks for a
decimal evaluation. Exit codes: 0 success, 1 a verification failed, 2 usage
or precondition error.

The enumeration cap defaults to 8 chords; the environment variable
CHORDDIAG_CAP raises it (at most 10 -- (2*10-1)!! is about 6.5e8 matchings).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from fractions import Fraction

from . import alien, asymptotics, gf, oracle, qft
from .series import PowerSeries, series_to_csv_rows, series_to_json_dict

DEFAULT_ORDER = 30
DEFAULT_DIGITS = 30
DEFAULT_CAP = oracle.DEFAULT_CAP
HARD_CAP = oracle.HARD_CAP
CAP_ENV_VAR = "CHORDDIAG_CAP"


class UsageError(Exception):
    pass


def configured_cap() -> int:
    raw = os.environ.get(CAP_ENV_VAR)
    if raw is None:
        return DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise UsageError(f"{CAP_ENV_VAR} must be an integer, got {raw!r}") from None
    if not 1 <= cap <= HARD_CAP:
        raise UsageError(f"{CAP_ENV_VAR} must lie in 1..{HARD_CAP}, got {cap}")
    return cap


def _rational_str(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def _emit_series(f: PowerSeries, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(series_to_json_dict(f)))
    elif fmt == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(["index", "num", "den"])
        writer.writerows(series_to_csv_rows(f))
    else:
        print(", ".join(_rational_str(c) for c in f.coefficients))


# -- subcommands --------------------------------------------------------------------


def cmd_series(args) -> int:
    f = gf.series_family(args.family, args.order)
    _emit_series(f, args.format)
    return 0


def cmd_enumerate(args) -> int:
    cap = configured_cap()
    n = args.chords
    if n > cap:
        raise UsageError(
            f"n={n} exceeds the enumeration cap {cap}; "
            f"set {CAP_ENV_VAR} (max {HARD_CAP}) to opt in"
        )
    cls = args.cls
    if cls.startswith("k:"):
        try:
            k = int(cls[2:])
        except ValueError:
            raise UsageError(f"bad class {cls!r}: expected k:<integer>") from None
        if k < 1:
            raise UsageError("k must be at least 1")
    elif cls not in ("all", "connected", "2connected"):
        raise UsageError(
            f"unknown class {cls!r}: choose all, connected, 2connected or k:K"
        )

    if args.count_only:
        if cls == "all":
            count = oracle.class_census(n, cap=cap)["all"]
        elif cls == "connected":
            count = oracle.class_census(n, cap=cap)["connected"]
        elif cls == "2connected":
            count = oracle.class_census(n, cap=cap)["2connected"]
        else:
            count = oracle.k_connected_census(n, k, cap=cap)
        if args.format == "json":
            print(json.dumps({"n": n, "class": cls, "count": str(count)}))
        elif args.format == "csv":
            writer = csv.writer(sys.stdout)
            writer.writerow(["n", "class", "count"])
            writer.writerow([n, cls, count])
        else:
            print(count)
        return 0

    def selected(diagram) -> bool:
        if cls == "all":
            return True
        if diagram.n == 0:
            return False
        if cls == "connected":
            return oracle.is_connected(diagram)
        if cls == "2connected":
            return oracle.is_k_connected(diagram, 2)
        return oracle.is_k_connected(diagram, k)

    for diagram in oracle.enumerate_diagrams(n, cap=cap):
        if selected(diagram):
            print(diagram.to_text())
    return 0


def cmd_alien(args) -> int:
    image = (
        alien.alien_connected(args.order)
        if args.family == "C"
        else alien.alien_two_connected(args.order)
    )
    if args.format == "json":
        print(
            json.dumps(
                {
                    "family": args.family,
                    "e_exp": {
                        "num": str(image.e_exp.numerator),
                        "den": str(image.e_exp.denominator),
                    },
                    "sqrt_two_pi_exp": image.sqrt_two_pi_exp,
                    "series": series_to_json_dict(image.series),
                }
            )
        )
    elif args.format == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(["index", "num", "den"])
        writer.writerows(series_to_csv_rows(image.series))
    else:
        print(
            f"prefactor: e^{_rational_str(image.e_exp)} "
            f"* (2*pi)^({image.sqrt_two_pi_exp}/2)"
        )
        print(", ".join(_rational_str(c) for c in image.series.coefficients))
    return 0


def cmd_estimate(args) -> int:
    if args.n_to < args.n_from:
        raise UsageError("--n-to must not be below --n-from")
    order = max(args.terms - 1, 1)
    if args.family == "C":
        image = alien.alien_connected(order)
        exact_series = gf.series_connected(args.n_to)
    else:
        image = alien.alien_two_connected(order)
        exact_series = gf.series_two_connected(max(args.n_to, 2))
    exact = [int(exact_series[i]) if i <= exact_series.order else 0 for i in range(args.n_to + 1)]
    rows = asymptotics.error_table(
        image,
        exact,
        range(args.n_from, args.n_to + 1),
        [args.terms],
        digits=args.digits,
    )
    writer = csv.writer(sys.stdout)
    writer.writerow(["n", "R", "estimate", "exact", "rel_error", "norm_error"])
    for row in rows:
        writer.writerow(
            [
                row.n,
                row.terms,
                row.estimate.to_decimal_string(),
                row.exact,
                asymptotics.format_significant(row.relative_error, 6)
                if row.relative_error
                else "0",
                asymptotics.format_significant(row.normalized_error, 6)
                if row.normalized_error
                else "0",
            ]
        )
    return 0


def _parse_coupling(text: str) -> tuple[int, Fraction]:
    k, _, lam = text.partition("=")
    try:
        return int(k), Fraction(lam)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad coupling {text!r}: expected K=RATIONAL") from None


def cmd_qft(args) -> int:
    if args.graph_of:
        diagram = oracle.ChordDiagram.from_text(args.graph_of)
        print(qft.chord_to_qed(diagram).to_text())
        return 0
    if args.model == "phi3" and not args.coupling:
        action = qft.PHI3
    else:
        couplings = dict(_parse_coupling(item) for item in args.coupling)
        if not couplings:
            raise UsageError("custom actions need at least one --coupling K=RATIONAL")
        action = qft.Action(Fraction(args.quadratic), couplings)
    series = qft.partition_function(action, args.order)
    _emit_series(series, args.format)
    return 0


# -- verification suites --------------------------------------------------------------


def _suite_lemmas(order: int, cap: int) -> list[tuple[str, bool, str]]:
    results = []
    for name, ok in gf.lemma_checks(order):
        results.append((f"lemmas: {name} at order {order}", ok, ""))
    return results


def _suite_proposition(order: int, cap: int) -> list[tuple[str, bool, str]]:
    results = []
    residual = gf.functional_relation_residual(order)
    results.append(
        (
            f"proposition: C = C^2/x - C2(C^2/x) residual zero at order {order}",
            residual.is_zero(),
            "" if residual.is_zero() else str(residual),
        )
    )
    ok = gf.check_substitution_inverse(order)
    results.append(
        (f"proposition: inverse of C^2/x equals (x-C2)^2/x at order {order}", ok, "")
    )
    case2_expected = {2: 1, 3: 3, 4: 20, 5: 189, 6: 2232}
    case3_expected = {2: 0, 3: 1, 4: 7, 5: 59, 6: 598}
    top = min(6, cap)
    for n in range(2, top + 1):
        counts = oracle.case_census(n, cap=cap)
        ok = (
            counts[oracle.DecompositionCase.ROOT_FREE] == case2_expected[n]
            and counts[oracle.DecompositionCase.ROOT_COVERED] == case3_expected[n]
        )
        results.append(
            (
                f"proposition: decomposition case census at n={n}",
                ok,
                str({c.value: v for c, v in counts.items()}),
            )
        )
    roundtrip_top = min(5, cap)
    bad = 0
    for n in range(1, roundtrip_top + 1):
        for diagram in oracle.enumerate_diagrams(n, cap=cap):
            if diagram.n and oracle.is_connected(diagram):
                if oracle.recompose(oracle.decompose_connected(diagram)) != diagram:
                    bad += 1
    results.append(
        (
            f"proposition: decompose/recompose identity for n <= {roundtrip_top}",
            bad == 0,
            f"{bad} failures" if bad else "",
        )
    )
    return results


def _suite_chain_rule(order: int, cap: int) -> list[tuple[str, bool, str]]:
    report = alien.verify_derivation_chain(order)
    return [
        (
            f"chain-rule: {step.name} at order {order}",
            step.passed,
            "" if step.passed else f"first mismatch at x^{step.first_mismatch}",
        )
        for step in report.steps
    ]


def _suite_tables(order: int, cap: int) -> list[tuple[str, bool, str]]:
    results = []
    work = max(order, 8)
    rows = gf.decomposition_table_series(work)
    for name, expected in gf.DECOMPOSITION_REFERENCE.items():
        got = tuple(rows[name][i] for i in range(len(expected)))
        ok = got == tuple(Fraction(e) for e in expected)
        results.append(
            (f"tables: decomposition row {name}", ok, "" if ok else str(got))
        )
    image_rows = alien.image_table_series(work)
    for name, expected in alien.IMAGE_REFERENCE.items():
        got = tuple(image_rows[name][i] for i in range(len(expected)))
        ok = got == tuple(Fraction(e) for e in expected)
        results.append((f"tables: image row {name}", ok, "" if ok else str(got)))
    identity = (
        PowerSeries.x(6)
        + rows["C^2 * [C2(t)/t^2]"].truncate(6)
        + rows["(C-x)/x * C^2 * [C2(t)/t^2]"].truncate(6)
        == gf.series_connected(6)
    )
    results.append(("tables: x + case rows sum to C", identity, ""))
    return results


def _suite_bijection(order: int, cap: int) -> list[tuple[str, bool, str]]:
    results = []
    expected = {2: 1, 3: 1, 4: 7, 5: 63, 6: 729}
    top = min(order, 6, cap)
    for n in range(2, top + 1):
        report = qft.verify_bijection(n, cap=cap)
        ok = report.passed and report.primitive_count == expected[n]
        detail = f"{report.primitive_count} primitive"
        if report.counterexamples:
            detail += f"; counterexamples: {report.counterexamples[:3]}"
        results.append((f"bijection: n={n}", ok, detail))
    return results


SUITES = {
    "lemmas": _suite_lemmas,
    "proposition": _suite_proposition,
    "chain-rule": _suite_chain_rule,
    "tables": _suite_tables,
    "bijection": _suite_bijection,
}


def cmd_verify(args) -> int:
    cap = configured_cap()
    names = list(SUITES) if args.suite == "all" else [args.suite]
    failures = 0
    for name in names:
        order = args.order
        if name == "chain-rule":
            order = max(order, 6)
        if name == "bijection":
            order = min(args.order, 6) if args.suite != "all" else 6
        started = time.perf_counter()
        for label, ok, detail in SUITES[name](order, cap):
            status = "PASS" if ok else "FAIL"
            suffix = f"  [{detail}]" if detail and not ok else ""
            print(f"{status} {label}{suffix}")
            if not ok:
                failures += 1
        elapsed = time.perf_counter() - started
        print(f"suite {name}: done in {elapsed:.2f}s")
    return 1 if failures else 0


# -- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chorddiag",
        description=(
            "Exact enumeration of rooted chord diagrams by connectivity, the "
            "series relations between the classes, their asymptotic expansions, "
            "and the correspondence with photon-decorated fermion paths."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("series", help="print a counting series")
    p.add_argument("--family", required=True, choices=sorted(gf.FAMILIES))
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    p.add_argument("--format", choices=["json", "csv", "plain"], default="plain")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("enumerate", help="enumerate diagrams or count a class")
    p.add_argument("--chords", type=int, required=True)
    p.add_argument("--class", dest="cls", default="all")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--format", choices=["json", "csv", "plain"], default="plain")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=[*SUITES, "all"], required=True)
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("alien", help="asymptotic-expansion image of a family")
    p.add_argument("--family", choices=["C", "C2"], required=True)
    p.add_argument("--order", type=int, default=5)
    p.add_argument("--format", choices=["json", "csv", "plain"], default="json")
    p.set_defaults(func=cmd_alien)

    p = sub.add_parser("estimate", help="asymptotic estimates vs exact counts")
    p.add_argument("--family", choices=["C", "C2"], default="C2")
    p.add_argument("--terms", type=int, default=6)
    p.add_argument("--n-from", type=int, required=True)
    p.add_argument("--n-to", type=int, required=True)
    p.add_argument("--digits", type=int, default=DEFAULT_DIGITS)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("qft", help="partition functions and graph images")
    p.add_argument("--model", choices=["phi3"], default="phi3")
    p.add_argument("--quadratic", default="1", help="quadratic coefficient a")
    p.add_argument(
        "--coupling",
        action="append",
        default=[],
        metavar="K=RATIONAL",
        help="potential coupling at valency K (repeatable)",
    )
    p.add_argument("--order", type=int, default=10)
    p.add_argument("--graph-of", metavar="DIAGRAM", help='diagram text, e.g. "2: 3 4 1 2"')
    p.add_argument("--format", choices=["json", "csv", "plain"], default="plain")
    p.set_defaults(func=cmd_qft)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
