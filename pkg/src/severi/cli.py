"""Command-line front end.

    severi example ex3.1 --q 3 --d 8
    severi classify spec.json --format json
    severi sweep --family ex3.1 --q 3 5 --d 1 1 --d-relative --format csv
    severi check-product action.json
    severi resolve forest.json

Exit codes: 0 success, 2 unknown command or family, 3 invalid parameters,
4 unreadable or malformed input, 5 semantic validation failure. When
``SEVERI_OUTPUT_DIR`` is set, every report is also written there.
"""
from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from severi.classifier import (CoverSpec, NineHalves, TargetKind, albanese_rule, cover_invariants,
                               gap_ledger, general_type_bound_check, regime_check, severi_gap)
from severi.equivariant import InvalidActionError, check_product_triviality, verify_witness
from severi.families import (FAMILIES, SWEEP_FAMILIES, ExampleData, ParameterError,
                             UnknownFamilyError, generate_example)
from severi.formats import (SWEEP_FORMAT_VERSION, SWEEP_HEADER, ParseError, cover_spec_to_obj,
                            dumps_json, general_type_to_obj, invariants_to_obj, ledger_to_obj,
                            load_json, parse_action_doc, parse_cover_spec, parse_forest_doc,
                            render_csv, render_rows_table, render_table, resolution_to_obj,
                            verdict_to_obj)
from severi.lattice import ProductSurface
from severi.resolution import SingNode, forest_to_obj, resolve

EXIT_OK, EXIT_UNKNOWN, EXIT_PARAMS, EXIT_PARSE, EXIT_SEMANTIC = 0, 2, 3, 4, 5
OUTPUT_DIR_ENV = "SEVERI_OUTPUT_DIR"
EXT = {"table": "txt", "json": "json", "csv": "csv"}


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _spec_summary(spec: CoverSpec, forest=(), branch=None) -> dict:
    inv = cover_invariants(spec)
    out = {
        "invariants": invariants_to_obj(inv),
        "K2_minus_4chi": inv.K2 - 4 * inv.chi,
        "severi_gap": severi_gap(inv),
        "nine_halves": regime_check(inv).value,
        "albanese": albanese_rule(ramified=spec.R2 != 0 or spec.KYdotR != 0, q_equal=True).value,
        "spec": cover_spec_to_obj(spec, forest),
    }
    if spec.target.kind is TargetKind.GENERAL_TYPE:
        if branch is not None:
            out["general_type"] = general_type_to_obj(general_type_bound_check(spec, branch))
    else:
        out["ledger"] = ledger_to_obj(gap_ledger(spec))
    return out


def example_report(ex: ExampleData) -> dict:
    out: dict = {"example": ex.name, "params": dict(ex.params), "realizability": ex.realizability}
    if ex.spec is None:
        inv = ex.expected
        out.update({
            "invariants": invariants_to_obj(inv),
            "K2_minus_4chi": inv.K2 - 4 * inv.chi,
            "severi_gap": severi_gap(inv),
            "nine_halves": regime_check(inv).value,
        })
        out["matches_closed_form"] = True
        return out
    forest = [SingNode(2 * m) for m in ex.spec.resolution.m_list]
    branch = "severi-line" if ex.spec.target.kind is TargetKind.GENERAL_TYPE else None
    out.update(_spec_summary(ex.spec, forest, branch))
    out["matches_closed_form"] = cover_invariants(ex.spec) == ex.expected
    if ex.action is not None:
        S = ProductSurface(genus_C=2 * (ex.spec.q - 2) + 1, E_points=ex.action.E_points)
        v = check_product_triviality(S, ex.action)
        out["product_check"] = verdict_to_obj(v, None)
    return out


def _example_row(ex: ExampleData) -> list:
    p = dict(ex.params)
    if ex.spec is None:
        inv, regime = ex.expected, "n/a"
    else:
        inv = cover_invariants(ex.spec)
        regime = "n/a" if ex.spec.target.kind is TargetKind.GENERAL_TYPE else gap_ledger(ex.spec).regime.value
    return [inv.q, p.get("d"), inv.K2, inv.chi, severi_gap(inv), regime,
            regime_check(inv) is NineHalves.BELOW]


def _emit(fmt: str, report: dict | None = None, header=None, rows=None) -> str:
    if fmt == "json":
        return dumps_json(report)
    if fmt == "csv":
        return render_csv(header, rows)
    if report is not None:
        return render_table(report)
    return render_rows_table(header, rows)


def _read(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise CliError(EXIT_PARSE, f"cannot read {path}: {exc}")
    try:
        return load_json(text)
    except ParseError as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc}")


def cmd_example(args) -> str:
    try:
        ex = generate_example(args.name, q=args.q, d=args.d, R2=args.r2, gB=args.genus_b,
                              require_below_nine_halves=args.require_below_nine_halves)
    except UnknownFamilyError:
        raise CliError(EXIT_UNKNOWN, f"unknown example {args.name!r}; known: {', '.join(FAMILIES)}")
    except ParameterError as exc:
        raise CliError(EXIT_PARAMS, str(exc))
    if args.format == "csv":
        return _emit("csv", header=SWEEP_HEADER, rows=[_example_row(ex)])
    return _emit(args.format, example_report(ex))


def cmd_classify(args) -> str:
    doc = _read(args.specfile)
    try:
        spec, res = parse_cover_spec(doc)
    except ParseError as exc:
        raise CliError(EXIT_PARSE, str(exc))
    except ValueError as exc:
        raise CliError(EXIT_SEMANTIC, str(exc))
    branch = args.branch or (doc.get("branch") if isinstance(doc, dict) else None)
    if spec.target.kind is TargetKind.GENERAL_TYPE and branch is None:
        raise CliError(EXIT_SEMANTIC, "general type target: declare 'branch' (severi-line or nine-halves)")
    forest = [_node(o) for o in res["forest"]]
    try:
        report = _spec_summary(spec, forest, branch)
    except ValueError as exc:
        raise CliError(EXIT_SEMANTIC, str(exc))
    if args.format == "csv":
        inv = report["invariants"]
        regime = report.get("ledger", {}).get("regime", "n/a")
        row = [inv["q"], None, inv["K2"], inv["chi"], report["severi_gap"], regime,
               report["nine_halves"] == NineHalves.BELOW.value]
        return _emit("csv", header=SWEEP_HEADER, rows=[row])
    return _emit(args.format, report)


def _node(obj) -> SingNode:
    return SingNode(obj["d"], tuple(_node(c) for c in obj["children"]))


def sweep_row(family: str, q: int, d: int) -> list:
    ex = generate_example(family, q=q, d=d)
    inv = cover_invariants(ex.spec)
    ledger = gap_ledger(ex.spec)
    return [q, d, inv.K2, inv.chi, severi_gap(inv), ledger.regime.value,
            regime_check(inv) is NineHalves.BELOW]


def _sweep_task(t):
    return sweep_row(*t)


def cmd_sweep(args) -> str:
    if args.family not in FAMILIES:
        raise CliError(EXIT_UNKNOWN, f"unknown family {args.family!r}")
    if args.family not in SWEEP_FAMILIES:
        raise CliError(EXIT_PARAMS, f"family {args.family} has no (q, d) parameters; sweepable: "
                       + ", ".join(SWEEP_FAMILIES))
    (qlo, qhi), (dlo, dhi) = args.q, args.d
    if qlo > qhi or dlo > dhi:
        raise CliError(EXIT_PARAMS, "empty parameter range")
    tasks = []
    for q in range(qlo, qhi + 1):
        shift = 7 * (q - 2) if args.d_relative else 0
        tasks += [(args.family, q, shift + d) for d in range(dlo, dhi + 1)]
    try:
        if args.jobs > 1:
            with ProcessPoolExecutor(args.jobs) as pool:
                rows = list(pool.map(_sweep_task, tasks))
        else:
            rows = [_sweep_task(t) for t in tasks]
    except ParameterError as exc:
        raise CliError(EXIT_PARAMS, str(exc))
    if args.format == "json":
        report = {"format_version": SWEEP_FORMAT_VERSION, "family": args.family,
                  "rows": [dict(zip(SWEEP_HEADER, r)) for r in rows]}
        return dumps_json(report)
    return _emit(args.format, header=SWEEP_HEADER, rows=rows)


def cmd_check_product(args) -> str:
    doc = _read(args.actionfile)
    try:
        S, A, cands = parse_action_doc(doc)
        v = check_product_triviality(S, A, cands)
    except ParseError as exc:
        raise CliError(EXIT_PARSE, str(exc))
    except (InvalidActionError, ValueError) as exc:
        raise CliError(EXIT_SEMANTIC, str(exc))
    verified = verify_witness(A, v.witness) if v.witness is not None else None
    report = verdict_to_obj(v, verified)
    if args.format == "csv":
        f = report["witness"]["f"] if report["witness"] else None
        return _emit("csv", header=("verdict", "f", "verified"), rows=[[v.verdict.value, f, verified]])
    return _emit(args.format, report)


def cmd_resolve(args) -> str:
    doc = _read(args.forestfile)
    try:
        forest, n = parse_forest_doc(doc)
    except ParseError as exc:
        raise CliError(EXIT_PARSE, str(exc))
    try:
        rep = resolve(forest, n, check_proximity=args.check_proximity)
    except ValueError as exc:
        raise CliError(EXIT_SEMANTIC, str(exc))
    report = {"forest": forest_to_obj(forest), **resolution_to_obj(rep)}
    if args.format == "csv":
        header = ("m_list", "sum_sq", "sum_tri", "sum_lin", "negligible", "n_blowdowns")
        return _emit("csv", header=header, rows=[[report[k] for k in header]])
    if args.format == "table":
        report["forest"] = f"{len(forest)} root(s), {sum(t.size() for t in forest)} point(s)"
    return _emit(args.format, report)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="severi", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp):
        sp.add_argument("--format", choices=("table", "json", "csv"), default="table")

    ex = sub.add_parser("example", help="generate a worked example and its invariants")
    ex.add_argument("name")
    ex.add_argument("--q", type=int)
    ex.add_argument("--d", type=int)
    ex.add_argument("--r2", type=int, help="R^2 for ex3.4")
    ex.add_argument("--genus-b", type=int, help="g(B) for rem4.1-AxB")
    ex.add_argument("--require-below-nine-halves", action="store_true")
    fmt(ex)
    ex.set_defaults(func=cmd_example)

    cl = sub.add_parser("classify", help="invariants and Severi-line regime of a cover spec")
    cl.add_argument("specfile")
    cl.add_argument("--branch", choices=("severi-line", "nine-halves"))
    fmt(cl)
    cl.set_defaults(func=cmd_classify)

    sw = sub.add_parser("sweep", help="tabulate a family over a (q, d) grid")
    sw.add_argument("--family", required=True)
    sw.add_argument("--q", nargs=2, type=int, required=True, metavar=("LO", "HI"))
    sw.add_argument("--d", nargs=2, type=int, required=True, metavar=("LO", "HI"))
    sw.add_argument("--d-relative", action="store_true", help="d range is an offset from 7(q-2)")
    sw.add_argument("--jobs", type=int, default=1)
    fmt(sw)
    sw.set_defaults(func=cmd_sweep, format="csv")

    cp = sub.add_parser("check-product", help="decide whether (C x E)/G is a product")
    cp.add_argument("actionfile")
    fmt(cp)
    cp.set_defaults(func=cmd_check_product)

    rs = sub.add_parser("resolve", help="canonical resolution sums for a singularity forest")
    rs.add_argument("forestfile")
    rs.add_argument("--check-proximity", action="store_true")
    fmt(rs)
    rs.set_defaults(func=cmd_resolve)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    sys.stdout.write(text)
    outdir = os.environ.get(OUTPUT_DIR_ENV)
    if outdir:
        path = Path(outdir) / f"{args.command}.{EXT[args.format]}"
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
