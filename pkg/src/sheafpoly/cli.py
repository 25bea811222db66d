"""Command-line surface: compute, invert, verify.

Exit codes: 0 all good, 1 a check failed, 2 bad input, 3 a runtime identity
was falsified (the scientifically interesting outcome, hence its own code).
All output is byte-deterministic for a fixed invocation: keys are sorted,
rows are ordered by degree, and big integers are emitted as decimal strings.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from math import gcd

from . import asymptotics, recursion, solver
from .errors import InputError, MissingRefinedDataError, PipelineError
from .exactalg import HalfLaurent
from .gvdata import (GVTable, bundled_gv_table, bundled_reduced_rows, load_gv_file,
                     load_reduced_file, reduced_rows_to_json)

ALL_CHECKS = ("leading", "nextorder", "lowrange", "gv-window", "xy-bounds",
              "3d-divisibility", "bracket", "euler", "recursion", "stack",
              "gmr", "hdesc", "href")
REFINED_CHECKS = ("refined-recursion",)


def _write_out(text: str, out_path: str | None):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def _emit_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# -- compute -----------------------------------------------------------------

def _record_doc(rec: solver.PoincareRecord) -> dict:
    lo = -(rec.d * rec.d + 1)
    shifted = [str(int(rec.shifted.coeff(lo + 2 * j).re))
               for j in range(rec.d * rec.d + 2)]
    return {"d": rec.d,
            "genus": (rec.d - 1) * (rec.d - 2) // 2,
            "euler": str(rec.euler()),
            "reduced": [str(c) for c in rec.reduced],
            "shifted_low_halfexp": lo,
            "shifted": shifted}


def cmd_compute(args) -> int:
    gv = load_gv_file(args.gv) if args.gv else bundled_gv_table()
    dmax = args.dmax or gv.max_degree()
    records = solver.compute_table(gv, dmax, method=args.method)
    failures = []
    if args.golden:
        golden = load_reduced_file(args.golden)
        for d in range(1, dmax + 1):
            if d in golden and golden[d] != records[d].reduced:
                failures.append(d)
    docs = [_record_doc(records[d]) for d in sorted(records)]
    if args.format == "json":
        doc = {"command": "compute", "dmax": dmax, "method": args.method, "rows": docs}
        if args.golden:
            doc["golden_mismatches"] = failures
        text = _emit_json(doc)
    elif args.format == "csv":
        rows = []
        for rdoc in docs:
            for j, c in enumerate(rdoc["reduced"]):
                rows.append([rdoc["d"], "reduced", j, 2 * j, c])
            for j, c in enumerate(rdoc["shifted"]):
                rows.append([rdoc["d"], "shifted", j, rdoc["shifted_low_halfexp"] + 2 * j, c])
        text = _emit_csv(["d", "series", "index", "halfexp", "coeff"], rows)
    else:
        lines = []
        for rdoc in docs:
            lines.append(f"d={rdoc['d']}  euler={rdoc['euler']}  "
                         f"reduced=[{', '.join(rdoc['reduced'])}]")
        if args.golden:
            lines.append("golden mismatches: " + (str(failures) if failures else "none"))
        text = "\n".join(lines) + "\n"
    _write_out(text, args.out)
    return 1 if failures else 0


# -- invert ------------------------------------------------------------------

def cmd_invert(args) -> int:
    rows = load_reduced_file(args.golden) if args.golden else bundled_reduced_rows()
    if args.dmax:
        rows = {d: r for d, r in rows.items() if d <= args.dmax}
    if not rows:
        raise InputError("no reduced rows at or below the requested degree")
    gv = solver.invert_table(rows, method=args.method)
    if args.format == "json":
        text = _emit_json(gv.to_json_dict())
    elif args.format == "csv":
        entries = gv.to_json_dict()["entries"]
        text = _emit_csv(["d", "g", "n"], [[e["d"], e["g"], e["n"]] for e in entries])
    else:
        lines = [f"n(g={e['g']}, d={e['d']}) = {e['n']}" for e in gv.to_json_dict()["entries"]]
        text = "\n".join(lines) + "\n"
    _write_out(text, args.out)
    return 0


# -- verify ------------------------------------------------------------------

def _cyclotomic_divisibility_report(d: int, reduced) -> asymptotics.CheckReport:
    h = HalfLaurent.from_y_coeffs(reduced)
    try:
        q = h.exact_div(HalfLaurent.from_y_coeffs([1, 1, 1]))
        ok = q.is_integral() and q.is_palindromic() is not None
    except PipelineError:
        ok = False
    return asymptotics.CheckReport("3d-divisibility", d, 2, ok,
                                   note="reduced row divisible by 1+y+y^2")


def _run_checks(checks, rows, gv, quotients, trunc, refined_polys):
    reports = []
    dmax = max(rows)
    for name in checks:
        if name == "leading":
            for d in range(6, dmax + 1):
                reports.append(asymptotics.leading_window_check(d, rows[d]))
                reports.append(asymptotics.leading_window_check(d, rows[d], extended=True))
        elif name == "nextorder":
            for d in range(4, dmax + 1):
                reports.append(asymptotics.second_window_check(d, rows[d]))
        elif name == "lowrange":
            for d in range(5, dmax + 1):
                reports.append(asymptotics.low_window_check(d, rows[d]))
        elif name == "gv-window":
            for d in range(1, dmax + 1):
                reports.extend(asymptotics.gv_window_check(d, gv, trunc))
        elif name == "xy-bounds":
            for d in range(1, dmax + 1):
                reports.append(asymptotics.leading_residual_check(d, gv, quotients))
                reports.append(asymptotics.subleading_residual_check(d, gv, quotients))
        elif name == "3d-divisibility":
            for d in range(3, dmax + 1, 3):
                reports.append(_cyclotomic_divisibility_report(d, rows[d]))
        elif name == "bracket":
            for d in range(1, dmax + 1):
                ok = solver.bracket_is_integral(d, gv, quotients[d])
                reports.append(asymptotics.CheckReport("bracket", d, 0, ok))
        elif name == "euler":
            for d in range(1, dmax + 1):
                rec = solver.record_from_reduced(d, rows[d])
                ok = rec.euler() == 3 * d * sum(rows[d])
                reports.append(asymptotics.CheckReport("euler", d, 0, ok))
        elif name == "recursion":
            for d in range(4, dmax + 1):
                ptable = {dd: recursion.full_poincare(dd, rows[dd], 3 * (d - 3))
                          for dd in rows}
                reports.append(recursion.recursion_check(d, 2, ptable))
        elif name == "stack":
            reports.append(_stack_pinned_report(rows, trunc))
        elif name == "gmr":
            for d in range(1, dmax + 1):
                direct, closed = recursion.relation_degree_series(d, trunc)
                reports.append(asymptotics.window_report("gmr", d, direct, closed, trunc))
        elif name == "hdesc":
            lhs = recursion.descendent_series(trunc)
            rhs = recursion.descendent_count_oracle(trunc)
            reports.append(asymptotics.window_report("hdesc", None, lhs, rhs, trunc))
        elif name == "href":
            reports.extend(_refined_identity_reports(trunc))
        elif name == "refined-recursion":
            if not refined_polys:
                raise MissingRefinedDataError("refined-recursion requires --refined data")
            for d in sorted(refined_polys):
                if d > 2 and d - 1 in refined_polys and 1 in refined_polys:
                    reports.append(recursion.refined_recursion_check(d, 1, refined_polys))
        else:
            raise InputError(f"unknown check name {name!r}")
    return reports


def _stack_pinned_report(rows, trunc) -> asymptotics.CheckReport:
    from .exactalg import TwoVarSeries, product_expand
    order = trunc
    ptable = {d: recursion.full_poincare(d, rows[d], order) for d in rows if d <= 2}
    got = recursion.stack_series(2, 0, ptable, order)
    num1 = TwoVarSeries.y_series(order, [1, 1, 1])
    num2 = TwoVarSeries.y_series(order, [1, 0, 1, 1, 1, -1])
    expected = num1 * num2 * product_expand([(1, -1), (2, -1)], order)
    return asymptotics.window_report("stack", 2, got, expected, order,
                                     note="pinned gcd-2 stack closed form")


def _refined_identity_reports(trunc) -> list:
    reports = []
    href = recursion.refined_descendent_series(2 * trunc).specialize_sqrt()
    h = recursion.descendent_series(trunc)
    reports.append(asymptotics.window_report("href-spec", None, href, h, trunc))
    from .exactalg import TwoVarSeries, geometric_series, product_expand
    f1ref = recursion.first_refined_correction(2 * trunc + 2).specialize_sqrt()
    f1 = (TwoVarSeries.y_series(trunc + 1, [1, 1, 1])
          * geometric_series(1, trunc + 1)).scale(-3)
    y_f1 = TwoVarSeries.monomial(("y",), trunc + 1, (1,)) * f1
    reports.append(asymptotics.window_report("href-corr1", None, f1ref.truncate(trunc),
                                             y_f1.truncate(trunc), trunc))
    return reports


def cmd_verify(args) -> int:
    rows = load_reduced_file(args.golden) if args.golden else bundled_reduced_rows()
    if args.dmax:
        rows = {d: r for d, r in rows.items() if d <= args.dmax}
    if sorted(rows) != list(range(1, max(rows) + 1)):
        raise InputError("verify needs contiguous reduced rows 1..D")
    gv = load_gv_file(args.gv) if args.gv else solver.invert_table(rows)
    quotients = {d: solver.reduced_to_quotient(d, rows[d]) for d in rows}
    refined_polys = None
    if args.refined:
        refined_polys = recursion.load_refined_file(args.refined, 4 * max(rows))
        for d, poly in sorted(refined_polys.items()):
            if d in rows:
                rep = recursion.validate_refined_specialization(d, poly, rows[d], 3 * d - 1)
                if not rep.passed:
                    raise InputError(f"refined data for degree {d} fails specialization")
    if args.check == "all":
        checks = list(ALL_CHECKS) + (list(REFINED_CHECKS) if refined_polys else [])
    else:
        checks = [c.strip() for c in args.check.split(",") if c.strip()]
    reports = _run_checks(checks, rows, gv, quotients, args.trunc, refined_polys)
    all_passed = all(r.passed for r in reports)
    if args.format == "json":
        text = _emit_json({"command": "verify", "passed": all_passed,
                           "reports": [r.to_json_dict() for r in reports]})
    elif args.format == "csv":
        rows_out = [[r.name, r.d if r.d is not None else "", r.through, r.passed,
                     r.first_bad if r.first_bad is not None else "",
                     r.lhs or "", r.rhs or "", r.note] for r in reports]
        text = _emit_csv(["check", "d", "through", "passed", "first_bad",
                          "lhs", "rhs", "note"], rows_out)
    else:
        lines = []
        for r in reports:
            where = f" d={r.d}" if r.d is not None else ""
            if r.passed:
                lines.append(f"PASS {r.name}{where} (through y^{r.through})")
            else:
                lines.append(f"FAIL {r.name}{where} at y^{r.first_bad}: "
                             f"{r.lhs} != {r.rhs}")
        lines.append(f"{'all checks passed' if all_passed else 'CHECK FAILURES PRESENT'}")
        text = "\n".join(lines) + "\n"
    _write_out(text, args.out)
    return 0 if all_passed else 1


# -- entry -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sheafpoly",
                                description="Exact Poincare-polynomial pipeline for "
                                            "one-dimensional sheaf moduli on the plane.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--gv", help="BPS table JSON (default: bundled degrees 1..6)")
        sp.add_argument("--golden", help="reduced-polynomial table JSON")
        sp.add_argument("--dmax", type=int, help="largest degree to process")
        sp.add_argument("--method", default="functional",
                        choices=("functional", "trees", "both"))
        sp.add_argument("--format", default="text", choices=("json", "csv", "text"))
        sp.add_argument("--out", help="output path (default stdout)")

    sp = sub.add_parser("compute", help="solve shifted Poincare polynomials from a BPS table")
    common(sp)

    sp = sub.add_parser("invert", help="recover the BPS table from reduced rows")
    common(sp)

    sp = sub.add_parser("verify", help="run truncated identity checks")
    common(sp)
    sp.add_argument("--check", default="all",
                    help="comma-separated check names or 'all' "
                         f"(known: {', '.join(ALL_CHECKS + REFINED_CHECKS)})")
    sp.add_argument("--trunc", type=int, default=40, help="series truncation order")
    sp.add_argument("--refined", help="refined polynomial data JSON")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "compute":
            return cmd_compute(args)
        if args.command == "invert":
            return cmd_invert(args)
        return cmd_verify(args)
    except (InputError, MissingRefinedDataError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except PipelineError as exc:
        print(f"identity violation: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
