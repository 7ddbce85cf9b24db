"""Command-line front end: ``cesaro-lab <subcommand> ...``.

Every subcommand builds a JSON-ready report document.  Exact values are
written as "p/q" strings; floats appear only in the defect section, which is
marked approximate.  Exit status: 0 when every check passed, 1 when a
mathematical check failed, 2 for usage or domain errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from . import __version__
from .cesaro import CesaroMatrix, ParameterDomainError, check_alpha, self_test
from .exactnum import Domain, RealRoot, UniPoly, parse_domain
from .interrupters import SymbolicCornerError, fixture_q_order3, solve_corner
from .normality import (
    DEFAULT_DOMAIN,
    AlphaRangeReport,
    finite_section_defect,
    hyponormality_range,
    order3_determinant_regression,
    posinormal_coposinormal_range,
    q_minors_symbolic,
    shifted_minors_regression,
    verify_supraposinormal,
)
from .telescope import AnsatzFailure, TelescopeForm, order3_telescope_regression, solve_telescope

SCHEMA = "cesaro-lab/1"
DEFECT_TOLERANCE = 1e-9

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

log = logging.getLogger("cesaro_lab")


class UsageError(ValueError):
    """Bad command-line input."""


# -- parsing ------------------------------------------------------------------

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")
_DECIMAL_RE = re.compile(r"^[+-]?(\d+\.\d*|\.\d+)$")


def parse_alpha(text: str) -> Fraction:
    """Exact α from "p/q", an integer or a plain decimal; exponents, nan and inf are refused."""
    s = text.strip()
    if not (_RATIONAL_RE.match(s) or _DECIMAL_RE.match(s)):
        raise UsageError(f"cannot read {text!r} as an exact rational (use p/q or a plain decimal)")
    try:
        value = Fraction(s)
    except ZeroDivisionError:
        raise UsageError(f"zero denominator in {text!r}") from None
    return check_alpha(value)


def parse_alpha_list(text: str) -> List[Fraction]:
    items = [t for t in text.split(",") if t.strip()]
    if not items:
        raise UsageError("no α values given")
    return [parse_alpha(t) for t in items]


def parse_orders(text: str) -> List[int]:
    out = []
    for t in text.split(","):
        t = t.strip()
        if not re.fullmatch(r"\d+", t):
            raise UsageError(f"order must be a positive integer, got {t!r}")
        k = int(t)
        if k < 1:
            raise UsageError("order must be at least 1")
        out.append(k)
    if not out:
        raise UsageError("no orders given")
    return out


def _positive_int(text: str) -> int:
    if not re.fullmatch(r"\d+", text.strip()):
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return value


# -- serialization --------------------------------------------------------------

def rat(x: Fraction) -> str:
    return str(Fraction(x))


def poly_coeffs(p: UniPoly) -> List[str]:
    """Coefficients, constant term first."""
    return [rat(c) for c in p.coeffs]


def root_json(r: Optional[RealRoot]) -> Optional[Dict[str, Any]]:
    if r is None:
        return None
    if r.is_exact:
        return {"exact": rat(r.value)}
    return {"root_of": poly_coeffs(r.poly), "lo": rat(r.lo), "hi": rat(r.hi)}


def range_json(report: AlphaRangeReport) -> Dict[str, Any]:
    return {
        "label": report.label,
        "condition": report.condition,
        "domain": str(report.domain),
        "display": str(report),
        "unbounded": report.unbounded,
        "pieces": [
            {"lo": root_json(p.lo), "hi": root_json(p.hi), "lo_closed": p.lo_closed, "hi_closed": p.hi_closed}
            for p in report.pieces
        ],
    }


def block_json(block) -> List[List[str]]:
    return [[rat(x) for x in row] for row in block]


def dump_json(doc: Dict[str, Any]) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def dump_csv(header: Sequence[Any], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


class Report:
    """A report document plus the CSV table and pretty text derived from it."""

    def __init__(self, command: str, config: Dict[str, Any], results: Any, passed: Optional[bool],
                 table: Tuple[Sequence[Any], List[Sequence[Any]]], pretty: str):
        self.command = command
        self.config = config
        self.results = results
        self.passed = passed
        self.table = table
        self.pretty = pretty

    @property
    def verdict(self) -> str:
        if self.passed is None:
            return "reported"
        return "pass" if self.passed else "fail"

    def document(self, meta: bool) -> Dict[str, Any]:
        doc: Dict[str, Any] = {
            "schema": SCHEMA,
            "tool": {"name": "cesaro-lab", "version": __version__},
            "command": self.command,
            "config": self.config,
            "results": self.results,
            "verdict": self.verdict,
        }
        if meta:
            doc["meta"] = {"generated": datetime.now(timezone.utc).isoformat(timespec="seconds")}
        return doc

    def render(self, fmt: str, meta: bool) -> str:
        if fmt == "json":
            return dump_json(self.document(meta))
        if fmt == "csv":
            return dump_csv(*self.table)
        return self.pretty.rstrip("\n") + f"\nverdict: {self.verdict}\n"


def _run_jobs(fn: Callable, jobs: List[tuple], workers: int) -> List[Any]:
    """Run independent jobs, returning results in job order."""
    if workers <= 1 or len(jobs) <= 1:
        return [fn(*job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, *zip(*jobs)))


# -- entries ------------------------------------------------------------------------

def cmd_entries(args) -> Report:
    m = CesaroMatrix(args.order, args.alpha)
    rows = [[rat(x) for x in row] for row in m.truncate(args.n).rows]
    config = {"order": args.order, "alpha": rat(args.alpha), "n": args.n}
    width = max(len(c) for row in rows for c in row)
    pretty = "\n".join(" ".join(c.rjust(width) for c in row) for row in rows)
    return Report("entries", config, {"matrix": rows}, True, (list(range(args.n)), rows), pretty)


# -- verify ---------------------------------------------------------------------------

def _verify_job(k: int, alpha: Fraction, n_check: int, corner: str) -> Dict[str, Any]:
    rep = verify_supraposinormal(k, alpha, n_check, corner)
    mismatch = None
    if rep.mismatch is not None:
        mm = rep.mismatch
        mismatch = {"i": mm.i, "j": mm.j, "lhs": rat(mm.lhs), "rhs": rat(mm.rhs)}
    return {
        "order": k,
        "alpha": rat(alpha),
        "status": rep.status,
        "provenance": rep.provenance,
        "corner_size": rep.corner_size,
        "n_check": rep.n_check,
        "mismatch": mismatch,
        "escalations": list(rep.escalations),
    }


def _verify_rows(items: List[Dict[str, Any]]):
    header = ["order", "alpha", "status", "provenance", "corner_size", "mismatch_i", "mismatch_j", "escalations"]
    rows = []
    for it in items:
        mm = it["mismatch"] or {}
        rows.append([it["order"], it["alpha"], it["status"], it["provenance"], it["corner_size"],
                     mm.get("i", ""), mm.get("j", ""), "; ".join(it["escalations"])])
    return header, rows


def _verify_pretty(items: List[Dict[str, Any]]) -> str:
    lines = []
    for it in items:
        line = f"order {it['order']}  alpha {it['alpha']}: {it['status']} ({it['provenance']} corner, size {it['corner_size']})"
        if it["mismatch"]:
            mm = it["mismatch"]
            line += f"  first mismatch at ({mm['i']}, {mm['j']}): {mm['lhs']} vs {mm['rhs']}"
        for note in it["escalations"]:
            line += f"\n    escalation: {note}"
        lines.append(line)
    return "\n".join(lines)


def cmd_verify(args) -> Report:
    if args.corner == "fixture" and args.order != 3:
        raise UsageError("the explicit corner exists for order 3 only")
    jobs = [(args.order, a, args.n, args.corner) for a in sorted(set(args.alpha))]
    items = _run_jobs(_verify_job, jobs, args.jobs)
    config = {"order": args.order, "alpha": [rat(a) for a in sorted(set(args.alpha))], "n_check": args.n,
              "corner": args.corner}
    passed = all(it["status"] == "verified" for it in items)
    return Report("verify", config, {"identity_reports": items}, passed, _verify_rows(items), _verify_pretty(items))


# -- telescope ------------------------------------------------------------------------

def _telescope_json(form: TelescopeForm) -> Dict[str, Any]:
    return {
        "order": form.order,
        "denominator_factors": form.denominator_count,
        "numerator_degree": form.numerator_degree,
        "coefficients": [str(c) for c in form.coefficients],
        "s": f"({form.numerator()}) / " + "".join(f"({f})" for f in form.factors()),
        "s0": str(form.at_zero().num) + " / " + "".join(f"({f})" for f in form.factors()),
        "degree_guard": form.degree_guard(),
        "escalated": form.denominator_count != 2 * form.order - 1,
    }


def cmd_telescope(args) -> Report:
    k = args.order
    try:
        form = solve_telescope(k)
    except AnsatzFailure as exc:
        results = {"order": k, "error": str(exc)}
        return Report("telescope", {"order": k}, results, False, (["order", "error"], [[k, str(exc)]]),
                      f"order {k}: {exc}")
    results = _telescope_json(form)
    passed = results["degree_guard"]
    if k == 3:
        regression = order3_telescope_regression()
        results["regression"] = regression
        passed = passed and all(regression.values())
    rows = [[m, c] for m, c in enumerate(results["coefficients"])]
    pretty = [f"order {k}: s(t) = {results['s']}"]
    pretty += [f"  t^{m}: {c}" for m, c in rows]
    pretty.append(f"  degree guard: {'pass' if results['degree_guard'] else 'fail'}")
    if "regression" in results:
        ok = all(results["regression"].values())
        pretty.append(f"  explicit-form regression: {'pass' if ok else 'fail'} {results['regression']}")
    return Report("telescope", {"order": k}, results, passed, (["power", "coefficient"], rows), "\n".join(pretty))


# -- ranges ---------------------------------------------------------------------------

def _ranges_for(k: int, domain: Domain) -> Dict[str, Any]:
    pd = posinormal_coposinormal_range(k, domain)
    psd = hyponormality_range(k, domain)
    return {"posinormal_coposinormal": range_json(pd), "hyponormal_sufficient": range_json(psd)}


def _minors_json(k: int, shift: int) -> List[Dict[str, Any]]:
    return [{"indices": list(m.indices), "coefficients": poly_coeffs(m.poly)} for m in q_minors_symbolic(k, shift)]


def cmd_ranges(args) -> Report:
    k = args.order
    results: Dict[str, Any] = {"order": k}
    try:
        results.update(_ranges_for(k, args.domain))
        results["minors"] = _minors_json(k, 0)
        results["shifted_minors"] = _minors_json(k, 1)
    except (AnsatzFailure, SymbolicCornerError) as exc:
        results["error"] = str(exc)
        return Report("ranges", {"order": k, "domain": str(args.domain)}, results, False,
                      (["order", "error"], [[k, str(exc)]]), f"order {k}: {exc}")
    passed: Optional[bool] = None
    if k == 3:
        results["regression"] = {
            "determinants": order3_determinant_regression(),
            "shifted_determinants": shifted_minors_regression(),
        }
        passed = all(results["regression"].values())
    pdr, psr = results["posinormal_coposinormal"], results["hyponormal_sufficient"]
    rows = [[r["label"], r["condition"], r["display"], r["unbounded"]] for r in (pdr, psr)]
    pretty = [f"order {k} on {args.domain}:"]
    for r in (pdr, psr):
        flag = "  (continues past the domain)" if r["unbounded"] else ""
        pretty.append(f"  {r['label']}: {r['display']}{flag}")
    if "regression" in results:
        pretty.append(f"  determinant regressions: {results['regression']}")
    return Report("ranges", {"order": k, "domain": str(args.domain)}, results, passed,
                  (["label", "condition", "range", "unbounded"], rows), "\n".join(pretty))


# -- conjecture ---------------------------------------------------------------------------

def _conjecture_job(k: int, alpha: Fraction, n_check: int) -> Dict[str, Any]:
    item = _verify_job(k, alpha, n_check, "solved")
    corner = solve_corner(k, alpha, item["corner_size"])
    item["corner"] = block_json(corner.block)
    if k == 3:
        item["fixture_match"] = corner.block == fixture_q_order3(alpha).block
    return item


def _order_section(k: int, alphas: List[Fraction], n_check: int, domain: Domain, workers: int) -> Dict[str, Any]:
    section: Dict[str, Any] = {"order": k}
    try:
        section["telescope"] = _telescope_json(solve_telescope(k))
    except AnsatzFailure as exc:
        section["telescope"] = {"order": k, "error": str(exc)}
        section["escalations"] = [str(exc)]
        section["identity_reports"] = []
        return section
    section["identity_reports"] = _run_jobs(_conjecture_job, [(k, a, n_check) for a in alphas], workers)
    try:
        section.update(_ranges_for(k, domain))
    except SymbolicCornerError as exc:
        section["range_error"] = str(exc)
    return section


def _summary_row(section: Dict[str, Any]) -> List[Any]:
    reports = section["identity_reports"]
    sizes = sorted({r["corner_size"] for r in reports})
    verified = bool(reports) and all(r["status"] == "verified" for r in reports)
    pd = section.get("posinormal_coposinormal", {}).get("display", "n/a")
    psd = section.get("hyponormal_sufficient", {}).get("display", "n/a")
    if section.get("hyponormal_sufficient", {}).get("unbounded"):
        psd += " (continues)"
    escalated = any(r["escalations"] for r in reports) or bool(section.get("escalations"))
    return [section["order"], ",".join(map(str, sizes)), verified, escalated, pd, psd]


def cmd_conjecture(args) -> Report:
    alphas = sorted(set(args.alpha))
    sections = [_order_section(k, alphas, args.n, args.domain, args.jobs) for k in sorted(set(args.orders))]
    header = ["order", "corner_size", "identity_verified", "escalated", "pd_range", "psd_shift_range"]
    rows = [_summary_row(s) for s in sections]
    passed = all(r[2] for r in rows) and all(
        it.get("fixture_match", True) for s in sections for it in s["identity_reports"]
    )
    config = {"orders": sorted(set(args.orders)), "alpha": [rat(a) for a in alphas], "n_check": args.n,
              "domain": str(args.domain)}
    results = {"orders": sections, "summary": {"header": header, "rows": rows}}
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
    lines = ["  ".join(str(x).ljust(w) for x, w in zip(r, widths)).rstrip() for r in [header] + rows]
    for s in sections:
        for it in s["identity_reports"]:
            for note in it["escalations"]:
                lines.append(f"order {s['order']}, alpha {it['alpha']}: escalation: {note}")
            if it.get("fixture_match") is False:
                lines.append(f"order 3, alpha {it['alpha']}: solved corner differs from the explicit corner")
    return Report("conjecture", config, results, passed, (header, rows), "\n".join(lines))


# -- defect -----------------------------------------------------------------------------

def _defect_job(k: int, alpha: Fraction, section: int, terms: int) -> Dict[str, Any]:
    rep = finite_section_defect(k, alpha, section, terms)
    out = {
        "order": k,
        "alpha": rat(alpha),
        "section": section,
        "terms": terms,
        "approximate": True,
        "min_eigenvalue": rep.min_eigenvalue,
        "eigenvalues": list(rep.eigenvalues),
        "max_bracket_width": float(rep.max_bracket_width),
        "sufficient_condition": rep.sufficient_condition,
        "flag": rep.flag,
    }
    if rep.sufficient_condition:
        out["check"] = {
            "min_eigenvalue_at_least": -DEFECT_TOLERANCE,
            "passed": rep.min_eigenvalue >= -DEFECT_TOLERANCE,
        }
    return out


def cmd_defect(args) -> Report:
    alphas = sorted(set(args.alpha))
    items = _run_jobs(_defect_job, [(args.order, a, args.section, args.terms) for a in alphas], args.jobs)
    checked = [it["check"]["passed"] for it in items if "check" in it]
    passed = all(checked) if checked else None
    config = {"order": args.order, "alpha": [rat(a) for a in alphas], "section": args.section, "terms": args.terms}
    header = ["order", "alpha", "min_eigenvalue", "max_bracket_width", "flag"]
    rows = [[it["order"], it["alpha"], repr(it["min_eigenvalue"]), repr(it["max_bracket_width"]), it["flag"]]
            for it in items]
    pretty = "\n".join(
        f"order {it['order']}  alpha {it['alpha']}: min eigenvalue ~ {it['min_eigenvalue']:.6e}, "
        f"bracket width < {it['max_bracket_width']:.3e}  [{it['flag']}]"
        for it in items
    )
    return Report("defect", config, {"defect": items}, passed, (header, rows), pretty)


# -- argument parsing ---------------------------------------------------------------------

def _alpha_arg(text: str) -> Fraction:
    try:
        return parse_alpha(text)
    except (UsageError, ParameterDomainError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _alpha_list_arg(text: str) -> List[Fraction]:
    try:
        return parse_alpha_list(text)
    except (UsageError, ParameterDomainError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _orders_arg(text: str) -> List[int]:
    try:
        return parse_orders(text)
    except UsageError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _domain_arg(text: str) -> Domain:
    try:
        dom = parse_domain(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if dom.lo is None or dom.lo < -1 or (dom.lo == -1 and dom.lo_closed):
        raise argparse.ArgumentTypeError("the scan domain must lie inside (-1, inf)")
    if dom.hi is not None and dom.hi < dom.lo:
        raise argparse.ArgumentTypeError("the scan domain has its ends reversed")
    return dom


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
    common.add_argument("--no-meta", action="store_true", help="omit the timestamp block")
    common.add_argument("--jobs", type=_positive_int, default=1, metavar="N", help="worker processes")

    parser = argparse.ArgumentParser(
        prog="cesaro-lab",
        description="Exact checks for generalized Cesàro matrices of integer order.",
        epilog="Negative α values need the '=' form, e.g. --alpha=-1/2.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("entries", parents=[common], help="top-left block of the matrix")
    p.add_argument("--order", type=_positive_int, required=True)
    p.add_argument("--alpha", type=_alpha_arg, required=True)
    p.add_argument("--n", type=_positive_int, required=True)
    p.set_defaults(run=cmd_entries)

    p = sub.add_parser("verify", parents=[common], help="check M*PM = MQM* on a window")
    p.add_argument("--order", type=_positive_int, required=True)
    p.add_argument("--alpha", type=_alpha_list_arg, required=True, help="comma-separated list")
    p.add_argument("--n", type=_positive_int, default=40, help="largest index checked (default 40)")
    p.add_argument("--corner", choices=("auto", "fixture", "solved", "identity"), default="auto")
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("telescope", parents=[common], help="solve the telescoping closed form")
    p.add_argument("--order", type=_positive_int, required=True)
    p.set_defaults(run=cmd_telescope)

    p = sub.add_parser("ranges", parents=[common], help="exact α-ranges from corner minors")
    p.add_argument("--order", type=_positive_int, required=True)
    p.add_argument("--domain", type=_domain_arg, default=DEFAULT_DOMAIN, help='e.g. "(-1,10]" (default)')
    p.set_defaults(run=cmd_ranges)

    p = sub.add_parser("conjecture", parents=[common], help="evidence table over several orders")
    p.add_argument("--orders", type=_orders_arg, required=True, help="comma-separated list")
    p.add_argument("--alpha", type=_alpha_list_arg, default=[Fraction(1, 2), Fraction(2)])
    p.add_argument("--n", type=_positive_int, default=40)
    p.add_argument("--domain", type=_domain_arg, default=DEFAULT_DOMAIN)
    p.set_defaults(run=cmd_conjecture)

    p = sub.add_parser("defect", parents=[common], help="finite section of A*A - AA* (approximate)")
    p.add_argument("--order", type=_positive_int, required=True)
    p.add_argument("--alpha", type=_alpha_list_arg, required=True)
    p.add_argument("--section", type=_positive_int, default=8)
    p.add_argument("--terms", type=_positive_int, default=100_000)
    p.set_defaults(run=cmd_defect)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s", stream=sys.stderr)
    if not self_test():
        print("error: entry formula self-test failed", file=sys.stderr)
        return EXIT_CHECK_FAILED
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        report = args.run(args)
    except (UsageError, ParameterDomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = report.render(args.format, meta=not args.no_meta)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_CHECK_FAILED if report.passed is False else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
