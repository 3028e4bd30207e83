"""Command-line harness: prediction, assumption scans, exact oracle runs,
comparisons, and the large-p limit scan, as reproducible JSON/CSV reports.

Verbs: hodge, predict, assumptions, oracle, compare, scan-limit, selftest.
Output is deterministic: the same invocation prints byte-identical JSON
(sorted keys, rationals as [numerator, denominator] pairs).

Exit codes: 0 success; 2 invalid parameters or out-of-domain request;
3 assumption failure under --strict; 4 oracle/prediction mismatch (or an
internal cross-check failure) under --strict.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from sympy import isprime, primerange

from .convolve import CONV_SIZE_LIMIT, DomainError
from .geometry import PolygonData, hodge_data, hodge_polygon
from .oracle import OracleReport, oracle_np_batch
from .selftest import run_selftest
from .slopecomb import assumption16, predicted_np, prime_bounds, vandermonde_report

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_ASSUMPTION = 3
EXIT_MISMATCH = 4

# oracle fields larger than this demand an explicit --heavy
HEAVY_UNITS = 10 ** 6


@dataclass(frozen=True)
class ComparisonReport:
    """Predicted vs Hodge vs (optionally) exact polygons for one (n, p, t)."""

    params: dict
    predicted: PolygonData
    hodge: PolygonData
    oracle: PolygonData | None
    verdict: str                       # match | mismatch | oracle-skipped
    deviations: tuple[Fraction, ...]   # oracle slope minus predicted slope
    warnings: tuple[str, ...] = ()

    def to_json_dict(self) -> dict:
        return {
            "params": self.params,
            "predicted": self.predicted.to_json_dict(),
            "hodge": self.hodge.to_json_dict(),
            "oracle": None if self.oracle is None else self.oracle.to_json_dict(),
            "verdict": self.verdict,
            "deviations": [[d.numerator, d.denominator] for d in self.deviations],
            "warnings": list(self.warnings),
        }


@dataclass(frozen=True)
class LimitScanRow:
    p: int
    max_dev: Fraction

    def to_json_dict(self) -> dict:
        return {"p": self.p, "max_dev": [self.max_dev.numerator, self.max_dev.denominator]}


def _emit_json(obj: dict) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _emit_polygon_csv(poly: PolygonData) -> None:
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["index", "slope_num", "slope_den",
                     "vertex_x", "vertex_y_num", "vertex_y_den"])
    y = Fraction(0)
    for i, s in enumerate(poly.slopes):
        y += s
        writer.writerow([i, s.numerator, s.denominator,
                         i + 1, y.numerator, y.denominator])


def _parse_int_range(text: str) -> list[int]:
    """'47' | '5..101' | comma-separated mix, ascending-deduped."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    seen: list[int] = []
    for v in out:
        if v not in seen:
            seen.append(v)
    return seen


def _parse_primes(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(primerange(int(lo), int(hi) + 1))
    ps = _parse_int_range(text)
    for p in ps:
        if not isprime(p):
            raise ValueError(f"p={p} is not prime")
    return ps


def _parse_t(text: str, p: int) -> list[int]:
    if text.strip() == "all":
        return list(range(1, p))
    ts = _parse_int_range(text)
    for t in ts:
        if not 1 <= t <= p - 1:
            raise ValueError(f"t={t} outside 1..{p - 1}")
    return ts


def _mem_budget_bytes(args) -> int | None:
    if args.mem_budget is None:
        return None
    if args.mem_budget <= 0:
        raise ValueError("--mem-budget must be positive (GB)")
    return int(args.mem_budget * 2 ** 30)


def _require_json(args, verb: str) -> None:
    if args.format != "json":
        raise ValueError(f"{verb} has no CSV form; polygon tables are the "
                         "only CSV output")


def _check_heavy(args, n: int, p: int) -> None:
    if p ** (n + 1) - 1 > HEAVY_UNITS and not args.heavy:
        raise ValueError(
            f"field F_p^{n + 1} with p={p} has {p ** (n + 1) - 1} units; "
            "pass --heavy to run it (and consider --threads/--mem-budget)")


def cmd_hodge(args) -> int:
    data = hodge_data(args.n)
    if args.format == "csv":
        _emit_polygon_csv(data.polygon)
    else:
        _emit_json(data.to_json_dict())
    return EXIT_OK


def cmd_predict(args) -> int:
    report = predicted_np(args.n, args.p)
    if args.format == "csv":
        _emit_polygon_csv(report.polygon)
    else:
        _emit_json(report.to_json_dict())
    return EXIT_OK


def cmd_assumptions(args) -> int:
    _require_json(args, "assumptions")
    body = {
        "n": args.n,
        "vandermonde": vandermonde_report(args.n).to_json_dict(),
        "prime_bounds": prime_bounds(args.n),
    }
    failed = not body["vandermonde"]["overall"]
    if args.p is not None:
        rows = []
        for p in _parse_primes(args.p):
            if p <= args.n:
                rows.append({"p": p, "ok": None, "note": "requires p > n"})
                continue
            res = assumption16(args.n, p)
            rows.append({"p": p, "ok": res["ok"], "per_k": res["per_k"]})
            failed = failed or not res["ok"]
        body["assumption16"] = rows
    _emit_json(body)
    if failed and args.strict:
        return EXIT_ASSUMPTION
    return EXIT_OK


def cmd_oracle(args) -> int:
    ts = _parse_t(args.t, args.p)
    _check_heavy(args, args.n, args.p)
    reports = oracle_np_batch(
        args.n, args.p, ts, algorithm=args.algorithm, threads=args.threads,
        mem_budget_bytes=_mem_budget_bytes(args), max_k_budget=args.max_k_budget)
    if args.format == "csv":
        if len(reports) != 1:
            raise ValueError("CSV output needs a single t (it is one polygon table)")
        _emit_polygon_csv(reports[0].polygon)
    else:
        _emit_json({"n": args.n, "p": args.p,
                    "reports": [r.to_json_dict() for r in reports]})
    if args.strict and any(
            not r.hodge_ok or r.prediction_match is False for r in reports):
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_compare(args) -> int:
    _require_json(args, "compare")
    predicted = predicted_np(args.n, args.p)
    hodge = hodge_polygon(args.n)
    warnings = list(predicted.warnings)

    oracle_poly = None
    if args.p ** (args.n + 1) > CONV_SIZE_LIMIT:
        warnings.append("oracle skipped: field beyond the convolution limit")
    elif args.p ** (args.n + 1) - 1 > HEAVY_UNITS and not args.heavy:
        warnings.append("oracle skipped: heavy field; rerun with --heavy")
    else:
        report: OracleReport = oracle_np_batch(
            args.n, args.p, [args.t], algorithm=args.algorithm,
            threads=args.threads, mem_budget_bytes=_mem_budget_bytes(args))[0]
        oracle_poly = report.polygon
        warnings.extend(w for w in report.warnings if w not in warnings)

    if oracle_poly is None:
        verdict, deviations = "oracle-skipped", ()
    else:
        deviations = tuple(o - q for o, q in
                           zip(oracle_poly.slopes, predicted.polygon.slopes))
        verdict = "match" if oracle_poly.slopes == predicted.polygon.slopes \
            else "mismatch"
    comp = ComparisonReport(
        params={"n": args.n, "p": args.p, "t": args.t},
        predicted=predicted.polygon, hodge=hodge, oracle=oracle_poly,
        verdict=verdict, deviations=deviations, warnings=tuple(warnings))
    _emit_json(comp.to_json_dict())
    if args.strict and verdict == "mismatch":
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_scan_limit(args) -> int:
    hodge_slopes = hodge_polygon(args.n).slopes
    rows: list[LimitScanRow] = []
    skipped: list[int] = []
    for p in _parse_primes(args.p):
        if p <= args.n or p % args.n == 0:
            skipped.append(p)
            continue
        pred = predicted_np(args.n, p)
        dev = max(abs(s - h) for s, h in zip(pred.polygon.slopes, hodge_slopes))
        rows.append(LimitScanRow(p=p, max_dev=dev))
    if args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["p", "max_dev_num", "max_dev_den"])
        for row in rows:
            writer.writerow([row.p, row.max_dev.numerator, row.max_dev.denominator])
    else:
        _emit_json({"n": args.n, "rows": [r.to_json_dict() for r in rows],
                    "skipped_primes": skipped})
    return EXIT_OK


def cmd_selftest(args) -> int:
    _require_json(args, "selftest")
    return EXIT_OK if run_selftest() else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json",
                        help="output format (CSV only for polygon tables)")
    common.add_argument("--threads", type=int, default=1,
                        help="worker threads for the convolution engine")
    common.add_argument("--strict", action="store_true",
                        help="nonzero exit on assumption failure or mismatch")
    common.add_argument("--heavy", action="store_true",
                        help="allow fields with more than 10^6 units")
    common.add_argument("--mem-budget", type=float, default=None, metavar="GB",
                        help="refuse runs whose tables would exceed this")

    ap = argparse.ArgumentParser(
        prog="toricnp",
        description="Newton/Hodge polygons for x^n + y + t/(xy) over F_p: "
                    "exact predictions, assumption checks, and an exact "
                    "L-function oracle.")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("hodge", parents=[common],
                        help="Hodge numbers and Hodge polygon for given n")
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_hodge)

    sp = sub.add_parser("predict", parents=[common],
                        help="predicted Newton polygon for (n, p)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.set_defaults(func=cmd_predict)

    sp = sub.add_parser("assumptions", parents=[common],
                        help="determinant scan, factorial congruence, prime bounds")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=str, default=None,
                    help="prime or range, e.g. 463..600")
    sp.set_defaults(func=cmd_assumptions)

    sp = sub.add_parser("oracle", parents=[common],
                        help="exact Newton polygon via L-function computation")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--t", type=str, required=True,
                    help="residue, list/range, or 'all'")
    sp.add_argument("--algorithm", choices=("auto", "naive", "convolution"),
                    default="auto")
    sp.add_argument("--max-k-budget", type=int, default=None,
                    help="largest extension degree the oracle may sum over")
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("compare", parents=[common],
                        help="predicted vs Hodge vs exact polygon for one t")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--algorithm", choices=("auto", "naive", "convolution"),
                    default="auto")
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("scan-limit", parents=[common],
                        help="max |predicted - Hodge| slope deviation over a prime range")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=str, required=True,
                    help="prime range, e.g. 5..101")
    sp.set_defaults(func=cmd_scan_limit)

    sp = sub.add_parser("selftest", parents=[common],
                        help="run the built-in verification suites")
    sp.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, DomainError, MemoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        print(f"internal cross-check failed: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
