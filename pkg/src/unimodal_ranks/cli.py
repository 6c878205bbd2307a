"""Command-line front end.

Exit codes: 0 success, 1 a mathematical check failed, 2 usage or
configuration error, 3 I/O error.  Reports go to stdout, progress and
warnings to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Any, Sequence

from . import analysis as an
from . import euler_maclaurin as em
from .cache import default_cache_dir, export_csv, get_table, load_cached
from .identities import IDENTITIES
from .oracles import brute_force
from .series import ZetaLaurent
from .tables import Family, RankTable, build_table
from .tolerances import Tolerances, load_tolerances

log = logging.getLogger("unimodal_ranks")

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


# -- output ------------------------------------------------------------------


def emit(records: list[dict[str, Any]], fmt: str, out: io.TextIOBase, meta: dict[str, Any] | None = None) -> None:
    if fmt == "json":
        doc = dict(meta or {})
        doc["rows"] = records
        json.dump(doc, out, indent=2, sort_keys=True)
        out.write("\n")
        return
    if meta:
        for key in sorted(meta):
            out.write(f"# {key}: {json.dumps(meta[key], sort_keys=True)}\n")
    if not records:
        return
    w = csv.DictWriter(out, fieldnames=list(records[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(records)


def parse_grid(text: str) -> list[int]:
    try:
        grid = sorted({int(x) for x in text.split(",") if x.strip()})
    except ValueError:
        raise UsageError(f"bad n-grid {text!r}; expected e.g. 300,600,1200") from None
    if not grid or grid[0] < 0:
        raise UsageError("n-grid must be non-empty and non-negative")
    return grid


def cached_table(args: argparse.Namespace, family: Family, order: int) -> RankTable:
    table = load_cached(args.cache_dir, family, order)
    if table is None:
        raise UsageError(f"no cached {family.value} table of order >= {order} in {args.cache_dir}; "
                         f"run `unimodal-ranks table --family {family.value} --order {order}` first")
    return table


# -- commands ----------------------------------------------------------------


SPOT_ROWS = 10


def cmd_table(args: argparse.Namespace, tol: Tolerances) -> int:
    family = Family(args.family)
    table = get_table(family, args.order, args.cache_dir, progress=True)
    if args.export == "csv":
        if args.output:
            with open(args.output, "w", newline="") as fh:
                export_csv(table, fh)
        else:
            export_csv(table, sys.stdout)
        return EXIT_OK
    totals = table.totals()
    spots = sorted(set(range(min(SPOT_ROWS, args.order) + 1)) | {args.order})
    rows = [{"n": n, "total": totals[n]} for n in spots]
    emit(rows, args.format, sys.stdout, {"family": family.value, "order": args.order})
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, tol: Tolerances) -> int:
    if bool(args.identity) == bool(args.oracle):
        raise UsageError("give exactly one of --identity or --oracle")
    rows = []
    if args.identity:
        names = list(IDENTITIES) if args.identity == "all" else [args.identity]
        for name in names:
            report = IDENTITIES[name](args.order, perturb=args.self_test_perturb)
            rows.append(report.to_dict())
    else:
        families = list(Family) if args.oracle == "all" else [Family(args.oracle)]
        for family in families:
            table = build_table(family, args.max_n)
            first = None
            for n in range(args.max_n + 1):
                expected = brute_force(family.value, n)
                got = table.row(n)
                if args.self_test_perturb is not None and n == args.self_test_perturb:
                    got = got + ZetaLaurent.monomial(0)
                if got != expected:
                    first = n
                    break
            row = {"oracle": family.value, "max_n": args.max_n, "holds": first is None}
            if first is not None:
                row["first_mismatch_n"] = first
            rows.append(row)
    json.dump({"checks": rows}, sys.stdout, indent=2, sort_keys=True, default=str)
    sys.stdout.write("\n")
    return EXIT_OK if all(r["holds"] for r in rows) else EXIT_CHECK


def cmd_moments(args: argparse.Namespace, tol: Tolerances) -> int:
    grid = parse_grid(args.n)
    table = cached_table(args, Family(args.family), grid[-1])
    rows = [{"n": n, "value": an.row_moment(table, n, args.k, args.kind)} for n in grid]
    emit(rows, args.format, sys.stdout, {"family": args.family, "k": args.k, "kind": args.kind})
    return EXIT_OK


def _moment_tolerance(tol: Tolerances, family: Family, k: int, kind: str) -> tuple[str, float]:
    if family is Family.SEMISTRICT:
        key = "semistrict_final"
    elif kind == "absolute" and k % 2:
        key = "absolute_final"
    else:
        key = "exponential_final"
    return f"[moments] {key}", tol.get("moments", key)


def cmd_asymptotics(args: argparse.Namespace, tol: Tolerances) -> int:
    grid = parse_grid(args.n)
    family = Family(args.family)
    table = cached_table(args, family, grid[-1])
    if args.normalized:
        report = an.normalized_moment_limit(table, args.k, grid)
        applied, value = "trend only", None
    else:
        applied, value = _moment_tolerance(tol, family, args.k, args.kind)
        report = an.convergence_ratio(table, args.k, args.kind, grid, value)
    rows = [{"n": n, "exact": e, "main_term": m, "ratio": r}
            for n, e, m, r in zip(report.grid, report.exact, report.main, report.ratios)]
    meta = {"quantity": report.label, "verdict": report.verdict.value, "tolerance": applied,
            "tolerance_value": value, "tolerance_source": tol.source}
    emit(rows, args.format, sys.stdout, meta)
    return EXIT_OK if report.passed else EXIT_CHECK


def cmd_distribution(args: argparse.Namespace, tol: Tolerances) -> int:
    grid = parse_grid(args.n)
    table = cached_table(args, Family(args.family), grid[-1])
    rows = [{"n": n, "ks": an.ks_distance(table, n, args.target)} for n in grid]
    emit(rows, args.format, sys.stdout, {"family": args.family, "target": args.target})
    return EXIT_OK


def cmd_conjecture(args: argparse.Namespace, tol: Tolerances) -> int:
    if args.rule == "custom":
        if not args.family:
            raise UsageError("custom rule needs --family")
        family = Family(args.family)
        n_range = (args.min_n or 0, args.max_n)
        margin = args.margin
    else:
        family = an.RULES[args.rule][0]
        n_range = (args.min_n or 0, args.max_n)
        margin = None
    table = cached_table(args, family, args.max_n).truncate(args.max_n)
    report = an.logconcavity_scan(table, args.rule, n_range, margin, threads=args.threads)
    if args.rows:
        with open(args.rows, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["family", "n", "m", "holds"])
            for n, m, ok in an.scan_rows(table, report.n_range, report.margin, args.threads):
                w.writerow([family.value, n, m, int(ok)])
    emit([{"n": n, "m": m} for n, m in report.violations], args.format, sys.stdout,
         {k: v for k, v in report.to_dict().items() if k != "violations"})
    return EXIT_OK if report.certified else EXIT_CHECK


def cmd_em_demo(args: argparse.Namespace, tol: Tolerances) -> int:
    rows = []
    for w in sorted({float(x) for x in args.w.split(",")}, reverse=True):
        if args.case == "narrow-gaussian-difference":
            r = em.narrow_gaussian_difference(args.order, w)
        else:
            r = em.run_case(args.case, args.order, w)
        rows.append({"w": w, "sum": r.sum, "expansion": r.expansion, "remainder": r.remainder})
    emit(rows, args.format, sys.stdout, {"case": args.case, "order": args.order})
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def _common_options() -> argparse.ArgumentParser:
    # a fresh parser per use: set_defaults on one parser would otherwise leak into the
    # shared action objects and override values given before the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache-dir", type=Path, default=argparse.SUPPRESS,
                        help="table cache directory (default: $UNIMODAL_RANKS_CACHE or ~/.cache/unimodal_ranks)")
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    common.add_argument("--format", choices=["csv", "json"], default=argparse.SUPPRESS)
    common.add_argument("--tolerances", type=Path, default=argparse.SUPPRESS,
                        help="tolerance file (default: packaged copy)")
    common.add_argument("-q", "--quiet", action="store_true", default=argparse.SUPPRESS,
                        help="suppress progress messages")
    return common


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="unimodal-ranks", description="Exact rank tables and asymptotic checks.",
                                parents=[_common_options()])
    p.set_defaults(cache_dir=None, threads=1, format="csv", tolerances=None, quiet=False)
    sub = p.add_subparsers(dest="command", required=True)
    families = [f.value for f in Family]

    t = sub.add_parser("table", parents=[_common_options()], help="build (or load) a rank table")
    t.add_argument("--family", choices=families, required=True)
    t.add_argument("--order", type=int, required=True)
    t.add_argument("--export", choices=["csv"])
    t.add_argument("--output", type=Path)
    t.set_defaults(func=cmd_table)

    v = sub.add_parser("verify", parents=[_common_options()], help="check identities or tables against brute force")
    v.add_argument("--identity", choices=[*IDENTITIES, "all"])
    v.add_argument("--oracle", choices=[*families, "all"])
    v.add_argument("--order", type=int, default=50)
    v.add_argument("--max-n", type=int, default=15)
    v.add_argument("--self-test-perturb", type=int, nargs="?", const=7, default=None,
                   help="inject a fault at this q-order / n to exercise the detector")
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("moments", parents=[_common_options()], help="exact moments on an n-grid")
    m.add_argument("--family", choices=families, required=True)
    m.add_argument("--k", type=int, required=True)
    m.add_argument("--kind", choices=["signed", "absolute"], default="signed")
    m.add_argument("--n", required=True, help="comma-separated n values")
    m.set_defaults(func=cmd_moments)

    a = sub.add_parser("asymptotics", parents=[_common_options()], help="exact moments against their main terms")
    a.add_argument("--family", choices=["unimodal", "durfee", "semistrict"], required=True)
    a.add_argument("--k", type=int, required=True, help="power of m")
    a.add_argument("--kind", choices=["signed", "absolute"], default="signed")
    a.add_argument("--n", required=True)
    a.add_argument("--normalized", action="store_true", help="compare normalized moments with the limit law")
    a.set_defaults(func=cmd_asymptotics)

    d = sub.add_parser("distribution", parents=[_common_options()], help="Kolmogorov distance of the normalized rank to a limit law")
    d.add_argument("--family", choices=families, required=True)
    d.add_argument("--n", required=True)
    d.add_argument("--target", choices=[t.value for t in an.Target], default="logistic")
    d.set_defaults(func=cmd_distribution)

    c = sub.add_parser("conjecture", parents=[_common_options()], help="log-concavity scan; exits 1 on a violation")
    c.add_argument("--rule", choices=[*an.RULES, "custom"], required=True)
    c.add_argument("--max-n", type=int, required=True)
    c.add_argument("--min-n", type=int)
    c.add_argument("--family", choices=families, help="custom rule only")
    c.add_argument("--margin", type=int, help="custom rule: |m| <= n - margin (default whole support)")
    c.add_argument("--rows", type=Path, help="write every (n, m) check to this CSV file")
    c.set_defaults(func=cmd_conjecture)

    e = sub.add_parser("em-demo", parents=[_common_options()], help="Euler-Maclaurin engine on a documented integrand")
    e.add_argument("--case", choices=[*em.CASES, "narrow-gaussian-difference"], required=True)
    e.add_argument("--w", default="0.1", help="comma-separated step sizes")
    e.add_argument("--order", type=int, default=2)
    e.set_defaults(func=cmd_em_demo)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.cache_dir is None:
        args.cache_dir = default_cache_dir()
    try:
        if args.threads < 1:
            raise UsageError("--threads must be >= 1")
        for name in ("order", "max_n"):
            if getattr(args, name, 0) is not None and getattr(args, name, 0) < 0:
                raise UsageError(f"--{name.replace('_', '-')} must be >= 0")
        tol = load_tolerances(args.tolerances)
        return args.func(args, tol)
    except (UsageError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
