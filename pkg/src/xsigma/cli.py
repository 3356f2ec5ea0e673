"""Command-line front end.

    xsigma decide --type B3 --weight 1,0,0
    xsigma decide --type A2 --weight 1,1
    xsigma decide --type G2 --weight 0,2 --sigma "0,2;1,1"
    xsigma sweep --type E6 --out json
    xsigma verify --suite rays --max-rank 5

The three decide examples report normal false / smooth false, a normal smooth
Q-factorial wonderful case, and normal true respectively.

Exit codes: 0 success, 1 a verification failure, 2 bad input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import compact, repthy, verify
from .rootsys import RootSystem, RootSystemError, build_root_system

SWEEP_COLUMNS = ["type", "support", "star", "normal", "q_factorial", "smooth", "n_rays"]


class UsageError(Exception):
    pass


def _system(text: str) -> RootSystem:
    try:
        return build_root_system(text)
    except RootSystemError as exc:
        raise UsageError(str(exc)) from None


def _sigma(rs: RootSystem, weight: str, sigma: str | None) -> compact.SigmaSet:
    try:
        lam = rs.parse_weight(weight)
        weights = {lam}
        if sigma:
            weights |= {rs.parse_weight(w.strip()) for w in sigma.split(";") if w.strip()}
        out = compact.make_sigma(rs, weights)
    except (RootSystemError, compact.SigmaError) as exc:
        raise UsageError(str(exc)) from None
    if out.max != lam:
        raise UsageError(f"--weight must be the maximal element of sigma, which is {list(out.max)}")
    if not any(lam):
        raise UsageError("--weight must be nonzero")
    return out


def cmd_decide(args) -> compact.DecisionReport:
    rs = _system(args.type)
    report = compact.decide(rs, _sigma(rs, args.weight, args.sigma), certify=args.certify)
    print(report.to_json())
    return report


def sweep_row(type_string: str, support: tuple[int, ...]) -> dict:
    rs = build_root_system(type_string)
    lam = tuple(1 if i in support else 0 for i in range(rs.rank))
    star = compact.satisfies_star(rs, lam)
    return {
        "type": rs.type_string,
        "support": rs.format_subset(support),
        "star": star,
        "normal": compact.normality_decide(rs, compact.make_sigma(rs, {lam})),
        "q_factorial": compact.is_q_factorial(rs, lam).value,
        "smooth": compact.is_smooth(rs, lam).value,
        "n_rays": len(compact.extremal_rays(rs, lam)),
    }


def sweep(rs: RootSystem, jobs: int = 1) -> list[dict]:
    """One row per nonempty support, bit i of the counter standing for alpha_{i+1}."""
    supports = [tuple(i for i in range(rs.rank) if mask >> i & 1) for mask in range(1, 2 ** rs.rank)]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            return list(pool.map(sweep_row, [rs.type_string] * len(supports), supports))
    return [sweep_row(rs.type_string, s) for s in supports]


def format_rows(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: str(v).lower() if isinstance(v, bool) else v for k, v in row.items()})
    return buf.getvalue()


def cmd_sweep(args) -> list[dict]:
    rs = _system(args.type)
    rows = sweep(rs, args.jobs)
    text = format_rows(rows, args.out)
    if args.file:
        with open(args.file, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return rows


def cmd_verify(args) -> bool:
    if args.dim_cap is not None:
        repthy.GUARD.max_dim = args.dim_cap
    ok = True
    for check in verify.SUITES[args.suite](args.max_rank):
        print(check.line(), flush=True)
        ok &= check.passed
    print("all checks passed" if ok else "some checks FAILED")
    return ok


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="xsigma", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="normality, Q-factoriality and smoothness of one X_Sigma")
    p.add_argument("--type", required=True, help='root system type, e.g. "B3" or "A2xG2"')
    p.add_argument("--weight", required=True, help="maximal weight, fundamental coordinates, e.g. 1,0,0")
    p.add_argument("--sigma", help='further weights of Sigma separated by ";", e.g. "0,2;1,1"')
    p.add_argument("--certify", action="store_true", help="attach normality chains when normal")

    p = sub.add_parser("sweep", help="classify every support of a type")
    p.add_argument("--type", required=True)
    p.add_argument("--out", choices=["csv", "json"], default="csv", help="output format")
    p.add_argument("--file", help="write to this file instead of stdout")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")

    p = sub.add_parser("verify", help="run oracle cross-check suites")
    p.add_argument("--suite", required=True, choices=sorted(verify.SUITES))
    p.add_argument("--max-rank", type=int, help="restrict type sweeps to this rank")
    p.add_argument("--dim-cap", type=int, help="largest module dimension the oracle may expand")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "decide":
            cmd_decide(args)
        elif args.command == "sweep":
            cmd_sweep(args)
        else:
            return 0 if cmd_verify(args) else 1
    except UsageError as exc:
        print(f"xsigma: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
