"""Command-line entry points: `verify` runs the randomized suite, `show`
pretty-prints derived quantities for a matrix file."""

from __future__ import annotations

import argparse
import sys

from . import harness, linalg, spectral
from .errors import ConfigInvalid, LogmajError


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="logmaj")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run inequality checkers on random inputs")
    v.add_argument("--suite", default="all",
                   help="comma-separated checker ids, or 'all' (default)")
    v.add_argument("--trials", type=int, default=100, help="trials per checker per dim")
    v.add_argument("--dims", default="1,2,4,8", help="comma-separated dimensions")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--delta", type=float, default=1e-3, help="strict-contraction margin")
    v.add_argument("--atol", type=float, default=1e-9)
    v.add_argument("--rtol", type=float, default=1e-9)
    v.add_argument("--k-max", type=int, default=4, help="max intervals in sampled sets")
    v.add_argument("--format", choices=("json", "csv"), default="json")
    v.add_argument("--output", default=None, help="path; stdout when omitted")
    v.add_argument("--threads", type=int, default=0,
                   help="worker threads; 0 reads LOGMAJ_THREADS, default serial")
    v.add_argument("--list", action="store_true", help="list checker ids and exit")

    s = sub.add_parser("show", help="print derived quantities for a matrix file")
    s.add_argument("--input", required=True, help="matrix JSON file ({'n':., 'entries':[[re,im],..]})")
    s.add_argument("--what", required=True, choices=("mu", "lambda", "det", "cayley"))
    return ap


def cmd_verify(args) -> int:
    if args.list:
        for name in harness.CHECKERS:
            print(name)
        return 0
    suite = tuple(s.strip() for s in args.suite.split(",") if s.strip())
    dims = tuple(int(d) for d in args.dims.split(",") if d.strip())
    cfg = harness.TrialConfig(
        suite=suite,
        trials=args.trials,
        dims=dims,
        seed=args.seed,
        delta=args.delta,
        atol=args.atol,
        rtol=args.rtol,
        k_max=args.k_max,
        output=args.output,
        fmt=args.format,
        threads=args.threads,
    )
    cfg.validate()
    if args.format == "csv":
        text = harness.rows_to_csv(cfg)
        report_failures = sum(
            1 for line in text.splitlines()[1:] if line.split(",")[6] == "False"
        )
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
    else:
        report = harness.run_suite(cfg)  # writes args.output itself when set
        text = harness.report_to_json(report) + "\n"
        report_failures = report["total_failures"]
    if args.output:
        print(f"wrote {args.output} ({report_failures} failing trials)")
    else:
        sys.stdout.write(text)
    return 0 if report_failures == 0 else 1


def cmd_show(args) -> int:
    x = linalg.load_matrix(args.input)
    if args.what == "mu":
        print(spectral.mu(x))
    elif args.what == "lambda":
        print(spectral.lambda_scale(x))
    elif args.what == "det":
        print(f"{spectral.fk_det(x)!r}")
    elif args.what == "cayley":
        c = linalg.cayley(x)
        for row in c:
            print("  ".join(f"{v.real:+.12g}{v.imag:+.12g}j" for v in row))
    return 0


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.command == "verify":
            return cmd_verify(args)
        return cmd_show(args)
    except ConfigInvalid as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except LogmajError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
