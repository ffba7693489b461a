"""``disklab run <experiment> --config <path> --out <path> [--zeros <csv>] [--format json|csv]``"""
import argparse
import sys

from .blaschke import ZeroFileError, read_zero_csv
from .config import ConfigError, load_config
from .experiments import EXPERIMENTS, run_experiment

EXIT_PASS, EXIT_CONFIG, EXIT_FAIL = 0, 1, 2
EXIT_USAGE, EXIT_DATA = 64, 65


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def build_parser():
    p = _Parser(prog="disklab", description="Run a disk-operator experiment and write a report.")
    sub = p.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run one experiment")
    run.add_argument("experiment", help=", ".join(EXPERIMENTS))
    run.add_argument("--config", help="key = value configuration file")
    run.add_argument("--out", required=True, help="report path")
    run.add_argument("--zeros", help="zero-sequence CSV (re,im or modulus,arg_radians)")
    run.add_argument("--format", choices=("json", "csv"), default="json")
    return p


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        print(f"disklab: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.experiment not in EXPERIMENTS:
        print(f"disklab: unknown experiment {args.experiment!r} (choose from {', '.join(EXPERIMENTS)})",
              file=sys.stderr)
        return EXIT_USAGE
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        print(f"disklab: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    zeros = None
    if args.zeros:
        try:
            zeros = read_zero_csv(args.zeros)
        except ZeroFileError as exc:
            print(f"disklab: malformed zero file: {exc}", file=sys.stderr)
            return EXIT_DATA
        except OSError as exc:
            print(f"disklab: cannot read zero file: {exc}", file=sys.stderr)
            return EXIT_DATA
    try:
        report = run_experiment(args.experiment, cfg, zeros)
    except ConfigError as exc:
        print(f"disklab: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    for path in report.write(args.out, args.format):
        print(path)
    for name, v in sorted(report.verdicts.items()):
        print(f"{v['status']:>8}  {name}: {v['detail']}")
    return EXIT_PASS if report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
