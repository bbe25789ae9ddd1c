"""Command-line entry point: ``cycle``, ``sweep`` and ``validate``.

Exit codes: 0 success, 1 computation error or failed validation, 2 bad flags
or a malformed sweep configuration.
"""

from __future__ import annotations

import argparse
import sys

from .measurement import SideMeasurement
from .spin import SpinValue
from .sweep import (
    OUTPUT_FLAGS,
    ConfigError,
    PointSpec,
    compute_record,
    load_config,
    records_to_csv,
    records_to_json,
    run_sweep,
)
from .validation import GROUPS, run_validation


def _spin(text: str) -> str:
    try:
        return str(SpinValue.parse(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _side(text: str) -> str:
    try:
        return str(SideMeasurement.parse(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0 or value == float("inf"):
        raise argparse.ArgumentTypeError(f"expected a positive finite number, got {text!r}")
    return value


def _finite_float(text: str) -> float:
    value = float(text)
    if value != value or value in (float("inf"), float("-inf")):
        raise argparse.ArgumentTypeError(f"expected a finite number, got {text!r}")
    return value


def _outputs(text: str) -> frozenset:
    names = {t.strip() for t in text.split(",") if t.strip()}
    bad = names - set(OUTPUT_FLAGS)
    if bad:
        raise argparse.ArgumentTypeError(f"unknown output(s): {', '.join(sorted(bad))}")
    return frozenset(names)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinengine", description="Measurement-driven two-spin heat engine."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    cyc = sub.add_parser("cycle", help="run one cycle and print its record")
    cyc.add_argument("--spin-a", type=_spin, default="1/2")
    cyc.add_argument("--spin-b", type=_spin, default="1/2")
    cyc.add_argument("--j", type=_finite_float, default=0.0, help="exchange coupling J")
    cyc.add_argument("--b1", type=_finite_float, required=True, help="field at the hot end")
    cyc.add_argument("--b2", type=_finite_float, required=True, help="field during measurement")
    cyc.add_argument("--kbt", type=_positive_float, default=1.0)
    cyc.add_argument("--meas-a", type=_side, default="x", help="x|y|z|sic|theta=..,phi=..")
    cyc.add_argument("--meas-b", type=_side, default="z", help="x|y|z|theta=..,phi=..")
    cyc.add_argument("--outputs", type=_outputs, default=frozenset(OUTPUT_FLAGS),
                     help="comma list of " + ",".join(OUTPUT_FLAGS) + " (default: all)")
    cyc.add_argument("--format", choices=("json", "csv"), default="json")
    cyc.add_argument("--out", help="output file (default: standard output)")

    swp = sub.add_parser("sweep", help="run a Cartesian sweep from a JSON config")
    swp.add_argument("config", help="path to the JSON sweep configuration")
    swp.add_argument("--out", help="output file (default: standard output)")
    swp.add_argument("--threads", type=int, default=None, help="worker processes")
    swp.add_argument("--format", choices=("json", "csv"), default="csv")

    val = sub.add_parser("validate", help="run the self-validation suite")
    val.add_argument("--tol", type=_positive_float, default=None,
                     help="override every check's tolerance")
    val.add_argument("--groups", default=",".join(GROUPS),
                     help="comma list of " + ",".join(GROUPS))
    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_cycle(args) -> int:
    if args.meas_b == "sic":
        print("error: 'sic' is only supported on side A", file=sys.stderr)
        return 2
    job = PointSpec(args.spin_a, args.spin_b, args.j, args.b1, args.b2, args.kbt,
                     args.meas_a, args.meas_b, args.outputs)
    rec = compute_record(job, detail=args.format == "json")
    if rec["status"].startswith("error") or ";error" in rec["status"]:
        print(rec["status"], file=sys.stderr)
        return 1
    _emit(records_to_csv([rec]) if args.format == "csv" else records_to_json([rec]), args.out)
    return 0


def cmd_sweep(args) -> int:
    if args.threads is not None and args.threads < 1:
        print("error: --threads must be at least 1", file=sys.stderr)
        return 2
    try:
        config = load_config(args.config)
    except ConfigError as exc:
        print(f"error: invalid sweep config: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 2
    records = run_sweep(config, args.threads)
    if args.format == "csv":
        _emit(records_to_csv(records), args.out)
    else:
        _emit(records_to_json(records), args.out)
    return 0


def cmd_validate(args) -> int:
    groups = tuple(g.strip() for g in args.groups.split(",") if g.strip())
    unknown = set(groups) - set(GROUPS)
    if unknown or not groups:
        print(f"error: unknown group(s): {', '.join(sorted(unknown)) or '<none>'}", file=sys.stderr)
        return 2
    ok = True
    for group in run_validation(args.tol, groups):
        print(group.summary())
        for line in group.failures[:10]:
            print(f"    {line}")
        if len(group.failures) > 10:
            print(f"    ... {len(group.failures) - 10} more")
        ok &= group.passed or group.advisory
    return 0 if ok else 1


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"cycle": cmd_cycle, "sweep": cmd_sweep, "validate": cmd_validate}[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
