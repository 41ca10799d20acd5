"""``rsort`` command line: sort, bench, analyze, describe.

Exit codes: 0 success, 1 user error, 2 internal error.  Data goes to stdout,
every diagnostic to stderr.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Sequence

from . import bench
from .errors import RSortError
from .keys import DEFAULT_ALPHABET
from .sorting import ALGORITHMS, sort_values

ENV_MAX_CELLS = "RSORT_MAX_CELLS"


class UsageError(RSortError):
    pass


def _csv_ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _range(text: str) -> tuple[str, str]:
    lo, sep, hi = text.partition(":")
    if not sep or not lo or not hi:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}")
    return lo, hi


def _max_cells(args: argparse.Namespace) -> int | None:
    if args.max_cells is not None:
        return args.max_cells
    env = os.environ.get(ENV_MAX_CELLS)
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{ENV_MAX_CELLS} must be an integer, got {env!r}")
    return None


def _read_input(path: str | None) -> bytes:
    if path is None or path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def cmd_sort(args: argparse.Namespace) -> int:
    data = _read_input(args.file)
    lines = data.split(b"\n")
    if lines and lines[-1] == b"":
        lines.pop()
    lines = [ln[:-1] if ln.endswith(b"\r") else ln for ln in lines]

    if args.type == "string":
        values: list = lines
    else:
        texts = [ln.decode("ascii", "replace").strip() for ln in lines]
        texts = [t for t in texts if t]
        if args.type == "int":
            values = []
            for t in texts:
                if not t.lstrip("-").isdigit():
                    raise UsageError(f"not an integer: {t!r}")
                values.append(int(t))
        else:
            values = texts

    result, report = sort_values(
        values,
        kind=args.type,
        algorithm=args.alg,
        alphabet=args.alphabet.encode(),
        max_cells=_max_cells(args),
        raw=args.raw,
    )
    out = sys.stdout.buffer
    for v in result:
        out.write(v if isinstance(v, bytes) else str(v).encode())
        out.write(b"\n")
    out.flush()
    if args.report:
        if report is None:
            print(f"no extraction report for --alg {args.alg}", file=sys.stderr)
        else:
            print(
                f"written={report.written} cells_traversed={report.cells_traversed}",
                file=sys.stderr,
            )
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    algs = [a for a in args.algs.split(",") if a]
    for a in algs:
        if a not in ALGORITHMS:
            raise UsageError(f"unknown algorithm {a!r}; choose from {', '.join(ALGORITHMS)}")
    ranges = args.range or [("1", "10")]
    records = bench.run_matrix(
        sizes=args.sizes,
        ranges=ranges,
        cds=args.cd,
        algorithms=algs,
        trials=args.trials,
        seed=args.seed,
        max_cells=_max_cells(args),
        max_digits=None if args.max_digits <= 0 else args.max_digits,
    )
    Path(args.out).write_text(bench.emit_csv(records))
    print(f"wrote {len(records)} records to {args.out}", file=sys.stderr)
    for alg in algs:
        if any(r.algorithm == alg for r in records):
            print(bench.summary_table(records, alg))
            print()
    return 0


def cmd_analyze(args: argparse.Namespace) -> int:
    try:
        records = bench.parse_csv(Path(args.input).read_text())
    except ValueError as exc:
        raise UsageError(f"malformed CSV {args.input}: {exc}")
    groups: dict[tuple[str, str], list[bench.BenchRecord]] = {}
    for r in records:
        groups.setdefault((r.algorithm, r.dataset.label), []).append(r)
    if not groups:
        raise UsageError(f"{args.input} holds no records")
    reports = [(key, bench.fit_scaling(rs)) for key, rs in groups.items()]
    plot_lines = []
    for (alg, label), rep in reports:
        print(rep.render(f"{alg} {label}"))
        print()
        plot_lines.append(f"# {alg} {label}\n" + rep.plot_data())
    if args.plot_data:
        Path(args.plot_data).write_text("\n".join(plot_lines))
        print(f"wrote plot data to {args.plot_data}", file=sys.stderr)
    return 0


def cmd_describe(args: argparse.Namespace) -> int:
    print("case                    count array      H_Min      H_Max      cells")
    for lo, hi in args.range or [("1", "10")]:
        for cd in args.cd:
            spec = bench.DatasetSpec(0, lo, hi, cd)
            shape = bench.describe(spec)
            print(
                f"{spec.label:<24}{shape.count_array:<17}{shape.h_min:<11}"
                f"{shape.h_max:<11}{shape.cells}"
            )
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rsort", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sort", help="sort newline-delimited values")
    s.add_argument("file", nargs="?", help="input file (default: stdin)")
    s.add_argument("--alg", choices=ALGORITHMS, default="recombinant")
    s.add_argument("--type", choices=("decimal", "int", "string"), default="decimal")
    s.add_argument("--alphabet", default=DEFAULT_ALPHABET.decode())
    s.add_argument("--max-cells", type=int, default=None)
    s.add_argument("--report", action="store_true", help="print the extraction report to stderr")
    s.add_argument("--raw", action="store_true", help="keep original spellings (no zero padding)")
    s.set_defaults(func=cmd_sort)

    b = sub.add_parser("bench", help="run a timing matrix and write CSV")
    b.add_argument("--sizes", type=_csv_ints, default=[10, 100, 1000, 10000])
    b.add_argument("--range", type=_range, action="append", help="lo:hi, repeatable")
    b.add_argument("--cd", type=_csv_ints, default=[0, 1, 2])
    b.add_argument("--algs", default="recombinant")
    b.add_argument("--trials", type=int, default=3)
    b.add_argument("--seed", type=int, default=42)
    b.add_argument("--out", default="bench.csv")
    b.add_argument("--max-cells", type=int, default=None)
    b.add_argument(
        "--max-digits",
        type=int,
        default=bench.TABLE1_MAX_DIGITS,
        help="skip cases whose keys are wider than this (<= 0 disables)",
    )
    b.set_defaults(func=cmd_bench)

    a = sub.add_parser("analyze", help="fit log-log scaling to a bench CSV")
    a.add_argument("--in", dest="input", required=True)
    a.add_argument("--plot-data", default=None)
    a.set_defaults(func=cmd_analyze)

    d = sub.add_parser("describe", help="count-array and traverse-map shapes per case")
    d.add_argument("--range", type=_range, action="append")
    d.add_argument("--cd", type=_csv_ints, default=[0, 1, 2])
    d.set_defaults(func=cmd_describe)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except RSortError as exc:
        print(f"rsort: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"rsort: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001
        print(f"rsort: internal error: {exc!r}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
