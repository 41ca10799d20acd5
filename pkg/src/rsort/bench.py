"""Benchmark harness: reproducible datasets, timing matrix, CSV and scaling fits."""

from __future__ import annotations

import csv
import io
import math
import time
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import InsufficientData, InvalidRange
from .extraction import sort_keys_array
from .keys import KeySpec, format_scaled, normalize_dataset
from .sorting import ALGORITHMS, sort_int_keys

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15

CSV_HEADER = (
    "algorithm",
    "n_elements",
    "range_lo",
    "range_hi",
    "cd",
    "trial",
    "seconds",
    "extraction_cost",
)

# Cases wider than this many digits are left out of a matrix by default,
# which keeps (1,100) & cd=2 out exactly as the published table does.
TABLE1_MAX_DIGITS = 3


class SplitMix64:
    """Vigna's splitmix64; integer-only, so streams are identical on every platform."""

    def __init__(self, seed: int) -> None:
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def next_float(self) -> float:
        return (self.next_u64() >> 11) / 2.0**53


def derive_seed(seed: int, index: int) -> int:
    """Independent per-case seed: one splitmix64 step from ``seed + index``."""
    return SplitMix64(seed + index).next_u64()


@dataclass(frozen=True)
class DatasetSpec:
    n_elements: int
    range_lo: str
    range_hi: str
    cd: int
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_elements < 0:
            raise InvalidRange(f"n_elements must be >= 0, got {self.n_elements}")
        if self.cd < 0:
            raise InvalidRange(f"cd must be >= 0, got {self.cd}")
        lo, hi = Decimal(self.range_lo), Decimal(self.range_hi)
        if lo < 0 or not lo < hi:
            raise InvalidRange(f"need 0 <= lo < hi, got [{self.range_lo}, {self.range_hi})")
        if self.mantissa_bounds()[1] <= self.mantissa_bounds()[0]:
            raise InvalidRange(
                f"[{self.range_lo}, {self.range_hi}) holds no value with {self.cd} decimals"
            )

    def mantissa_bounds(self) -> tuple[int, int]:
        """Half-open ``[lo, hi)`` bounds on the scaled integer values."""
        p = Decimal(10) ** self.cd
        return (
            math.ceil(Decimal(self.range_lo) * p),
            math.ceil(Decimal(self.range_hi) * p),
        )

    def key_spec(self) -> KeySpec:
        """Widest key spec any dataset drawn from this spec can need."""
        _, hi = self.mantissa_bounds()
        integer_part = (hi - 1) // 10**self.cd
        return KeySpec.decimal(max(1, len(str(integer_part))), self.cd)

    @property
    def label(self) -> str:
        return f"TFD({self.range_lo},{self.range_hi})&cd={self.cd}"


def splitmix64_block(seed: int, count: int) -> np.ndarray:
    """The first ``count`` outputs of ``SplitMix64(seed)``, computed in one pass.

    The i-th state is ``seed + (i + 1) * gamma`` mod 2**64, so the whole
    stream vectorises with wrap-around uint64 arithmetic.
    """
    steps = np.arange(1, count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed & MASK64) + steps * np.uint64(GOLDEN_GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def _scale_top53(z: np.ndarray, span: int) -> list[int]:
    """``floor((z >> 11) * span / 2**53)`` for each draw, without 128-bit overflow."""
    top = z >> np.uint64(11)
    if span < 2**31:
        hi = (top >> np.uint64(32)) * np.uint64(span)
        lo = ((top & np.uint64(0xFFFFFFFF)) * np.uint64(span)) >> np.uint64(32)
        return ((hi + lo) >> np.uint64(21)).tolist()
    return [(t * span) >> 53 for t in top.tolist()]


def generate(spec: DatasetSpec) -> list[str]:
    """Uniform values over ``[range_lo, range_hi)`` on a grid of ``cd`` decimals.

    Each draw takes the top 53 bits of a splitmix64 output as a fraction of
    ``2**53`` and floors it onto the grid with integer arithmetic, so values
    never reach ``range_hi``.
    """
    lo, hi = spec.mantissa_bounds()
    offsets = _scale_top53(splitmix64_block(spec.seed, spec.n_elements), hi - lo)
    return format_scaled([lo + m for m in offsets], spec.cd)


@dataclass(frozen=True)
class BenchRecord:
    algorithm: str
    dataset: DatasetSpec
    trial: int
    elapsed_seconds: float
    extraction_cost: int | None = None


def _time_recombinant(values: list[str], max_cells: int | None) -> tuple[float, int]:
    t0 = time.perf_counter()
    keys, spec = normalize_dataset(values, max_cells)
    _, report = sort_keys_array(keys, spec, max_cells)
    return time.perf_counter() - t0, report.cells_traversed


def _time_baseline(alg: str, keys: list[int], cells: int, max_cells: int | None) -> float:
    t0 = time.perf_counter()
    sort_int_keys(keys, cells, alg, max_cells)
    return time.perf_counter() - t0


def matrix_cases(
    sizes: Sequence[int],
    ranges: Sequence[tuple[str, str]],
    cds: Sequence[int],
    seed: int,
    max_digits: int | None = TABLE1_MAX_DIGITS,
) -> list[DatasetSpec]:
    """Dataset specs in matrix order (size, then range, then cd)."""
    cases = []
    index = 0
    for n in sizes:
        for lo, hi in ranges:
            for cd in cds:
                probe = DatasetSpec(n, str(lo), str(hi), cd)
                if max_digits is not None and probe.key_spec().total_digits > max_digits:
                    continue
                cases.append(DatasetSpec(n, str(lo), str(hi), cd, derive_seed(seed, index)))
                index += 1
    return cases


def run_matrix(
    sizes: Sequence[int],
    ranges: Sequence[tuple[str, str]],
    cds: Sequence[int],
    algorithms: Sequence[str] = ("recombinant",),
    trials: int = 3,
    seed: int = 0,
    max_cells: int | None = None,
    max_digits: int | None = TABLE1_MAX_DIGITS,
) -> list[BenchRecord]:
    """Time every algorithm on every case, ``trials`` times each, sequentially.

    The recombinant timing covers normalisation, hashing and extraction.
    Baselines are handed the already-scaled integer keys and only their sort
    call is timed.  Dataset generation is never timed.
    """
    for alg in algorithms:
        if alg not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {alg!r}")
    if trials < 0:
        raise ValueError("trials must be >= 0")
    records: list[BenchRecord] = []
    if trials == 0:
        return records
    for case in matrix_cases(sizes, ranges, cds, seed, max_digits):
        case.key_spec().check_budget(max_cells)
        values = generate(case)
        keys, kspec = normalize_dataset(values, max_cells)
        for alg in algorithms:
            for trial in range(trials):
                if alg == "recombinant":
                    secs, cost = _time_recombinant(values, max_cells)
                    records.append(BenchRecord(alg, case, trial, secs, cost))
                else:
                    secs = _time_baseline(alg, keys, kspec.cells, max_cells)
                    records.append(BenchRecord(alg, case, trial, secs))
    return records


def emit_csv(records: Iterable[BenchRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        d = r.dataset
        w.writerow(
            [
                r.algorithm,
                d.n_elements,
                d.range_lo,
                d.range_hi,
                d.cd,
                r.trial,
                repr(r.elapsed_seconds),
                "" if r.extraction_cost is None else r.extraction_cost,
            ]
        )
    return buf.getvalue()


def parse_csv(text: str) -> list[BenchRecord]:
    """Read records written by ``emit_csv``; raises ``ValueError`` on malformed input.

    The per-case seed is not part of the schema and comes back as 0.
    """
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != CSV_HEADER:
        raise ValueError("missing or unexpected CSV header")
    records = []
    for lineno, row in enumerate(rows[1:], 2):
        if not row:
            continue
        if len(row) != len(CSV_HEADER):
            raise ValueError(f"line {lineno}: expected {len(CSV_HEADER)} fields, got {len(row)}")
        alg, n, lo, hi, cd, trial, secs, cost = row
        try:
            records.append(
                BenchRecord(
                    alg,
                    DatasetSpec(int(n), lo, hi, int(cd)),
                    int(trial),
                    float(secs),
                    int(cost) if cost else None,
                )
            )
        except (ArithmeticError, ValueError) as exc:
            raise ValueError(f"line {lineno}: {exc}") from exc
    return records


def worst_case_constant(d: int) -> Fraction:
    """Multiplier ``1 + 10**(d-1) / d`` of the worst-case bound ``O(n * C)``."""
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    return 1 + Fraction(10 ** (d - 1), d)


@dataclass(frozen=True)
class ScalingReport:
    slope: float
    intercept: float
    r_squared: float
    sizes: tuple[int, ...]
    mean_seconds: tuple[float, ...]
    constants: tuple[tuple[int, Fraction], ...]

    def render(self, title: str = "") -> str:
        lines = [title] if title else []
        lines.append(f"  log-log slope  {self.slope:.4f}")
        lines.append(f"  intercept      {self.intercept:.4f}")
        lines.append(f"  R^2            {self.r_squared:.4f}")
        lines.append("  N          mean seconds")
        for n, t in zip(self.sizes, self.mean_seconds):
            lines.append(f"  {n:<10d} {t:.6g}")
        lines.append("  d   C = 1 + 10^(d-1)/d      (10d)^2")
        for d, c in self.constants:
            lines.append(f"  {d:<3d} {float(c):<22.6g} {(10 * d) ** 2}")
        return "\n".join(lines)

    def plot_data(self) -> str:
        """Two whitespace-separated columns: log10 N and log10 mean seconds."""
        return "".join(
            f"{math.log10(n):.6f} {math.log10(t):.6f}\n"
            for n, t in zip(self.sizes, self.mean_seconds)
        )


def loglog_fit(sizes: Sequence[float], times: Sequence[float]) -> tuple[float, float, float]:
    """Ordinary least squares of ``ln t`` on ``ln N``: (slope, intercept, R^2)."""
    x = np.log(np.asarray(sizes, dtype=float))
    y = np.log(np.asarray(times, dtype=float))
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 - float((resid**2).sum()) / ss_tot if ss_tot > 0 else 1.0
    return float(slope), float(intercept), r2


def fit_scaling(records: Iterable[BenchRecord], max_d: int = 10) -> ScalingReport:
    """Fit log mean time against log size for one algorithm/case."""
    by_size: dict[int, list[float]] = {}
    for r in records:
        by_size.setdefault(r.dataset.n_elements, []).append(r.elapsed_seconds)
    sizes = sorted(n for n in by_size if n > 0)
    if len(sizes) < 3:
        raise InsufficientData(f"need at least 3 distinct sizes, got {len(sizes)}")
    means = [sum(by_size[n]) / len(by_size[n]) for n in sizes]
    if min(means) <= 0:
        raise InsufficientData("mean times must be positive for a log-log fit")
    slope, intercept, r2 = loglog_fit(sizes, means)
    constants = tuple((d, worst_case_constant(d)) for d in range(1, max_d + 1))
    return ScalingReport(slope, intercept, r2, tuple(sizes), tuple(means), constants)


@dataclass(frozen=True)
class TableShape:
    """Count-array and traverse-map dimensions in the published table's notation."""

    count_array: str
    h_min: str
    h_max: str
    cells: int


def describe(spec: DatasetSpec) -> TableShape:
    """Shapes of the structures a dataset spec needs.

    A single-digit key has no suffix, so its maps collapse to one entry of
    width 2 (flag, min) and 1 (max); wider keys get one such entry per
    leading digit with one column per suffix digit.
    """
    ks = spec.key_spec()
    n = ks.total_digits
    count_array = "x".join([str(ks.radix)] * n)
    suffix_cols = max(1, n - 1)
    row_prefix = f"{ks.radix}x" if n > 1 else ""
    return TableShape(
        count_array=count_array,
        h_min=row_prefix + "2" * suffix_cols,
        h_max=row_prefix + "1" * suffix_cols,
        cells=ks.cells,
    )


def summary_table(records: Sequence[BenchRecord], algorithm: str) -> str:
    """Mean seconds laid out sizes x cases, one column per (range, cd)."""
    cols: list[str] = []
    cells: dict[tuple[int, str], list[float]] = {}
    for r in records:
        if r.algorithm != algorithm:
            continue
        label = r.dataset.label
        if label not in cols:
            cols.append(label)
        cells.setdefault((r.dataset.n_elements, label), []).append(r.elapsed_seconds)
    sizes = sorted({n for n, _ in cells})
    width = max([len(c) for c in cols] + [12])
    lines = [f"{algorithm}: mean time (s)", "N".ljust(12) + "".join(c.rjust(width + 2) for c in cols)]
    for n in sizes:
        row = str(n).ljust(12)
        for c in cols:
            ts = cells.get((n, c))
            row += (f"{sum(ts) / len(ts):.6f}" if ts else "-").rjust(width + 2)
        lines.append(row)
    return "\n".join(lines)
