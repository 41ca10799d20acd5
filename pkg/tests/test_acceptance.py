"""Exit criteria for the package, one test per criterion.

Each test prints a PASS/FAIL line; the lines are repeated in the pytest
terminal summary.
"""

import statistics
import time
from collections import Counter
from decimal import Decimal
from fractions import Fraction

import numpy as np
import pytest

from rsort.baselines import oracle_sort
from rsort.bench import (
    BenchRecord,
    DatasetSpec,
    SplitMix64,
    derive_seed,
    describe,
    fit_scaling,
    generate,
    run_matrix,
    worst_case_constant,
)
from rsort.errors import CellBudgetExceeded
from rsort.extraction import extract
from rsort.hashing import build_count_space, new_space
from rsort.keys import KeySpec, normalize_dataset, strings_to_keys
from rsort.sorting import sort_decimals, sort_integers, sort_strings

PAPER_ARR = ["4.5", "0.3", "2.3", "8.8", "7", "9.2", "4.5", "4.3", "8", "3.2"]
PAPER_SORTED = ["0.3", "2.3", "3.2", "4.3", "4.5", "4.5", "7.0", "8.0", "8.8", "9.2"]
ALPHABET = b"abcdefghijklmnopqrstuvwxyz"


def test_criterion_01_golden_example(criterion):
    out, _ = sort_decimals(PAPER_ARR)
    runs = []
    for _ in range(21):
        t0 = time.perf_counter()
        sort_decimals(PAPER_ARR)
        runs.append(time.perf_counter() - t0)
    median = statistics.median(runs)
    criterion(
        1,
        "golden example",
        out == PAPER_SORTED and median < 1e-3,
        f"output={'exact' if out == PAPER_SORTED else out} median={median * 1e3:.3f}ms (<1ms)",
    )


def test_criterion_02_extraction_cost(criterion):
    _, report = sort_decimals(PAPER_ARR)
    criterion(2, "extraction cost", report.cells_traversed == 17,
              f"cells_traversed={report.cells_traversed} (==17)")


# (range, cd) classes whose dense count space is at most 10^7 cells
NUMERIC_CLASSES = [
    (lo, hi, cd)
    for lo, hi in (("1", "10"), ("1", "100"), ("1", "1000000"))
    for cd in (0, 1, 2, 3)
    if not (hi == "1000000" and cd >= 2)
]


def _numeric_instances(count, seed):
    rng = SplitMix64(seed)
    for i in range(count):
        lo, hi, cd = NUMERIC_CLASSES[rng.next_u64() % len(NUMERIC_CLASSES)]
        # log-uniform sizes over 0..10^4, with an explicit share of empty inputs
        size = 0 if i % 500 == 0 else int(10 ** (4 * rng.next_float()))
        yield DatasetSpec(size, lo, hi, cd, derive_seed(seed, i))


def _string_instances(count, seed, width):
    rng = SplitMix64(seed)
    for _ in range(count):
        size = int(10 ** (3 * rng.next_float()))
        yield [
            bytes(ALPHABET[rng.next_u64() % 26] for _ in range(rng.next_u64() % (width + 1)))
            for _ in range(size)
        ]


def _expected(values):
    # generated numerals are canonical with at most 10 significant digits, so
    # float order is exact and equal floats mean equal strings
    return [v for _, v in oracle_sort([(float(v), v) for v in values])]


def test_float_oracle_agrees_with_decimal_oracle():
    for spec in _numeric_instances(300, seed=5):
        values = generate(spec)
        assert _expected(values) == [str(d) for d in oracle_sort([Decimal(v) for v in values])]


def test_criterion_03_differential(criterion):
    t0 = time.perf_counter()
    mismatches = checked = 0
    for spec in _numeric_instances(10_000, seed=2024):
        values = generate(spec)
        out, _ = sort_decimals(values)
        mismatches += out != _expected(values)
        checked += 1

    # the widest (1, 10^6) classes sit at or beyond the default budget
    for cd in (2,):
        for i in range(2):
            values = generate(DatasetSpec(1000, "1", "1000000", cd, derive_seed(7, i)))
            out, _ = sort_decimals(values)
            mismatches += out != _expected(values)
            checked += 1
    with pytest.raises(CellBudgetExceeded):
        sort_decimals(generate(DatasetSpec(10, "1", "1000000", 3, 1)))

    for values in _string_instances(300, seed=99, width=5):
        mismatches += sort_strings(values) != oracle_sort(values)
        checked += 1
    # length-6 strings need 27^6 cells, above the default budget
    for values in _string_instances(3, seed=100, width=6):
        width = max(map(len, values), default=0)
        cap = 27**6 if width == 6 else None
        mismatches += sort_strings(values, max_cells=cap) != oracle_sort(values)
        checked += 1
    elapsed = time.perf_counter() - t0
    criterion(
        3,
        "differential correctness",
        mismatches == 0 and elapsed < 60,
        f"instances={checked} mismatches={mismatches} elapsed={elapsed:.1f}s (<60s)",
    )


def _invariant_violations(keys, spec):
    violations = 0
    seen = []

    def on_insert(i, space, maps):
        nonlocal violations
        seen.append(keys[i - 1])
        rows = {}
        for k in seen:
            rows.setdefault(k // spec.row_stride, []).append(k % spec.row_stride)
        ok = int(space.counts.sum()) == i and np.count_nonzero(space.counts) <= i
        ok = ok and int(maps.occupied.sum()) <= i
        for r in range(spec.radix):
            if r in rows:
                ok = ok and bool(maps.occupied[r])
                ok = ok and (maps.min_suffix[r], maps.max_suffix[r]) == (min(rows[r]), max(rows[r]))
            else:
                ok = ok and not maps.occupied[r]
        violations += not ok

    space, maps = build_count_space(keys, spec, on_insert=on_insert)
    residual = Counter(keys)

    def on_emit(j, out):
        nonlocal violations
        residual[out[j - 1]] -= 1
        prefix = out[:j]
        ok = all(prefix[i] <= prefix[i + 1] for i in range(j - 1))
        rest = [k for k, c in residual.items() if c > 0]
        ok = ok and (not rest or prefix[-1] <= min(rest))
        violations += not ok

    out = [None] * len(keys)
    report = extract(space, maps, out, on_emit=on_emit)
    violations += report.written != len(keys) or Counter(out) != Counter(keys)
    return violations


def test_criterion_04_loop_invariants(criterion):
    rng = SplitMix64(404)
    violations = 0
    for i in range(1000):
        if i % 4 == 3:
            words = [
                bytes(ALPHABET[rng.next_u64() % 26] for _ in range(rng.next_u64() % 3))
                for _ in range(rng.next_u64() % 60)
            ]
            keys, spec = strings_to_keys(words)
        else:
            n = 1 + rng.next_u64() % 3
            spec = KeySpec(10, n, 1)
            keys = [rng.next_u64() % spec.cells for _ in range(rng.next_u64() % 60)]
        violations += _invariant_violations(keys, spec)
    criterion(4, "loop-invariant suites", violations == 0,
              f"instances=1000 violations={violations}")


@pytest.mark.slow
def test_criterion_05_linearity(criterion):
    t0 = time.perf_counter()
    records = run_matrix([10**3, 10**4, 10**5, 10**6], [("1", "10")], [2],
                         ["recombinant"], trials=3, seed=5)
    report = fit_scaling(records)
    elapsed = time.perf_counter() - t0
    criterion(
        5,
        "linearity",
        0.8 <= report.slope <= 1.3 and elapsed < 120,
        f"slope={report.slope:.3f} in [0.8,1.3] R^2={report.r_squared:.4f} elapsed={elapsed:.1f}s (<120s)",
    )


def test_criterion_06_published_fit(criterion):
    published = {10: 0.00078, 100: 0.00649, 1000: 0.06124, 10000: 0.60279}
    records = [BenchRecord("recombinant", DatasetSpec(n, "1", "10", 1), 0, t)
               for n, t in published.items()]
    slope = fit_scaling(records).slope
    criterion(6, "published-data fit", 0.9 <= slope <= 1.1, f"slope={slope:.4f} in [0.9,1.1]")


def test_criterion_07_worst_case_constant(criterion):
    formula_ok = all(worst_case_constant(d) == Fraction(d + 10 ** (d - 1), d) for d in range(1, 11))
    over = [d for d in range(1, 11) if not worst_case_constant(d) < (10 * d) ** 2]
    criterion(
        7,
        "worst-case constant",
        formula_ok and not over,
        f"formula={'exact' if formula_ok else 'WRONG'} C<(10d)^2 fails for d={over}",
    )


@pytest.mark.slow
def test_criterion_08_cd_insensitivity(criterion):
    records = run_matrix([10**5], [("1", "10")], [0, 2], ["recombinant"], trials=3, seed=8)
    mean = {
        cd: statistics.mean(r.elapsed_seconds for r in records if r.dataset.cd == cd)
        for cd in (0, 2)
    }
    ratio = mean[2] / mean[0]
    criterion(8, "cd insensitivity", 0.5 <= ratio <= 2.0,
              f"t(cd=2)/t(cd=0)={ratio:.3f} in [0.5,2.0]")


def test_criterion_09_budget_safety(criterion):
    spec = KeySpec(10, 12, 12)
    raised = []
    for attempt in (
        lambda: new_space(spec),
        lambda: normalize_dataset(["123456789012"]),
        lambda: sort_integers([10**11]),
        lambda: sort_decimals(["12345678901.2"]),
    ):
        t0 = time.perf_counter()
        try:
            attempt()
        except CellBudgetExceeded:
            raised.append(time.perf_counter() - t0 < 0.1)
        else:
            raised.append(False)
    criterion(9, "budget safety", all(raised), f"CellBudgetExceeded raised promptly: {raised}")


def test_criterion_10_table3_shapes(criterion):
    expected = [
        (("1", "10", 0), ("10", "2", "1")),
        (("1", "10", 1), ("10x10", "10x2", "10x1")),
        (("1", "10", 2), ("10x10x10", "10x22", "10x11")),
        (("1", "100", 0), ("10x10", "10x2", "10x1")),
        (("1", "100", 1), ("10x10x10", "10x22", "10x11")),
    ]
    got = []
    for (lo, hi, cd), shape in expected:
        s = describe(DatasetSpec(0, lo, hi, cd))
        got.append((s.count_array, s.h_min, s.h_max) == shape)
    criterion(10, "Table 3 shapes", all(got), f"rows matched {sum(got)}/5")
