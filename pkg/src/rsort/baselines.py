"""Parent algorithms and a comparison oracle.

These are written plainly, without micro-optimisation, so that benchmark
numbers reflect algorithmic shape rather than tuning effort.
"""

from __future__ import annotations

from typing import Any, Callable, Sequence

from .errors import NegativeValue, OutOfRange, RangeExceeded
from .keys import DEFAULT_MAX_CELLS


def oracle_sort(values: Sequence[Any]) -> list[Any]:
    """Ground truth: Python's built-in comparison sort."""
    return sorted(values)


def counting_sort(
    values: Sequence[int], k: int | None = None, max_cells: int | None = None
) -> list[int]:
    """Stable counting sort of integers in ``[0, k)``; ``k`` defaults to ``max + 1``."""
    if not values:
        return []
    if k is None:
        k = max(values) + 1
    budget = DEFAULT_MAX_CELLS if max_cells is None else max_cells
    if k > budget:
        raise RangeExceeded(f"counting range {k} exceeds budget {budget}")
    counts = [0] * k
    for v in values:
        if not 0 <= v < k:
            raise RangeExceeded(f"value {v} outside [0, {k})")
        counts[v] += 1
    start = 0
    for i, c in enumerate(counts):
        counts[i] = start
        start += c
    out = [0] * len(values)
    for v in values:
        out[counts[v]] = v
        counts[v] += 1
    return out


def radix_sort_lsd(
    values: Sequence[Any], base: int = 10, key: Callable[[Any], int] | None = None
) -> list[Any]:
    """Least-significant-digit radix sort with one stable bucketing pass per digit."""
    items = list(values)
    if not items:
        return items
    keyf = key if key is not None else (lambda v: v)
    keys = [keyf(v) for v in items]
    if min(keys) < 0:
        raise NegativeValue("radix sort needs non-negative keys")
    largest = max(keys)
    exp = 1
    while True:
        buckets: list[list[int]] = [[] for _ in range(base)]
        for i, kv in enumerate(keys):
            buckets[(kv // exp) % base].append(i)
        order = [i for b in buckets for i in b]
        items = [items[i] for i in order]
        keys = [keys[i] for i in order]
        exp *= base
        if exp > largest:
            return items


def _insertion_sort(xs: list[Any]) -> None:
    for i in range(1, len(xs)):
        v = xs[i]
        j = i - 1
        while j >= 0 and xs[j] > v:
            xs[j + 1] = xs[j]
            j -= 1
        xs[j + 1] = v


def bucket_sort(
    values: Sequence[Any], lo: Any, hi: Any, bucket_count: int | None = None
) -> list[Any]:
    """Distribute values of ``[lo, hi)`` over equal-width buckets, insertion-sort each.

    ``bucket_count`` defaults to the input length.
    """
    if not lo < hi:
        raise OutOfRange(f"empty range [{lo}, {hi})")
    n = len(values)
    if bucket_count is None:
        bucket_count = max(1, n)
    if bucket_count < 1:
        raise ValueError("bucket_count must be >= 1")
    width = hi - lo
    buckets: list[list[Any]] = [[] for _ in range(bucket_count)]
    for v in values:
        if not lo <= v < hi:
            raise OutOfRange(f"value {v} outside [{lo}, {hi})")
        b = int((v - lo) * bucket_count // width)
        buckets[min(b, bucket_count - 1)].append(v)
    out: list[Any] = []
    for b in buckets:
        _insertion_sort(b)
        out.extend(b)
    return out
