"""Public sorting entry points.

Auxiliary space is ``O(radix ** n)`` for the count space regardless of input
size: the algorithm is not in-place even though extraction overwrites a
buffer.  Equal keys come out as values, not records, so there is no notion of
stability.
"""

from __future__ import annotations

from collections import defaultdict, deque
from typing import Sequence

from . import baselines
from .errors import NegativeValue
from .extraction import ExtractionReport, sort_keys_array
from .keys import (
    DEFAULT_ALPHABET,
    integer_spec,
    keys_to_strings,
    normalize_dataset,
    render_keys,
    strings_to_keys,
)

ALGORITHMS = ("recombinant", "counting", "radix", "bucket", "oracle")
KINDS = ("decimal", "int", "string")


def sort_decimals(
    values: Sequence[str], max_cells: int | None = None, raw: bool = False
) -> tuple[list[str], ExtractionReport]:
    """Sort decimal numerals, returning them padded to the dataset's scale.

    ``["7", "4.5"]`` comes back as ``["4.5", "7.0"]``.  With ``raw=True`` the
    original spellings are returned instead, equal values keeping input order.
    """
    keys, spec = normalize_dataset(values, max_cells)
    ordered, report = sort_keys_array(keys, spec, max_cells)
    if raw:
        return _restore_originals(values, keys, ordered.tolist()), report
    return render_keys(ordered.tolist(), spec), report


def sort_integers_report(
    values: Sequence[int], max_cells: int | None = None
) -> tuple[list[int], ExtractionReport]:
    for v in values:
        if v < 0:
            raise NegativeValue(f"negative values are not supported: {v}")
    spec = integer_spec(values, max_cells)
    ordered, report = sort_keys_array(values, spec, max_cells)
    return ordered.tolist(), report


def sort_integers(values: Sequence[int], max_cells: int | None = None) -> list[int]:
    return sort_integers_report(values, max_cells)[0]


def sort_strings_report(
    values: Sequence[bytes], alphabet: bytes = DEFAULT_ALPHABET, max_cells: int | None = None
) -> tuple[list[bytes], ExtractionReport]:
    keys, spec = strings_to_keys(values, alphabet, max_cells)
    ordered, report = sort_keys_array(keys, spec, max_cells)
    return keys_to_strings(ordered.tolist(), spec, alphabet), report


def sort_strings(
    values: Sequence[bytes], alphabet: bytes = DEFAULT_ALPHABET, max_cells: int | None = None
) -> list[bytes]:
    """Lexicographic sort of byte strings over ``alphabet``; originals are returned."""
    return sort_strings_report(values, alphabet, max_cells)[0]


def _restore_originals(values: Sequence, keys: list[int], ordered: list[int]) -> list:
    by_key: dict[int, deque] = defaultdict(deque)
    for v, k in zip(values, keys):
        by_key[k].append(v)
    return [by_key[k].popleft() for k in ordered]


def sort_values(
    values: Sequence,
    kind: str = "decimal",
    algorithm: str = "recombinant",
    alphabet: bytes = DEFAULT_ALPHABET,
    max_cells: int | None = None,
    raw: bool = False,
) -> tuple[list, ExtractionReport | None]:
    """Dispatch one of ``ALGORITHMS`` over one of ``KINDS`` of input.

    Baselines work on the same integer keys the recombinant path uses, so
    decimal padding and string decoding are identical across algorithms.
    The extraction report is only available for the recombinant algorithm.
    """
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")

    if algorithm == "recombinant":
        if kind == "decimal":
            return sort_decimals(values, max_cells, raw)
        if kind == "int":
            return sort_integers_report(values, max_cells)
        return sort_strings_report(values, alphabet, max_cells)

    if kind == "decimal":
        keys, spec = normalize_dataset(values, max_cells)
    elif kind == "int":
        spec = integer_spec(values, max_cells)
        keys = list(values)
    else:
        keys, spec = strings_to_keys(values, alphabet, max_cells)

    ordered = sort_int_keys(keys, spec.cells, algorithm, max_cells)
    if kind == "decimal":
        if raw:
            return _restore_originals(values, keys, ordered), None
        return render_keys(ordered, spec), None
    if kind == "int":
        return ordered, None
    return keys_to_strings(ordered, spec, alphabet), None


def sort_int_keys(keys: Sequence[int], cells: int, algorithm: str, max_cells: int | None = None) -> list[int]:
    """Run a baseline over integer keys known to lie in ``[0, cells)``."""
    if algorithm == "counting":
        return baselines.counting_sort(keys, cells, max_cells)
    if algorithm == "radix":
        return baselines.radix_sort_lsd(keys)
    if algorithm == "bucket":
        return baselines.bucket_sort(keys, 0, cells)
    if algorithm == "oracle":
        return baselines.oracle_sort(keys)
    raise ValueError(f"not a baseline: {algorithm!r}")
