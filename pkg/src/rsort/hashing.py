"""Hashing cycle: counting keys into a dense count space and tracking row bounds.

The n-dimensional count hypercube is stored flat in row-major order, so the
cell of a key is the key itself.  The leading digit selects a *row*; the
remaining ``n - 1`` digits form the row *suffix*.  For every row the traverse
maps record whether it was ever hit and the smallest and largest suffix seen,
which lets extraction skip everything outside ``[min_suffix, max_suffix]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import InvalidKey, SpecMismatch
from .keys import DigitKey, KeySpec

COUNT_DTYPE = np.uint64
NO_SUFFIX = -1

# ufunc.at is faster than bincount once the count space dwarfs the input
_BINCOUNT_RATIO = 4


@dataclass
class CountSpace:
    spec: KeySpec
    counts: np.ndarray
    total_inserted: int = 0


@dataclass
class TraverseMaps:
    """Per-row occupancy flag and suffix bounds (one entry per leading digit)."""

    occupied: np.ndarray
    min_suffix: np.ndarray
    max_suffix: np.ndarray

    def rows(self) -> list[int]:
        return np.flatnonzero(self.occupied).tolist()


@dataclass
class AccessCounter:
    """Tally of count-space and traverse-map reads/writes, for cost assertions."""

    reads: int = 0
    writes: int = 0
    per_call: list[int] = field(default_factory=list)


InsertHook = Callable[[int, CountSpace, TraverseMaps], None]


def new_space(spec: KeySpec, max_cells: int | None = None) -> tuple[CountSpace, TraverseMaps]:
    spec.check_budget(max_cells)
    counts = np.zeros(spec.cells, dtype=COUNT_DTYPE)
    maps = TraverseMaps(
        occupied=np.zeros(spec.radix, dtype=bool),
        min_suffix=np.zeros(spec.radix, dtype=np.int64),
        max_suffix=np.full(spec.radix, NO_SUFFIX, dtype=np.int64),
    )
    return CountSpace(spec, counts), maps


def hash_insert(
    space: CountSpace,
    maps: TraverseMaps,
    k: DigitKey | int,
    counter: AccessCounter | None = None,
) -> None:
    """Count one key and update its row's traverse-map entry.

    Touches one count cell and one traverse-map row, whatever the size of
    the space.
    """
    if isinstance(k, DigitKey):
        if k.spec != space.spec:
            raise SpecMismatch(f"key built for {k.spec}, space is {space.spec}")
        key = k.key
    else:
        key = int(k)
        if not 0 <= key < space.spec.cells:
            raise InvalidKey(f"key {key} outside [0, {space.spec.cells})")
    row, suffix = divmod(key, space.spec.row_stride)

    space.counts[key] += 1
    space.total_inserted += 1
    # count cell read+write, then max_suffix and occupied reads
    reads, writes = 3, 1
    if maps.max_suffix[row] < suffix:
        maps.max_suffix[row] = suffix
        writes += 1
    if not maps.occupied[row]:
        maps.min_suffix[row] = suffix
        maps.occupied[row] = True
        writes += 2
    else:
        reads += 1
        if maps.min_suffix[row] > suffix:
            maps.min_suffix[row] = suffix
            writes += 1
    if counter is not None:
        counter.reads += reads
        counter.writes += writes
        counter.per_call.append(reads + writes)


def _as_key_array(keys: Sequence[int] | np.ndarray, spec: KeySpec) -> np.ndarray:
    arr = np.asarray(keys, dtype=np.int64)
    if arr.ndim != 1:
        raise ValueError("keys must be one-dimensional")
    if arr.size and (arr.min() < 0 or arr.max() >= spec.cells):
        raise InvalidKey(f"keys must lie in [0, {spec.cells})")
    return arr


def build_count_space(
    keys: Sequence[int] | np.ndarray,
    spec: KeySpec,
    max_cells: int | None = None,
    on_insert: InsertHook | None = None,
) -> tuple[CountSpace, TraverseMaps]:
    """Run the hashing cycle over ``keys``.

    With ``on_insert`` set, keys are inserted one at a time through
    ``hash_insert`` and the hook sees ``(i, space, maps)`` after the i-th
    insertion.  Otherwise the same counts and maps are produced in bulk.
    """
    space, maps = new_space(spec, max_cells)
    if on_insert is not None:
        for i, key in enumerate(keys, 1):
            hash_insert(space, maps, key)
            on_insert(i, space, maps)
        return space, maps

    arr = _as_key_array(keys, spec)
    if arr.size == 0:
        return space, maps
    if spec.cells <= _BINCOUNT_RATIO * arr.size:
        space.counts = np.bincount(arr, minlength=spec.cells).astype(COUNT_DTYPE, copy=False)
    else:
        np.add.at(space.counts, arr, 1)
    space.total_inserted = int(arr.size)

    rows, suffixes = np.divmod(arr, spec.row_stride)
    maps.occupied[rows] = True
    lo = np.full(spec.radix, np.iinfo(np.int64).max, dtype=np.int64)
    np.minimum.at(lo, rows, suffixes)
    np.maximum.at(maps.max_suffix, rows, suffixes)
    maps.min_suffix = np.where(maps.occupied, lo, 0)
    return space, maps
