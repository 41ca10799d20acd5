"""Extraction cycle: raster-scanning the count space into sorted output.

Rows are visited in ascending leading digit; unoccupied rows are skipped
outright and occupied rows are scanned only over ``[min_suffix, max_suffix]``.
Each non-empty cell emits its key ``count`` times.  The scan stops the moment
every inserted key has been written.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, MutableSequence, Sequence

import numpy as np

from .errors import BufferTooSmall
from .hashing import CountSpace, TraverseMaps, build_count_space
from .keys import KeySpec

EmitHook = Callable[[int, MutableSequence[int]], None]


@dataclass(frozen=True)
class ExtractionReport:
    written: int
    cells_traversed: int


def extract(
    space: CountSpace,
    maps: TraverseMaps,
    out: MutableSequence[int] | np.ndarray,
    on_emit: EmitHook | None = None,
) -> ExtractionReport:
    """Overwrite ``out[:total_inserted]`` with the inserted keys in sorted order.

    ``cells_traversed`` counts every count-space cell read.  Passing
    ``on_emit`` switches to a cell-by-cell scan that calls
    ``on_emit(written, out)`` after each single emission.
    """
    total = space.total_inserted
    if len(out) < total:
        raise BufferTooSmall(f"buffer holds {len(out)} keys, {total} were inserted")
    if on_emit is not None:
        return _extract_cellwise(space, maps, out, on_emit)

    counts = space.counts
    stride = space.spec.row_stride
    is_array = isinstance(out, np.ndarray)
    written = cells = 0
    for row in np.flatnonzero(maps.occupied).tolist():
        if written == total:
            break
        lo = row * stride + int(maps.min_suffix[row])
        hi = row * stride + int(maps.max_suffix[row])
        seg = counts[lo : hi + 1]
        nz = np.flatnonzero(seg != 0)
        reps = seg[nz].astype(np.int64)
        need = total - written
        cum = np.cumsum(reps)
        if cum.size and cum[-1] >= need:
            # early exit inside this row
            last = int(np.searchsorted(cum, need))
            nz, reps = nz[: last + 1], reps[: last + 1]
            reps[-1] -= int(cum[last]) - need
            cells += int(nz[-1]) + 1
        else:
            cells += seg.size
        block = np.repeat(lo + nz, reps)
        out[written : written + block.size] = block if is_array else block.tolist()
        written += block.size
    return ExtractionReport(written, cells)


def _extract_cellwise(
    space: CountSpace, maps: TraverseMaps, out: MutableSequence[int], on_emit: EmitHook
) -> ExtractionReport:
    counts = space.counts
    total = space.total_inserted
    stride = space.spec.row_stride
    written = cells = 0
    for row in range(space.spec.radix):
        if not maps.occupied[row]:
            continue
        base = row * stride
        for suffix in range(int(maps.min_suffix[row]), int(maps.max_suffix[row]) + 1):
            cells += 1
            c = int(counts[base + suffix])
            for _ in range(c):
                out[written] = base + suffix
                written += 1
                on_emit(written, out)
            if c and written == total:
                return ExtractionReport(written, cells)
    return ExtractionReport(written, cells)


def sort_keys_array(
    keys: Sequence[int] | np.ndarray, spec: KeySpec, max_cells: int | None = None
) -> tuple[np.ndarray, ExtractionReport]:
    space, maps = build_count_space(keys, spec, max_cells)
    out = np.empty(space.total_inserted, dtype=np.int64)
    report = extract(space, maps, out)
    return out, report


def sort_keys(
    keys: Sequence[int] | np.ndarray, spec: KeySpec, max_cells: int | None = None
) -> tuple[list[int], ExtractionReport]:
    """Hashing cycle followed by extraction cycle; returns sorted keys."""
    out, report = sort_keys_array(keys, spec, max_cells)
    return out.tolist(), report
