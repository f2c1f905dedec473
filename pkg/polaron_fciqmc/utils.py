# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Utilities for Polaron FCIQMC."""

from __future__ import absolute_import, print_function

import csv
from typing import Iterator, List, Sequence, Tuple

import numpy as np

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


def chunk_slices(length: int, size: int) -> Iterator[slice]:
    """Yield successive ``size``-long slices covering ``range(length)``."""
    for start in range(0, length, size):
        yield slice(start, min(start + size, length))


def mix64(x: np.ndarray) -> np.ndarray:
    """SplitMix64 finalizer applied element-wise to a ``uint64`` array."""
    x = np.asarray(x, dtype=np.uint64)
    x = (x ^ (x >> np.uint64(30))) * _MIX1
    x = (x ^ (x >> np.uint64(27))) * _MIX2
    return x ^ (x >> np.uint64(31))


def hash_rows(rows: np.ndarray) -> np.ndarray:
    """64-bit hash of every row of a ``uint8`` occupation array."""
    rows = np.asarray(rows, dtype=np.uint8)
    h = np.full(rows.shape[0], _GOLDEN, dtype=np.uint64)
    salts = np.arange(1, rows.shape[1] + 1, dtype=np.uint64) * _GOLDEN
    for column in range(rows.shape[1]):
        h = mix64(h ^ (rows[:, column].astype(np.uint64) + salts[column]))
    return h


def lexsort_rows(rows: np.ndarray) -> np.ndarray:
    """Stable permutation sorting rows lexicographically (column 0 first)."""
    if rows.shape[0] == 0:
        return np.zeros(0, dtype=np.intp)
    return np.lexsort(rows.T[::-1])


def merge_rows(rows: np.ndarray, values: np.ndarray
               ) -> Tuple[np.ndarray, np.ndarray]:
    """Sum ``values`` of identical rows.

    Returns the distinct rows in lexicographic order and the summed values.
    ``values`` may be one- or two-dimensional (one column per quantity).
    Equal rows are summed in their input order, so the result only depends
    on the order of the contributions, not on how they were produced.
    """
    rows = np.asarray(rows, dtype=np.uint8)
    values = np.asarray(values, dtype=np.float64)
    if rows.shape[0] == 0:
        return rows.reshape(0, rows.shape[1]), values
    order = lexsort_rows(rows)
    rows = rows[order]
    values = values[order]
    starts = np.ones(rows.shape[0], dtype=bool)
    starts[1:] = np.any(rows[1:] != rows[:-1], axis=1)
    starts = np.flatnonzero(starts)
    return rows[starts], np.add.reduceat(values, starts, axis=0)


def find_rows(table: np.ndarray, table_hashes: np.ndarray,
              table_order: np.ndarray, rows: np.ndarray) -> np.ndarray:
    """Position of every row of ``rows`` in ``table`` (``-1`` if absent).

    ``table_hashes`` are :func:`hash_rows` of ``table`` and ``table_order``
    the permutation sorting them.
    """
    if rows.shape[0] == 0:
        return np.zeros(0, dtype=np.intp)
    hashes = hash_rows(rows)
    sorted_hashes = table_hashes[table_order]
    pos = np.searchsorted(sorted_hashes, hashes)
    pos = np.minimum(pos, len(sorted_hashes) - 1)
    found = sorted_hashes[pos] == hashes
    index = np.where(found, table_order[pos], -1)
    hit = index >= 0
    if np.any(np.any(table[index[hit]] != rows[hit], axis=1)):
        raise RuntimeError('64-bit row hash collision')
    return index


def write_tsv(path: str, header: Sequence[str], rows: List[Sequence],
              comments: Sequence[str] = ()):
    """Write a UTF-8 tab-separated file with ``#`` comment lines first."""
    with open(path, 'w', encoding='utf-8', newline='') as fp:
        for line in comments:
            fp.write(f'# {line}\n')
        writer = csv.writer(fp, delimiter='\t', lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow([_tsv_cell(v) for v in row])


def _tsv_cell(value):
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, np.integer):
        return int(value)
    return value
