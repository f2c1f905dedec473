# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Blocking analysis of correlated time series.

The series is repeatedly replaced by the averages of neighbouring pairs.
The naive standard error grows with the block size until the blocks are
longer than the correlation time, where it levels off. The first level
whose error lies within 10% of the two following levels is taken as the
plateau.
"""

from typing import Sequence

import numpy as np

from .errors import SeriesTooShortError
from .models import BlockingLevel, BlockingResult, Estimate

MIN_BLOCKS = 16
"""Fewest blocks a level needs to take part in the plateau search."""

PLATEAU_TOLERANCE = 0.1


def blocking_levels(series: np.ndarray):
    """Naive standard error of the block means at every level."""
    x = np.asarray(series, dtype=np.float64)
    levels = []
    level = 0
    while len(x) >= 2:
        blocks = len(x)
        error = float(np.sqrt(x.var(ddof=1) / blocks))
        levels.append(BlockingLevel(level, blocks, error,
                                    error / np.sqrt(2.0 * (blocks - 1))))
        x = x[:blocks - blocks % 2]
        x = 0.5 * (x[0::2] + x[1::2])
        level += 1
    return levels


def _plateau(levels):
    usable = [lv for lv in levels if lv.blocks >= MIN_BLOCKS]
    for first, *following in zip(usable, usable[1:], usable[2:]):
        if all(abs(lv.error - first.error)
               <= PLATEAU_TOLERANCE * first.error for lv in following):
            return first
    return None


def blocking_error(series: Sequence[float],
                   min_length: int = 32) -> BlockingResult:
    """Mean of ``series`` and its blocking error bar.

    When no level qualifies as plateau the largest error over the levels
    with at least :data:`MIN_BLOCKS` blocks is returned and ``plateau`` is
    ``False``.
    """
    x = np.asarray(series, dtype=np.float64)
    if len(x) < min_length:
        raise SeriesTooShortError(len(x), min_length)
    levels = blocking_levels(x)
    found = _plateau(levels)
    if found is not None:
        error, plateau = found.error, True
    else:
        usable = [lv.error for lv in levels if lv.blocks >= MIN_BLOCKS] \
            or [levels[0].error]
        error, plateau = max(usable), False
    return BlockingResult(float(x.mean()), error, plateau, len(x), levels)


def ratio_error(numerators: Sequence[float], denominators: Sequence[float],
                min_length: int = 32) -> Estimate:
    """Ratio of means :math:`\\bar a/\\bar b` with a delta-method error.

    The error is the blocked error of the linearized series
    :math:`(a_i - R b_i)/\\bar b`. A single sample has error zero and
    series shorter than ``min_length`` use the naive standard error.
    """
    a = np.asarray(numerators, dtype=np.float64)
    b = np.asarray(denominators, dtype=np.float64)
    ratio = a.mean() / b.mean()
    if len(a) < 2:
        return Estimate(float(ratio), 0.0)
    linear = (a - ratio * b) / b.mean()
    if len(a) < min_length:
        return Estimate(float(ratio),
                        float(linear.std(ddof=1) / np.sqrt(len(a))))
    return Estimate(float(ratio),
                    blocking_error(linear, min_length=min_length).error)
