# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.
"""Test helpers."""

import numpy as np

from polaron_fciqmc.fock.models import FockState
from polaron_fciqmc.qmc.models import WalkerVector


def vector(entries, num_modes=3):
    """Walker vector from ``{'n1,n2,n3': coeff}``."""
    return WalkerVector.from_dict(
        {FockState.parse(k): v for k, v in entries.items()},
        num_modes=num_modes)


def dense(vector_, rows):
    """Coefficients of ``vector_`` over the basis ``rows``."""
    return np.array([vector_.get(FockState(row.tobytes())) for row in rows])


def ar1_series(length, phi, seed=7):
    """Autocorrelated series :math:`x_t = \\phi x_{t-1} + \\epsilon_t`."""
    rng = np.random.default_rng(seed)
    noise = rng.standard_normal(length)
    series = np.empty(length)
    series[0] = noise[0]
    for t in range(1, length):
        series[t] = phi * series[t - 1] + noise[t]
    return series


def read_tsv(path):
    """Header and rows of a TSV file, comment lines skipped."""
    with open(path, encoding='utf-8') as fp:
        lines = [line.rstrip('\n') for line in fp
                 if not line.startswith('#')]
    return lines[0].split('\t'), [line.split('\t') for line in lines[1:]]
