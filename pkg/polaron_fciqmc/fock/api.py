# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Matrix elements of the Lee-Low-Pines Hamiltonian.

In units :math:`\\hbar\\omega_{LO} = l_0 = 1` the Hamiltonian reads

.. math::

    H = \\sum_j n_j + \\Big(P - \\sum_j \\kappa_j n_j\\Big)^2
        - g \\sum_j (a_j^\\dagger + a_j),
    \\qquad \\kappa_j = 2\\pi j/L, \\quad g = \\sqrt{2\\alpha/L}.

The functions taking ``states`` work on ``(n, M)`` ``uint8`` arrays, one
Fock state per row; the others on :class:`~.models.FockState`.
"""

import math
from collections import defaultdict
from typing import List, NamedTuple, Tuple

import numpy as np

from ..qmc.models import WalkerVector
from .errors import OccupancyOverflowError
from .models import MAX_OCCUPATION, FockState, ModelParams, OffDiagonal


def mode_grid(params: ModelParams) -> np.ndarray:
    """Momenta :math:`\\kappa_j = 2\\pi j/L` in ascending order."""
    j = np.arange(-params.max_mode_index, params.max_mode_index + 1)
    return 2.0 * math.pi * j / params.box_length


def diagonal_energies(states: np.ndarray, params: ModelParams) -> np.ndarray:
    """Diagonal matrix elements of every row of ``states``."""
    n = np.asarray(states, dtype=np.float64)
    recoil = params.total_momentum - n @ mode_grid(params)
    return n.sum(axis=1) + recoil ** 2


def diagonal_energy(state: FockState, params: ModelParams) -> float:
    """:math:`\\sum_j n_j + (P - \\sum_j \\kappa_j n_j)^2`."""
    return float(diagonal_energies(state.as_array()[None, :], params)[0])


def connection_counts(states: np.ndarray) -> np.ndarray:
    """Off-diagonal elements per row: :math:`M + \\#occupied`."""
    return states.shape[1] + np.count_nonzero(states, axis=1)


def excitations(states: np.ndarray, params: ModelParams
                ) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Every off-diagonal connection of every row of ``states``.

    Returns ``(source, targets, amplitudes)``: the row index each
    connection starts from, the target occupations and the matrix element.
    Connections of a row are listed creation first (ascending mode), then
    annihilation (ascending occupied mode).
    """
    states = np.asarray(states, dtype=np.uint8)
    rows, modes = states.shape
    g = params.coupling

    create_src = np.repeat(np.arange(rows), modes)
    create_mode = np.tile(np.arange(modes), rows)
    create_n = states[create_src, create_mode]
    if np.any(create_n == MAX_OCCUPATION):
        bad = create_mode[np.argmax(create_n == MAX_OCCUPATION)]
        raise OccupancyOverflowError(int(bad) - params.max_mode_index)
    create_targets = states[create_src]
    create_targets[np.arange(len(create_src)), create_mode] += 1
    create_amps = -g * np.sqrt(create_n + 1.0)

    ann_src, ann_mode = np.nonzero(states)
    ann_n = states[ann_src, ann_mode]
    ann_targets = states[ann_src]
    ann_targets[np.arange(len(ann_src)), ann_mode] -= 1
    ann_amps = -g * np.sqrt(ann_n.astype(np.float64))

    source = np.concatenate([create_src, ann_src])
    order = np.argsort(source, kind='stable')
    targets = np.concatenate([create_targets, ann_targets])[order]
    amplitudes = np.concatenate([create_amps, ann_amps])[order]
    return source[order], targets, amplitudes


def offdiagonals(state: FockState, params: ModelParams) -> List[OffDiagonal]:
    """States reachable by one phonon creation or annihilation."""
    _, targets, amplitudes = excitations(state.as_array()[None, :], params)
    return [OffDiagonal(FockState(row.tobytes()), float(h))
            for row, h in zip(targets, amplitudes)]


def parity_reflect(state: FockState) -> FockState:
    """Mirror the occupations, :math:`j \\to -j`."""
    return FockState(state.occupations[::-1])


def reflect_rows(states: np.ndarray) -> np.ndarray:
    """Mirror every row of ``states``."""
    return np.ascontiguousarray(states[:, ::-1])


def continuum_threshold_state(ground: WalkerVector,
                              params: ModelParams) -> WalkerVector:
    """Apply :math:`a_0^\\dagger - g` to ``ground`` (no normalization)."""
    states, coeffs = ground.states, ground.coeffs
    zero = params.zero_mode
    if np.any(states[:, zero] == MAX_OCCUPATION):
        raise OccupancyOverflowError(0)
    created = states.copy()
    created[:, zero] += 1
    raised = coeffs * np.sqrt(states[:, zero] + 1.0)
    return WalkerVector(np.concatenate([created, states]),
                        np.concatenate([raised, -params.coupling * coeffs]))


class FreeLevel(NamedTuple):
    """Energy level of the uncoupled (:math:`\\alpha=0`) Hamiltonian."""

    energy: float
    phonons: int
    momentum_index: int
    degeneracy: int


def free_spectrum(params: ModelParams, max_phonons: int,
                  max_per_mode: int = MAX_OCCUPATION) -> List[FreeLevel]:
    """Levels :math:`a + (P - 2\\pi b/L)^2` of states with at most
    ``max_phonons`` phonons, counted by total momentum index ``b``."""
    counts = {(0, 0): 1}
    for j in range(-params.max_mode_index, params.max_mode_index + 1):
        updated = defaultdict(int)
        for (a, b), count in counts.items():
            for n in range(0, min(max_phonons - a, max_per_mode) + 1):
                updated[(a + n, b + n * j)] += count
        counts = updated
    levels = [
        FreeLevel(a + (params.total_momentum
                       - 2 * math.pi * b / params.box_length) ** 2,
                  a, b, count)
        for (a, b), count in counts.items()
    ]
    return sorted(levels)
