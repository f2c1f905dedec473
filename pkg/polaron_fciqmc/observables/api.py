# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Estimators for energies, phonon densities and spectral weights.

Diagonal observables are estimated with two independent replicas of the
same eigenstate,

.. math::

    \\langle O \\rangle = \\frac{\\sum_i O_i c^{(1)}_i c^{(2)}_i}
                               {\\sum_i c^{(1)}_i c^{(2)}_i},

which removes the :math:`|c|^2` bias a single stochastic vector carries.
The single-replica counterparts are reported as ``biased``.
"""

from typing import Callable, List, Sequence, Tuple, Union

import numpy as np

from ..fock.api import continuum_threshold_state, mode_grid, reflect_rows
from ..fock.models import FockState, ModelParams
from ..qmc.models import QmcReport, WalkerVector
from .blocking import blocking_error, ratio_error
from .errors import DegenerateOverlapError
from .models import DensityProfile, Estimate, Parity, SpectralWeight, \
    SpectrumPoint

RowObservable = Callable[[np.ndarray], np.ndarray]
VectorPairs = Union[Tuple[WalkerVector, WalkerVector],
                    Sequence[Tuple[WalkerVector, WalkerVector]]]


def fock_observable(func: Callable[[FockState], float]) -> RowObservable:
    """Turn a function of a :class:`FockState` into a row observable."""
    def observable(states):
        return np.array([func(FockState(row.tobytes())) for row in states],
                        dtype=np.float64)
    return observable


def mode_density(position: int) -> RowObservable:
    """Occupation of the mode at array ``position``."""
    return lambda states: states[:, position].astype(np.float64)


def phonon_number(states: np.ndarray) -> np.ndarray:
    """Total phonon number of every row."""
    return states.sum(axis=1, dtype=np.int64).astype(np.float64)


def _pairs(vectors: VectorPairs):
    if len(vectors) == 2 and isinstance(vectors[0], WalkerVector):
        return [tuple(vectors)]
    return list(vectors)


def _check_overlap(denominators: np.ndarray, min_length: int):
    estimate = ratio_error(denominators, np.ones_like(denominators),
                           min_length)
    if estimate.value == 0.0 or abs(estimate.value) <= 3.0 * estimate.error:
        raise DegenerateOverlapError(estimate.value, estimate.error)


def replica_diagonal_expectation(vectors: VectorPairs,
                                 observable: RowObservable,
                                 min_length: int = 32) -> Estimate:
    """Two-replica estimate of a diagonal observable.

    ``vectors`` is one ``(v1, v2)`` pair or a sequence of pairs (snapshots
    of a run); ``observable`` maps ``(n, M)`` occupation rows to values.
    """
    numerators, denominators = [], []
    for first, second in _pairs(vectors):
        mine, theirs = first.common_index(second)
        products = first.coeffs[mine] * second.coeffs[theirs]
        values = observable(first.states[mine]) if len(mine) else \
            np.zeros(0)
        numerators.append(float(np.dot(values, products)))
        denominators.append(float(products.sum()))
    denominators = np.array(denominators)
    _check_overlap(denominators, min_length)
    return ratio_error(numerators, denominators, min_length)


def spectral_weight(vectors: VectorPairs, index: int = 0,
                    total_momentum: float = 0.0,
                    min_length: int = 32) -> SpectralWeight:
    """Vacuum weight from replica products.

    :math:`Z = c^{(1)}_{vac} c^{(2)}_{vac} / \\sum_i c^{(1)}_i c^{(2)}_i`.
    """
    pairs = _pairs(vectors)
    numerators = [a.vacuum_coefficient * b.vacuum_coefficient
                  for a, b in pairs]
    denominators = np.array([a.dot(b) for a, b in pairs])
    _check_overlap(denominators, min_length)
    value, error = ratio_error(numerators, denominators, min_length)
    return SpectralWeight(index, value, error, total_momentum)


def parity_overlap(vector: WalkerVector) -> float:
    """:math:`\\langle v|\\hat P v\\rangle / \\langle v|v\\rangle`."""
    norm = vector.dot(vector)
    if norm == 0.0:
        return 0.0
    reflected = WalkerVector(reflect_rows(vector.states), vector.coeffs)
    return vector.dot(reflected) / norm


def classify_parity(vector: WalkerVector,
                    threshold: float = 0.9) -> Parity:
    """Even, odd or mixed according to :func:`parity_overlap`."""
    overlap = parity_overlap(vector)
    if overlap > threshold:
        return Parity.EVEN
    if overlap < -threshold:
        return Parity.ODD
    return Parity.MIXED


def edge_overlap(vector: WalkerVector, ground: WalkerVector,
                 model: ModelParams) -> float:
    """Normalized squared overlap of ``vector`` with the continuum edge.

    The edge state is :math:`(a_0^\\dagger - g)|GS\\rangle` built from
    ``ground``; it has an excitation energy of exactly one.
    """
    edge = continuum_threshold_state(ground, model)
    norm = edge.dot(edge) * vector.dot(vector)
    if norm == 0.0:
        return 0.0
    return edge.dot(vector) ** 2 / norm


def _snapshot_block(report: QmcReport, eigenstate: int, biased: bool):
    rows = report.measured_snapshots(eigenstate)
    m = report.state.num_modes
    start = 4 + m if biased else 2
    return rows[:, start], rows[:, start + 1], rows[:, start + 2:start + 2 + m]


def snapshot_weight(report: QmcReport, eigenstate: int,
                    biased: bool = False,
                    min_length: int = 32) -> SpectralWeight:
    """Spectral weight of ``eigenstate`` from the snapshots of a run."""
    overlap, vacuum, _ = _snapshot_block(report, eigenstate, biased)
    _check_overlap(overlap, min_length)
    value, error = ratio_error(vacuum, overlap, min_length)
    return SpectralWeight(eigenstate, value, error,
                          report.model.total_momentum, biased)


def snapshot_density(report: QmcReport, eigenstate: int,
                     biased: bool = False,
                     min_length: int = 32) -> DensityProfile:
    """Phonon density profile of ``eigenstate`` from the snapshots."""
    overlap, _, densities = _snapshot_block(report, eigenstate, biased)
    _check_overlap(overlap, min_length)
    estimates = [ratio_error(densities[:, j], overlap, min_length)
                 for j in range(densities.shape[1])]
    return DensityProfile(
        eigenstate, mode_grid(report.model),
        np.array([e.value for e in estimates]),
        np.array([e.error for e in estimates]), biased)


def dense_density(vector: WalkerVector, model: ModelParams,
                  index: int = 0) -> DensityProfile:
    """Exact density profile of a deterministic vector."""
    weights = vector.coeffs ** 2
    values = vector.states.T.astype(np.float64) @ weights / weights.sum()
    return DensityProfile(index, mode_grid(model), values,
                          np.zeros_like(values))


def eigenstate_shifts(report: QmcReport, eigenstate: int) -> np.ndarray:
    """Measured shift of ``eigenstate`` averaged over the replica sets."""
    k = report.state.num_eigenstates
    series = [report.measured_series(r * k + eigenstate)[:, 2]
              for r in range(report.state.num_replicas)]
    return np.mean(series, axis=0)


def spectrum(report: QmcReport, parity_threshold: float = 0.9,
             min_length: int = 32) -> List[SpectrumPoint]:
    """Energies and excitation energies of every propagated eigenstate.

    Excitation errors are blocked on the difference series of the same
    run, so noise shared by the replicas cancels.
    """
    ground = eigenstate_shifts(report, 0)
    points = []
    for e in range(report.state.num_eigenstates):
        shifts = eigenstate_shifts(report, e)
        energy = blocking_error(shifts, min_length)
        if e == 0:
            excitation = Estimate(0.0, 0.0)
        else:
            blocked = blocking_error(shifts - ground, min_length)
            excitation = Estimate(blocked.mean, blocked.error)
        vector = report.state.replicas[e].vector
        parity = classify_parity(vector, parity_threshold)
        overlap = edge_overlap(vector, report.state.replicas[0].vector,
                               report.model)
        points.append(SpectrumPoint(e, energy.mean, energy.error,
                                    excitation.value, excitation.error,
                                    parity, overlap))
    return points


def exact_spectrum(energies: Sequence[float],
                   vectors: Sequence[WalkerVector],
                   parity_threshold: float = 0.9,
                   model: ModelParams = None) -> List[SpectrumPoint]:
    """Spectrum points of exact eigenpairs (zero error bars).

    Edge overlaps are computed when ``model`` is given.
    """
    return [
        SpectrumPoint(j, float(energy), 0.0, float(energy - energies[0]),
                      0.0, classify_parity(vector, parity_threshold),
                      0.0 if model is None
                      else edge_overlap(vector, vectors[0], model))
        for j, (energy, vector) in enumerate(zip(energies, vectors))
    ]
