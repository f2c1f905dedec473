# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Semistochastic projection with :math:`1 - d\\tau(H - S)`.

One :func:`step` updates every replica of a :class:`~.models.QmcState`:

1. entries with :math:`|c| \\geq t_{det}` get the exact off-diagonal row;
2. the other entries spawn onto :math:`\\lceil |c| \\rceil` uniformly
   chosen connections;
3. every entry is multiplied by its death factor
   :math:`1 - d\\tau(H_{ii} - S)`;
4. all contributions to a state are summed (annihilation);
5. entries below the compression threshold that are not in the
   deterministic sector are kept with probability :math:`|c|/t` at
   magnitude :math:`t`;
6. excited replicas are orthogonalized and the shifts updated.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence

import numpy as np
from flask import current_app, has_app_context

from ..fock.api import connection_counts, diagonal_energies, excitations
from ..fock.errors import OccupancyOverflowError
from ..fock.models import MAX_OCCUPATION, FockState, ModelParams
from ..observables.blocking import blocking_error
from ..observables.errors import SeriesTooShortError
from ..proxies import current_logger
from ..utils import chunk_slices, hash_rows, merge_rows
from .errors import DegenerateReplicaError, InvalidQmcParamsError, \
    InvalidWalkerCountError, TimeStepTooLargeError
from .models import QmcParams, QmcReport, QmcState, ReplicaState, \
    ReplicaSummary, WalkerVector
from .rng import COMPRESS, SPAWN, CounterRNG, make_rng
from .signals import checkpoint_due


def starting_states(model: ModelParams, count: int) -> List[FockState]:
    """Lowest-diagonal-energy states with at most two phonons.

    Ties are broken by state order, so the list is deterministic.
    """
    m = model.num_modes
    rows = [np.zeros(m, dtype=np.uint8)]
    for i in range(m):
        single = np.zeros(m, dtype=np.uint8)
        single[i] = 1
        rows.append(single)
        for k in range(i, m):
            double = single.copy()
            double[k] += 1
            rows.append(double)
    rows = np.array(rows)
    energies = diagonal_energies(rows, model)
    order = np.lexsort(tuple(rows.T[::-1]) + (energies, ))
    if count > len(order):
        raise InvalidQmcParamsError(
            'num_eigenstates', count,
            f'only {len(order)} starting states have at most two phonons')
    return [FockState(rows[i].tobytes()) for i in order[:count]]


def initial_state(model: ModelParams, params: QmcParams,
                  sign: float = 1.0) -> QmcState:
    """Fresh state with every replica on its starting Fock state.

    Replica ``r * K + e`` starts on the ``e``-th of :func:`starting_states`
    with ``sign * initial_walkers``; its shift starts at ``initial_shift``
    plus the diagonal energy of that state.
    """
    starts = starting_states(model, params.num_eigenstates)
    energies = diagonal_energies(
        np.array([s.as_array() for s in starts]), model)
    replicas = []
    for _ in range(params.num_replicas):
        for start, energy in zip(starts, energies):
            replicas.append(ReplicaState(
                WalkerVector.single(start, sign * params.initial_walkers),
                shift=params.initial_shift + float(energy)))
    rng = make_rng(params.seed, len(replicas), params.deterministic)
    return QmcState(model.num_modes, params.num_eigenstates, replicas, rng)


def update_shift(shift: float, walkers_new: float, walkers_old: float,
                 params: QmcParams) -> float:
    """Logarithmic population control.

    :math:`S' = S - \\zeta/(A\\,d\\tau) \\ln(N_w^{new}/N_w^{old})`.
    """
    if not (walkers_new > 0 and walkers_old > 0):
        raise InvalidWalkerCountError(
            f'walker numbers must be positive, got {walkers_new} '
            f'and {walkers_old}')
    factor = params.shift_damping / (params.shift_interval *
                                     params.time_step)
    return shift - factor * math.log(walkers_new / walkers_old)


def orthogonalize(vectors: Sequence[WalkerVector]) -> List[WalkerVector]:
    """Modified Gram-Schmidt in ascending order; vector 0 is unchanged."""
    result = []
    for vector in vectors:
        for m, lower in enumerate(result):
            norm = lower.dot(lower)
            if norm == 0.0:
                raise DegenerateReplicaError(m)
            projection = lower.dot(vector) / norm
            if projection:
                vector = vector.axpy(-projection, lower)
        result.append(vector)
    return result


def _random_keys(rng, states: np.ndarray) -> np.ndarray:
    if isinstance(rng, CounterRNG):
        return hash_rows(states)
    return np.zeros(states.shape[0], dtype=np.uint64)


def _deterministic_chunk(states, coeffs, model, params):
    """Exact off-diagonal part of the projector for a block of rows."""
    source, targets, amplitudes = excitations(states, model)
    values = -params.time_step * amplitudes * coeffs[source]
    return targets, values


def _spawn_chunk(states, coeffs, attempts, uniforms, model, params):
    """Stochastic spawns of a block of rows.

    ``attempts`` holds the number of spawning attempts of every row and
    ``uniforms`` one selection number per attempt, rows in order.
    """
    m = states.shape[1]
    source = np.repeat(np.arange(len(coeffs)), attempts)
    sources = states[source]
    n_conn = connection_counts(states)[source]
    choice = np.minimum((uniforms * n_conn).astype(np.int64), n_conn - 1)

    create = choice < m
    rows = np.arange(len(source))
    mode = np.empty(len(source), dtype=np.int64)
    mode[create] = choice[create]
    annihilate = ~create
    if np.any(annihilate):
        occupied = np.cumsum(sources[annihilate] > 0, axis=1)
        rank = (choice[annihilate] - m)[:, None]
        mode[annihilate] = np.argmax(occupied > rank, axis=1)

    n = sources[rows, mode].astype(np.float64)
    if np.any(create & (n == MAX_OCCUPATION)):
        bad = mode[np.argmax(create & (n == MAX_OCCUPATION))]
        raise OccupancyOverflowError(int(bad) - model.max_mode_index)
    targets = sources
    targets[rows[create], mode[create]] += 1
    targets[rows[annihilate], mode[annihilate]] -= 1

    amplitudes = -model.coupling * np.sqrt(np.where(create, n + 1.0, n))
    weights = n_conn / attempts[source]
    values = -params.time_step * amplitudes * coeffs[source] * weights
    return targets, values


def _spawn_uniforms(rng, step, replica, keys, attempts):
    total = int(attempts.sum())
    if not total:
        return np.zeros(0)
    counters = np.arange(total) - np.repeat(
        np.cumsum(attempts) - attempts, attempts)
    return rng.uniforms(step, replica, SPAWN,
                        np.repeat(keys, attempts), counters)


def _offdiagonal(states, coeffs, deterministic, model, params, rng,
                 step, replica, executor=None):
    """All off-diagonal contributions, chunk by chunk in row order."""
    keys = _random_keys(rng, states)
    attempts = np.where(deterministic, 0,
                        np.ceil(np.abs(coeffs))).astype(np.int64)
    uniforms = _spawn_uniforms(rng, step, replica, keys, attempts)
    offsets = np.concatenate([[0], np.cumsum(attempts)])

    def work(sl):
        det = deterministic[sl]
        parts = []
        if np.any(det):
            parts.append(_deterministic_chunk(
                states[sl][det], coeffs[sl][det], model, params))
        stoch = ~det
        if np.any(stoch):
            parts.append(_spawn_chunk(
                states[sl][stoch], coeffs[sl][stoch],
                attempts[sl][stoch], uniforms[offsets[sl.start]:
                                              offsets[sl.stop]],
                model, params))
        return parts

    slices = list(chunk_slices(len(coeffs), params.chunk_size))
    if executor is not None and len(slices) > 1:
        results = list(executor.map(work, slices))
    else:
        results = [work(sl) for sl in slices]
    return [part for parts in results for part in parts]


def spawn(vector: WalkerVector, model: ModelParams, params: QmcParams,
          rng, step: int = 0, replica: int = 0) -> WalkerVector:
    """Off-diagonal contributions of one projection, without compression.

    The expectation over the random numbers is
    :math:`-d\\tau\\,H_{offdiag}\\,c`.
    """
    mags = np.abs(vector.coeffs)
    parts = _offdiagonal(vector.states, vector.coeffs,
                         mags >= params.deterministic_threshold,
                         model, params, rng, step, replica)
    if not parts:
        return WalkerVector.empty(vector.num_modes)
    return WalkerVector(np.concatenate([t for t, _ in parts]),
                        np.concatenate([v for _, v in parts]))


def compress(vector: WalkerVector, threshold: float, rng, step: int = 0,
             replica: int = 0, exempt: np.ndarray = None) -> WalkerVector:
    """Stochastic compression of the entries below ``threshold``.

    ``exempt`` masks entries that are kept unchanged.
    """
    coeffs = vector.coeffs.copy()
    mags = np.abs(coeffs)
    small = mags < threshold
    if exempt is not None:
        small &= ~exempt
    if np.any(small):
        u = rng.uniforms(step, replica, COMPRESS,
                         _random_keys(rng, vector.states[small]),
                         np.zeros(int(small.sum()), dtype=np.uint64))
        coeffs[small] = np.where(u * threshold < mags[small],
                                 np.sign(coeffs[small]) * threshold, 0.0)
    return WalkerVector(vector.states, coeffs, merged=True)


def project(vector: WalkerVector, shift: float, model: ModelParams,
            params: QmcParams, rng, step: int = 0, replica: int = 0,
            executor=None) -> WalkerVector:
    """Apply :math:`1 - d\\tau(H - S)` semistochastically to ``vector``."""
    states, coeffs = vector.states, vector.coeffs
    if not len(coeffs):
        return vector
    diagonal = diagonal_energies(states, model)
    death = 1.0 - params.time_step * (diagonal - shift)
    if np.any(death < 0):
        worst = int(np.argmin(death))
        raise TimeStepTooLargeError(params.time_step,
                                    float(diagonal[worst]), shift)
    deterministic = np.abs(coeffs) >= params.deterministic_threshold

    parts = _offdiagonal(states, coeffs, deterministic, model, params, rng,
                         step, replica, executor)
    targets = [states] + [t for t, _ in parts]
    values = [np.stack([coeffs * death, deterministic.astype(np.float64)],
                       axis=1)]
    values += [np.stack([v, np.zeros_like(v)], axis=1) for _, v in parts]
    targets = np.concatenate(targets)
    values = np.concatenate(values)
    if params.truncation is not None:
        inside = params.truncation.contains(targets)
        targets, values = targets[inside], values[inside]

    merged_states, merged = merge_rows(targets, values)
    projected = WalkerVector(merged_states, merged[:, 0], merged=True)
    exempt = np.zeros(len(projected), dtype=bool)
    if len(projected):
        # zero coefficients were dropped, realign the sector flags
        kept = merged[:, 0] != 0.0
        exempt = merged[kept, 1] > 0
    return compress(projected, params.compression_threshold, rng, step,
                    replica, exempt)


def _control_shift(replica: ReplicaState, index: int, step: int,
                   params: QmcParams):
    walkers = replica.vector.norm1
    if not replica.variable:
        if walkers >= params.target_walkers:
            replica.variable = True
            replica.reference_walkers = walkers
            current_logger.info('Replica %d reached %.6g walkers at step %d;'
                                ' shift released.', index, walkers, step)
        return
    if step % params.shift_interval == 0:
        replica.shift = update_shift(replica.shift, walkers,
                                     replica.reference_walkers, params)
        replica.reference_walkers = walkers


def step(state: QmcState, model: ModelParams, params: QmcParams,
         executor=None) -> QmcState:
    """Advance every replica by one iteration, in place.

    Returns ``state`` for convenience.
    """
    for index, replica in enumerate(state.replicas):
        replica.vector = project(replica.vector, replica.shift, model,
                                 params, state.rng, state.step, index,
                                 executor)
    state.step += 1

    k = state.num_eigenstates
    if k > 1 and state.step % params.orthogonalization_period == 0:
        for r in range(state.num_replicas):
            replicas = state.replica_set(r)
            vectors = orthogonalize([rep.vector for rep in replicas])
            for rep, vector in zip(replicas, vectors):
                rep.vector = vector
        current_logger.debug('Orthogonalized replicas at step %d.',
                             state.step)

    rows = []
    for index, replica in enumerate(state.replicas):
        _control_shift(replica, index, state.step, params)
        rows.append((state.step, index, replica.shift,
                     replica.vector.norm1,
                     replica.vector.vacuum_coefficient))
    state.series.append(np.array(rows))
    return state


def _density_numerators(first: WalkerVector, second: WalkerVector):
    mine, theirs = first.common_index(second)
    products = first.coeffs[mine] * second.coeffs[theirs]
    densities = first.states[mine].T.astype(np.float64) @ products
    return products.sum(), \
        first.vacuum_coefficient * second.vacuum_coefficient, densities


def record_snapshot(state: QmcState):
    """Append one snapshot row per eigenstate to ``state.snapshots``.

    Row layout: ``step, eigenstate``, then the two-replica overlap,
    vacuum product and mode densities (``NaN`` with a single replica
    set), then the same numerators of the first replica alone.
    """
    k, m = state.num_eigenstates, state.num_modes
    rows = []
    for e in range(k):
        first = state.replicas[e].vector
        if state.num_replicas > 1:
            second = state.replicas[k + e].vector
            overlap, vacuum, densities = _density_numerators(first, second)
        else:
            overlap, vacuum, densities = math.nan, math.nan, \
                np.full(m, math.nan)
        b_overlap, b_vacuum, b_densities = _density_numerators(first, first)
        rows.append(np.concatenate([
            [state.step, e, overlap, vacuum], densities,
            [b_overlap, b_vacuum], b_densities,
        ]))
    state.snapshots.append(np.array(rows))


def _summarize(state: QmcState, equilibration: int,
               min_length: int) -> List[ReplicaSummary]:
    data = state.series.data
    summaries = []
    for index, replica in enumerate(state.replicas):
        rows = data[(data[:, 1] == index) & (data[:, 0] > equilibration)]
        shifts, walkers = rows[:, 2], rows[:, 3]
        try:
            blocked = blocking_error(shifts, min_length=min_length)
        except SeriesTooShortError:
            blocked = None
        summaries.append(ReplicaSummary(
            replica=index,
            eigenstate=index % state.num_eigenstates,
            shift=blocked,
            shift_released=replica.variable,
            mean_walkers=float(walkers.mean()) if len(walkers) else 0.0,
            final_walkers=replica.vector.norm1,
        ))
    return summaries


def run(model: ModelParams, params: QmcParams, equilibration: int,
        measurement: int, state: Optional[QmcState] = None,
        callback: Optional[Callable[[QmcState], None]] = None,
        checkpoint_interval: int = 0, checkpoint_dir: str = None,
        sign: float = 1.0) -> QmcReport:
    """Propagate until ``equilibration + measurement`` steps are done.

    A restored ``state`` continues from its step counter. Snapshots of the
    replica estimators are recorded every ``measure_interval`` steps of
    the measurement phase. Every ``checkpoint_interval`` steps the
    :data:`~.signals.checkpoint_due` signal is sent.
    """
    if state is None:
        state = initial_state(model, params, sign=sign)
    total = equilibration + measurement
    min_length = current_app.config['POLARON_BLOCKING_MIN_LENGTH'] \
        if has_app_context() else 32
    sender = current_app._get_current_object() if has_app_context() \
        else None

    executor = ThreadPoolExecutor(params.threads) \
        if params.threads > 1 else None
    try:
        while state.step < total:
            step(state, model, params, executor)
            if state.step == equilibration:
                current_logger.info('Equilibration finished at step %d.',
                                    state.step)
            if state.step > equilibration and \
                    state.step % params.measure_interval == 0:
                record_snapshot(state)
            if checkpoint_interval and \
                    state.step % checkpoint_interval == 0:
                checkpoint_due.send(sender, state=state,
                                    directory=checkpoint_dir)
            if callback is not None:
                callback(state)
    finally:
        if executor is not None:
            executor.shutdown()

    replicas = _summarize(state, equilibration, min_length)
    converged = all(r.shift is not None and r.shift.plateau
                    and r.shift_released for r in replicas)
    if not converged:
        current_logger.warning(
            'FCIQMC run did not converge: shift released %s, plateau %s.',
            [r.shift_released for r in replicas],
            [r.shift is not None and r.shift.plateau for r in replicas])
    current_logger.info('FCIQMC run finished after %d steps.', state.step)
    return QmcReport(model=model, params=params, state=state,
                     equilibration_steps=equilibration,
                     measurement_steps=measurement, replicas=replicas,
                     converged=converged)
