# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""FCIQMC models."""

import math
from typing import Dict, Iterator, List, NamedTuple, Optional, Tuple

import numpy as np

from ..fock.errors import FockStateError
from ..fock.models import FockState, ModelParams
from ..observables.models import BlockingResult
from ..oracle.models import Truncation
from ..utils import lexsort_rows, merge_rows
from .errors import InvalidQmcParamsError


class WalkerVector:
    """Sparse signed coefficient vector over Fock states.

    ``states`` holds one occupation row per stored entry, in lexicographic
    order and without duplicates; ``coeffs`` the matching coefficients.
    Zero coefficients are never stored. Instances are treated as immutable.
    """

    __slots__ = ('states', 'coeffs')

    def __init__(self, states, coeffs, merged: bool = False):
        """Build the vector, summing duplicate rows unless ``merged``."""
        coeffs = np.asarray(coeffs, dtype=np.float64).reshape(-1)
        states = np.asarray(states, dtype=np.uint8)
        states = states.reshape(coeffs.shape[0], -1) if states.ndim != 2 \
            else states
        if not merged:
            states, coeffs = merge_rows(states, coeffs)
        keep = coeffs != 0.0
        if not np.all(keep):
            states, coeffs = states[keep], coeffs[keep]
        self.states = np.ascontiguousarray(states)
        self.coeffs = coeffs

    @classmethod
    def empty(cls, num_modes: int) -> 'WalkerVector':
        """Vector without entries."""
        return cls(np.zeros((0, num_modes), dtype=np.uint8),
                   np.zeros(0), merged=True)

    @classmethod
    def single(cls, state: FockState, coeff: float) -> 'WalkerVector':
        """Vector with one entry."""
        return cls(state.as_array()[None, :], [coeff], merged=True)

    @classmethod
    def from_dict(cls, entries: Dict[FockState, float],
                  num_modes: int = None) -> 'WalkerVector':
        """Vector from a ``{FockState: coefficient}`` mapping."""
        if not entries:
            if num_modes is None:
                raise FockStateError('an empty vector needs num_modes')
            return cls.empty(num_modes)
        states = np.array([s.as_array() for s in entries], dtype=np.uint8)
        return cls(states, list(entries.values()))

    @property
    def num_modes(self) -> int:
        """Number of modes of the stored states."""
        return self.states.shape[1]

    @property
    def norm1(self) -> float:
        """Walker number :math:`N_w = \\sum_i |c_i|`."""
        return float(np.abs(self.coeffs).sum())

    @property
    def vacuum_coefficient(self) -> float:
        """Coefficient of the phonon vacuum (the lexicographically first
        state)."""
        if len(self.coeffs) and not self.states[0].any():
            return float(self.coeffs[0])
        return 0.0

    def get(self, state: FockState) -> float:
        """Coefficient of ``state``."""
        hit = np.flatnonzero(np.all(self.states == state.as_array(), axis=1))
        return float(self.coeffs[hit[0]]) if len(hit) else 0.0

    def items(self) -> Iterator[Tuple[FockState, float]]:
        """Iterate over ``(FockState, coefficient)`` pairs in state order."""
        for row, c in zip(self.states, self.coeffs):
            yield FockState(row.tobytes()), float(c)

    def to_dict(self) -> Dict[FockState, float]:
        """``{FockState: coefficient}`` mapping."""
        return dict(self.items())

    def dot(self, other: 'WalkerVector') -> float:
        """Scalar product over the common entries."""
        return float(np.dot(*self.overlap(other)))

    def overlap(self, other: 'WalkerVector'
                ) -> Tuple[np.ndarray, np.ndarray]:
        """Coefficients of both vectors on the states they share.

        Returns two aligned arrays; the shared states are
        ``self.states[mine]`` with ``mine, _ = self.common_index(other)``.
        """
        mine, theirs = self.common_index(other)
        return self.coeffs[mine], other.coeffs[theirs]

    def common_index(self, other: 'WalkerVector'
                     ) -> Tuple[np.ndarray, np.ndarray]:
        """Positions of the shared states in ``self`` and in ``other``."""
        n = len(self.coeffs)
        rows = np.concatenate([self.states, other.states])
        order = lexsort_rows(rows)
        rows = rows[order]
        same = np.all(rows[1:] == rows[:-1], axis=1) if len(rows) > 1 \
            else np.zeros(0, dtype=bool)
        first = order[:-1][same]
        second = order[1:][same]
        mine = np.where(first < n, first, second)
        theirs = np.where(first < n, second, first) - n
        return mine, theirs

    def scale(self, factor: float) -> 'WalkerVector':
        """Vector multiplied by ``factor``."""
        if factor == 0:
            return WalkerVector.empty(self.num_modes)
        return WalkerVector(self.states, self.coeffs * factor, merged=True)

    def axpy(self, factor: float, other: 'WalkerVector') -> 'WalkerVector':
        """``self + factor * other``."""
        return WalkerVector(np.concatenate([self.states, other.states]),
                            np.concatenate([self.coeffs,
                                            factor * other.coeffs]))

    def __add__(self, other):
        """Sum of two vectors."""
        return self.axpy(1.0, other)

    def __sub__(self, other):
        """Difference of two vectors."""
        return self.axpy(-1.0, other)

    def __len__(self):
        """Number of stored entries."""
        return len(self.coeffs)

    def __eq__(self, other):
        """Exact equality of entries and coefficients."""
        if not isinstance(other, WalkerVector):
            return NotImplemented
        return (self.states.shape == other.states.shape
                and np.array_equal(self.states, other.states)
                and np.array_equal(self.coeffs, other.coeffs))

    def __repr__(self):
        """String representation of the vector."""
        return (f'<WalkerVector entries={len(self)} '
                f'walkers={self.norm1:.6g}>')


class QmcParams:
    """Parameters of the FCIQMC propagation.

    ``truncation`` restricts the projector to a truncated Fock space (the
    one used by :mod:`polaron_fciqmc.oracle`); ``None`` leaves only the
    255-phonon cap per mode.
    """

    __slots__ = (
        'time_step', 'target_walkers', 'shift_damping', 'shift_interval',
        'deterministic_threshold', 'compression_threshold', 'num_replicas',
        'num_eigenstates', 'orthogonalization_period', 'seed',
        'initial_shift', 'initial_walkers', 'deterministic', 'threads',
        'chunk_size', 'measure_interval', 'truncation',
    )

    def __init__(self, time_step: float = 1e-3,
                 target_walkers: float = 1e5,
                 shift_damping: float = 0.08,
                 shift_interval: int = 1,
                 deterministic_threshold: float = 1.0,
                 compression_threshold: float = 1.0,
                 num_replicas: int = 1,
                 num_eigenstates: int = 1,
                 orthogonalization_period: int = 1,
                 seed: int = 1234,
                 initial_shift: float = 0.0,
                 initial_walkers: float = 10.0,
                 deterministic: bool = True,
                 threads: int = 1,
                 chunk_size: int = 4096,
                 measure_interval: int = 10,
                 truncation: Optional[Truncation] = None):
        """Validate and store the parameters."""
        self.time_step = float(time_step)
        self.target_walkers = float(target_walkers)
        self.shift_damping = float(shift_damping)
        self.shift_interval = int(shift_interval)
        self.deterministic_threshold = float(deterministic_threshold)
        self.compression_threshold = float(compression_threshold)
        self.num_replicas = int(num_replicas)
        self.num_eigenstates = int(num_eigenstates)
        self.orthogonalization_period = int(orthogonalization_period)
        self.seed = int(seed)
        self.initial_shift = float(initial_shift)
        self.initial_walkers = float(initial_walkers)
        self.deterministic = bool(deterministic)
        self.threads = int(threads)
        self.chunk_size = int(chunk_size)
        self.measure_interval = int(measure_interval)
        self.truncation = truncation
        self._validate()

    def _validate(self):
        checks = [
            ('time_step', self.time_step > 0, 'must be > 0'),
            ('target_walkers', self.target_walkers > 0, 'must be > 0'),
            ('shift_damping', self.shift_damping > 0, 'must be > 0'),
            ('shift_interval', self.shift_interval >= 1, 'must be >= 1'),
            ('deterministic_threshold', self.deterministic_threshold >= 0,
             'must be >= 0'),
            ('compression_threshold', self.compression_threshold >= 1,
             'must be >= 1'),
            ('num_replicas', self.num_replicas in (1, 2), 'must be 1 or 2'),
            ('num_eigenstates', self.num_eigenstates >= 1, 'must be >= 1'),
            ('orthogonalization_period', self.orthogonalization_period >= 1,
             'must be >= 1'),
            ('initial_walkers', self.initial_walkers > 0, 'must be > 0'),
            ('threads', self.threads >= 1, 'must be >= 1'),
            ('chunk_size', self.chunk_size >= 1, 'must be >= 1'),
            ('measure_interval', self.measure_interval >= 1, 'must be >= 1'),
            ('seed', 0 <= self.seed < 2 ** 64, 'must be in [0, 2**64)'),
        ]
        for field, ok, reason in checks:
            if not ok:
                raise InvalidQmcParamsError(field, getattr(self, field),
                                            reason)

    @property
    def num_replica_vectors(self) -> int:
        """Total number of propagated vectors."""
        return self.num_eigenstates * self.num_replicas

    def replace(self, **changes) -> 'QmcParams':
        """Copy with some fields replaced."""
        values = self.to_dict()
        values.update(changes)
        return QmcParams(**values)

    def to_dict(self) -> dict:
        """Plain dictionary of the fields."""
        return {k: getattr(self, k) for k in self.__slots__}

    def __eq__(self, other):
        """Field-wise equality."""
        if not isinstance(other, QmcParams):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __repr__(self):
        """String representation of the parameters."""
        return (f'<QmcParams dtau={self.time_step} '
                f'N_target={self.target_walkers:g} '
                f'replicas={self.num_eigenstates}x{self.num_replicas}>')


class SeriesBuffer:
    """Growable two-dimensional ``float64`` table."""

    __slots__ = ('columns', '_data', '_size')

    def __init__(self, columns: int, data: np.ndarray = None):
        """Create the buffer, optionally pre-filled with ``data`` rows."""
        self.columns = columns
        if data is None:
            data = np.zeros((0, columns))
        self._size = data.shape[0]
        self._data = np.zeros((max(64, 2 * self._size), columns))
        self._data[:self._size] = data

    def append(self, rows: np.ndarray):
        """Append one row or a block of rows."""
        rows = np.atleast_2d(np.asarray(rows, dtype=np.float64))
        needed = self._size + rows.shape[0]
        if needed > self._data.shape[0]:
            grown = np.zeros((max(needed, 2 * self._data.shape[0]),
                              self.columns))
            grown[:self._size] = self._data[:self._size]
            self._data = grown
        self._data[self._size:needed] = rows
        self._size = needed

    @property
    def data(self) -> np.ndarray:
        """View of the filled rows."""
        return self._data[:self._size]

    def __len__(self):
        """Number of rows."""
        return self._size

    def __eq__(self, other):
        """Equality of the filled rows."""
        if not isinstance(other, SeriesBuffer):
            return NotImplemented
        return self.columns == other.columns and \
            np.array_equal(self.data, other.data, equal_nan=True)


TIMESERIES_COLUMNS = ('step', 'replica', 'shift', 'walkers', 'vacuum_coeff')
"""Columns of :attr:`QmcState.series`."""


def snapshot_columns(num_modes: int) -> int:
    """Width of a snapshot row.

    ``step, eigenstate``, then for the two-replica and the single-replica
    (biased) estimator each: ``overlap, vacuum, density[0..M-1]``.
    """
    return 2 + 2 * (2 + num_modes)


class ReplicaState:
    """One propagated vector with its shift."""

    __slots__ = ('vector', 'shift', 'variable', 'reference_walkers')

    def __init__(self, vector: WalkerVector, shift: float,
                 variable: bool = False,
                 reference_walkers: float = math.nan):
        """Store the replica."""
        self.vector = vector
        self.shift = float(shift)
        self.variable = bool(variable)
        self.reference_walkers = float(reference_walkers)

    def __eq__(self, other):
        """Field-wise equality."""
        if not isinstance(other, ReplicaState):
            return NotImplemented
        return (self.vector == other.vector and self.shift == other.shift
                and self.variable == other.variable
                and (self.reference_walkers == other.reference_walkers
                     or (math.isnan(self.reference_walkers)
                         and math.isnan(other.reference_walkers))))

    def __repr__(self):
        """String representation of the replica."""
        return (f'<ReplicaState shift={self.shift:.6g} '
                f'variable={self.variable} {self.vector!r}>')


class QmcState:
    """Full propagation state, the unit written to checkpoints.

    Replica ``r * K + e`` holds eigenstate ``e`` of replica set ``r``
    (``K`` eigenstates). The state is owned by a single caller and
    :func:`polaron_fciqmc.qmc.api.step` mutates it in place.
    """

    def __init__(self, num_modes: int, num_eigenstates: int,
                 replicas: List[ReplicaState], rng, step: int = 0,
                 series: SeriesBuffer = None,
                 snapshots: SeriesBuffer = None):
        """Store the state."""
        self.num_modes = num_modes
        self.num_eigenstates = num_eigenstates
        self.replicas = replicas
        self.rng = rng
        self.step = step
        if series is None:
            series = SeriesBuffer(len(TIMESERIES_COLUMNS))
        if snapshots is None:
            snapshots = SeriesBuffer(snapshot_columns(num_modes))
        self.series = series
        self.snapshots = snapshots

    @property
    def num_replicas(self) -> int:
        """Replica sets (independent copies of every eigenstate)."""
        return len(self.replicas) // self.num_eigenstates

    def replica_set(self, index: int) -> List[ReplicaState]:
        """Replicas of set ``index``, ordered by eigenstate."""
        k = self.num_eigenstates
        return self.replicas[index * k:(index + 1) * k]

    def __eq__(self, other):
        """Equality of every field, the generator state included."""
        if not isinstance(other, QmcState):
            return NotImplemented
        return (self.num_modes == other.num_modes
                and self.num_eigenstates == other.num_eigenstates
                and self.step == other.step
                and self.replicas == other.replicas
                and self.rng.get_state() == other.rng.get_state()
                and self.series == other.series
                and self.snapshots == other.snapshots)

    def __repr__(self):
        """String representation of the state."""
        return (f'<QmcState step={self.step} '
                f'replicas={len(self.replicas)}>')


class ReplicaSummary(NamedTuple):
    """Statistics of one replica over the measurement phase."""

    replica: int
    eigenstate: int
    shift: Optional[BlockingResult]
    shift_released: bool
    mean_walkers: float
    final_walkers: float


class QmcReport(NamedTuple):
    """Outcome of :func:`polaron_fciqmc.qmc.api.run`."""

    model: ModelParams
    params: QmcParams
    state: QmcState
    equilibration_steps: int
    measurement_steps: int
    replicas: List[ReplicaSummary]
    converged: bool

    def measured_series(self, replica: int) -> np.ndarray:
        """Time series rows of ``replica`` after equilibration."""
        data = self.state.series.data
        return data[(data[:, 1] == replica)
                    & (data[:, 0] > self.equilibration_steps)]

    def measured_snapshots(self, eigenstate: int) -> np.ndarray:
        """Snapshot rows of ``eigenstate``."""
        data = self.state.snapshots.data
        return data[data[:, 1] == eigenstate]
