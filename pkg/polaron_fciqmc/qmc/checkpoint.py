# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Binary checkpoints of a :class:`~.models.QmcState`.

Layout (all integers and floats little-endian):

* magic ``FPQMC1``;
* header: ``M`` (uint32), replica count ``R`` (uint32), step (uint64),
  seed (uint64), then ``R`` shifts (float64);
* per replica: entry count (uint64), then one record per entry of ``M``
  occupation bytes and a float64 coefficient, in state order;
* generator state: length (uint64) and UTF-8 JSON;
* run block: length (uint64), then the eigenstate count (uint32), per
  replica a shift-released flag (uint8) and the reference walker number
  (float64), the time series and the snapshots (row count uint64, column
  count uint32, float64 data each);
* CRC-32 (uint32) of every preceding byte.
"""

import json
import struct
import zlib

import numpy as np

from .errors import CheckpointVersionError, CorruptCheckpointError
from .models import QmcState, ReplicaState, SeriesBuffer, WalkerVector
from .rng import rng_from_state

MAGIC = b'FPQMC1'
_FAMILY = MAGIC[:-1]


def _record_dtype(num_modes: int) -> np.dtype:
    return np.dtype([('occupations', np.uint8, (num_modes, )),
                     ('coeff', '<f8')])


def _table(buffer: SeriesBuffer) -> bytes:
    data = np.ascontiguousarray(buffer.data, dtype='<f8')
    return struct.pack('<QI', data.shape[0], buffer.columns) + \
        data.tobytes()


def checkpoint(state: QmcState) -> bytes:
    """Serialize ``state``."""
    m, count = state.num_modes, len(state.replicas)
    rng_state = state.rng.get_state()
    parts = [
        MAGIC,
        struct.pack('<IIQQ', m, count, state.step, rng_state['seed']),
        np.array([r.shift for r in state.replicas], dtype='<f8').tobytes(),
    ]
    dtype = _record_dtype(m)
    for replica in state.replicas:
        records = np.zeros(len(replica.vector), dtype=dtype)
        records['occupations'] = replica.vector.states
        records['coeff'] = replica.vector.coeffs
        parts += [struct.pack('<Q', len(records)), records.tobytes()]

    encoded = json.dumps(rng_state, sort_keys=True).encode('utf-8')
    parts += [struct.pack('<Q', len(encoded)), encoded]

    run = [struct.pack('<I', state.num_eigenstates)]
    for replica in state.replicas:
        run.append(struct.pack('<Bd', replica.variable,
                               replica.reference_walkers))
    run += [_table(state.series), _table(state.snapshots)]
    run = b''.join(run)
    parts += [struct.pack('<Q', len(run)), run]

    body = b''.join(parts)
    return body + struct.pack('<I', zlib.crc32(body))


class _Reader:
    """Cursor over a byte stream raising on truncation."""

    def __init__(self, data: bytes, offset: int = 0):
        self.data = data
        self.offset = offset

    def take(self, size: int) -> bytes:
        end = self.offset + size
        if size < 0 or end > len(self.data):
            raise CorruptCheckpointError(
                f'checkpoint truncated at byte {self.offset}')
        chunk = self.data[self.offset:end]
        self.offset = end
        return chunk

    def unpack(self, fmt: str):
        return struct.unpack(fmt, self.take(struct.calcsize(fmt)))

    def table(self) -> SeriesBuffer:
        rows, columns = self.unpack('<QI')
        data = np.frombuffer(self.take(8 * rows * columns), dtype='<f8')
        return SeriesBuffer(columns, data.reshape(rows, columns)
                            .astype(np.float64))


def restore(data: bytes) -> QmcState:
    """Rebuild the state written by :func:`checkpoint`."""
    data = bytes(data)
    if data[:len(_FAMILY)] != _FAMILY:
        raise CorruptCheckpointError('not a checkpoint stream')
    if data[:len(MAGIC)] != MAGIC:
        raise CheckpointVersionError(
            f'unsupported checkpoint version {data[:len(MAGIC)]!r}, '
            f'expected {MAGIC!r}')
    if len(data) < len(MAGIC) + 4:
        raise CorruptCheckpointError('checkpoint truncated')
    body, (crc, ) = data[:-4], struct.unpack('<I', data[-4:])
    if zlib.crc32(body) != crc:
        raise CorruptCheckpointError('checkpoint checksum mismatch')

    reader = _Reader(body, len(MAGIC))
    m, count, step, seed = reader.unpack('<IIQQ')
    shifts = np.frombuffer(reader.take(8 * count), dtype='<f8')
    dtype = _record_dtype(m)
    vectors = []
    for _ in range(count):
        (entries, ) = reader.unpack('<Q')
        records = np.frombuffer(reader.take(entries * dtype.itemsize),
                                dtype=dtype)
        vectors.append(WalkerVector(records['occupations'].copy(),
                                    records['coeff'].astype(np.float64),
                                    merged=True))

    (length, ) = reader.unpack('<Q')
    try:
        rng_state = json.loads(reader.take(length).decode('utf-8'))
    except ValueError as exc:
        raise CorruptCheckpointError(f'unreadable generator state: {exc}')

    (length, ) = reader.unpack('<Q')
    run = _Reader(reader.take(length))
    (num_eigenstates, ) = run.unpack('<I')
    replicas = []
    for vector, shift in zip(vectors, shifts):
        variable, reference = run.unpack('<Bd')
        replicas.append(ReplicaState(vector, float(shift), bool(variable),
                                     reference))
    series = run.table()
    snapshots = run.table()
    if reader.offset != len(body) or run.offset != len(run.data):
        raise CorruptCheckpointError('trailing bytes in checkpoint')
    if num_eigenstates < 1 or count % num_eigenstates:
        raise CorruptCheckpointError(
            f'{count} replicas do not split into {num_eigenstates} '
            f'eigenstates')

    rng = rng_from_state(rng_state, count)
    return QmcState(m, num_eigenstates, replicas, rng, step=step,
                    series=series, snapshots=snapshots)
