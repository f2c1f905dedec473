# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Random number generators of the FCIQMC engine.

Both generators hand out uniform numbers in :math:`[0, 1)` through
``uniforms(step, replica, stream, keys, counters)``, one per element of
``keys``. :class:`CounterRNG` derives every number from its coordinates
alone, so the numbers do not depend on how the work is split between
threads. :class:`StreamRNG` draws them sequentially from one PCG64 stream
per replica.
"""

import numpy as np

from ..utils import mix64

SPAWN = 1
"""Stream of the spawning attempts."""

COMPRESS = 2
"""Stream of the stochastic compression."""

_TO_UNIT = 1.0 / float(1 << 53)


def _as_u64(value: int) -> np.ndarray:
    # One-element arrays wrap silently where numpy scalars would warn.
    return np.array([value & 0xFFFFFFFFFFFFFFFF], dtype=np.uint64)


def _to_unit(bits: np.ndarray) -> np.ndarray:
    return (bits >> np.uint64(11)).astype(np.float64) * _TO_UNIT


class CounterRNG:
    """Stateless generator keyed by ``(seed, step, replica, stream, key,
    counter)``."""

    kind = 'counter'

    def __init__(self, seed: int):
        """Store the seed."""
        self.seed = int(seed)

    def uniforms(self, step: int, replica: int, stream: int,
                 keys: np.ndarray, counters: np.ndarray) -> np.ndarray:
        """Uniform numbers, one per ``(key, counter)`` pair."""
        base = mix64(_as_u64(self.seed))
        base = mix64(base ^ _as_u64(step))
        base = mix64(base ^ _as_u64((replica << 8) | stream))
        keys = np.asarray(keys, dtype=np.uint64)
        counters = np.asarray(counters, dtype=np.uint64)
        return _to_unit(mix64(mix64(keys ^ base) ^ counters))

    def get_state(self) -> dict:
        """JSON-serializable state."""
        return {'kind': self.kind, 'seed': self.seed}

    def set_state(self, state: dict):
        """Restore a state returned by :meth:`get_state`."""
        self.seed = int(state['seed'])


class StreamRNG:
    """One PCG64 stream per replica, spawned from a common seed."""

    kind = 'stream'

    def __init__(self, seed: int, num_replicas: int):
        """Spawn the per-replica streams."""
        self.seed = int(seed)
        children = np.random.SeedSequence(self.seed).spawn(num_replicas)
        self.generators = [np.random.Generator(np.random.PCG64(child))
                           for child in children]

    def uniforms(self, step: int, replica: int, stream: int,
                 keys: np.ndarray, counters: np.ndarray) -> np.ndarray:
        """Next ``len(keys)`` numbers of the replica's stream."""
        return self.generators[replica].random(len(keys))

    def get_state(self) -> dict:
        """JSON-serializable state."""
        return {
            'kind': self.kind,
            'seed': self.seed,
            'streams': [g.bit_generator.state for g in self.generators],
        }

    def set_state(self, state: dict):
        """Restore a state returned by :meth:`get_state`."""
        self.seed = int(state['seed'])
        for generator, saved in zip(self.generators, state['streams']):
            generator.bit_generator.state = saved


def make_rng(seed: int, num_replicas: int, deterministic: bool = True):
    """Generator for a new run."""
    if deterministic:
        return CounterRNG(seed)
    return StreamRNG(seed, num_replicas)


def rng_from_state(state: dict, num_replicas: int):
    """Rebuild a generator from :meth:`get_state` output."""
    if state['kind'] == CounterRNG.kind:
        return CounterRNG(state['seed'])
    rng = StreamRNG(state['seed'], num_replicas)
    rng.set_state(state)
    return rng
