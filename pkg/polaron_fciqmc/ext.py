# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Polaron FCIQMC extension."""

from . import config
from .qmc.receivers import write_checkpoint
from .qmc.signals import checkpoint_due

QMC_KEYS = {
    'time_step': 'POLARON_QMC_TIME_STEP',
    'target_walkers': 'POLARON_QMC_TARGET_WALKERS',
    'shift_damping': 'POLARON_QMC_SHIFT_DAMPING',
    'shift_interval': 'POLARON_QMC_SHIFT_INTERVAL',
    'deterministic_threshold': 'POLARON_QMC_DETERMINISTIC_THRESHOLD',
    'compression_threshold': 'POLARON_QMC_COMPRESSION_THRESHOLD',
    'num_replicas': 'POLARON_QMC_NUM_REPLICAS',
    'num_eigenstates': 'POLARON_QMC_NUM_EIGENSTATES',
    'orthogonalization_period': 'POLARON_QMC_ORTHOGONALIZATION_PERIOD',
    'seed': 'POLARON_QMC_SEED',
    'initial_shift': 'POLARON_QMC_INITIAL_SHIFT',
    'initial_walkers': 'POLARON_QMC_INITIAL_WALKERS',
    'deterministic': 'POLARON_QMC_DETERMINISTIC',
    'threads': 'POLARON_QMC_THREADS',
    'chunk_size': 'POLARON_QMC_CHUNK_SIZE',
    'measure_interval': 'POLARON_QMC_MEASURE_INTERVAL',
}
"""``QmcParams`` fields and the configuration keys of their defaults."""


class PolaronFCIQMC:
    """Polaron FCIQMC extension."""

    def __init__(self, app=None):
        """Extension initialization."""
        if app:
            self.init_app(app)

    def init_app(self, app):
        """Flask application initialization."""
        self.init_config(app)
        checkpoint_due.connect(write_checkpoint)
        app.extensions['polaron-fciqmc'] = self

    def init_config(self, app):
        """Initialize configuration."""
        for k in dir(config):
            if k.startswith('POLARON_') or k.startswith('CELERY_'):
                app.config.setdefault(k, getattr(config, k))

