# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Run configuration model."""

from typing import Optional

from .fock.models import ModelParams
from .oracle.models import Truncation
from .qmc.models import QmcParams

MODES = ('gs', 'excited', 'scan', 'oracle', 'strongcoupling', 'signproblem',
         'convergence')
"""Run modes, one command-line subcommand each."""

QMC_FIELDS = (
    'time_step', 'target_walkers', 'shift_damping', 'shift_interval',
    'deterministic_threshold', 'compression_threshold', 'num_replicas',
    'num_eigenstates', 'orthogonalization_period', 'seed', 'initial_shift',
    'initial_walkers', 'deterministic', 'threads', 'chunk_size',
    'measure_interval',
)


class RunConfig:
    """Fully resolved run configuration.

    ``values`` maps every configuration key to its value, defaults
    included; see :mod:`polaron_fciqmc.schemas.loaders`.
    """

    def __init__(self, values: dict):
        """Store the resolved values."""
        self.values = dict(values)

    def __getitem__(self, key):
        """Value of configuration key ``key``."""
        return self.values[key]

    @property
    def mode(self) -> str:
        """Run mode."""
        return self.values['mode']

    @property
    def model(self) -> ModelParams:
        """Model parameters."""
        v = self.values
        return ModelParams(v['alpha'], v['box_length'], v['num_modes'],
                           v['total_momentum'])

    @property
    def truncation(self) -> Truncation:
        """Truncation of the exact oracle."""
        return Truncation(self.values['max_total_phonons'],
                          self.values['max_per_mode'])

    @property
    def qmc(self) -> QmcParams:
        """FCIQMC parameters.

        With ``restrict_to_truncation`` the projector is restricted to the
        oracle truncation.
        """
        values = {k: self.values[k] for k in QMC_FIELDS}
        if self.values['restrict_to_truncation']:
            values['truncation'] = self.truncation
        return QmcParams(**values)

    @property
    def output_dir(self) -> str:
        """Output directory."""
        return self.values['output_dir']

    @property
    def restart(self) -> Optional[str]:
        """Checkpoint to continue from."""
        return self.values.get('restart')

    def replace(self, **changes) -> 'RunConfig':
        """Copy with some values replaced (not re-validated)."""
        values = dict(self.values)
        values.update(changes)
        return RunConfig(values)

    def __eq__(self, other):
        """Equality of the resolved values."""
        if not isinstance(other, RunConfig):
            return NotImplemented
        return self.values == other.values

    def __repr__(self):
        """String representation of the configuration."""
        return f'<RunConfig mode={self.mode}>'
