# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Run configuration loaders.

A run configuration is a UTF-8 text of ``key = value`` lines. Blank lines
and everything after a ``#`` are ignored; grids are comma-separated lists.
Absent keys take their defaults from the application configuration (or
:mod:`polaron_fciqmc.config` outside an application); unknown keys are
errors.
"""

import math

from flask import current_app, has_app_context
from marshmallow import Schema, fields, post_load, pre_load, \
    validates_schema
from marshmallow.exceptions import ValidationError
from marshmallow.validate import OneOf, Range

from .. import config
from ..ext import QMC_KEYS
from ..fock.errors import InvalidModelError
from ..models import MODES, RunConfig
from ..qmc.errors import InvalidQmcParamsError
from .errors import ConfigParseError, ConfigValidationError

DEFAULT_KEYS = dict(QMC_KEYS, **{
    'alpha': 'POLARON_ALPHA',
    'box_length': 'POLARON_BOX_LENGTH',
    'num_modes': 'POLARON_NUM_MODES',
    'total_momentum': 'POLARON_TOTAL_MOMENTUM',
    'equilibration_steps': 'POLARON_QMC_EQUILIBRATION_STEPS',
    'measurement_steps': 'POLARON_QMC_MEASUREMENT_STEPS',
    'checkpoint_interval': 'POLARON_QMC_CHECKPOINT_INTERVAL',
    'max_total_phonons': 'POLARON_ORACLE_MAX_TOTAL_PHONONS',
    'max_per_mode': 'POLARON_ORACLE_MAX_PER_MODE',
    'num_eigenpairs': 'POLARON_ORACLE_NUM_EIGENPAIRS',
    'parity_threshold': 'POLARON_PARITY_THRESHOLD',
    'strong_max_index': 'POLARON_STRONG_MAX_MODES',
    'output_dir': 'POLARON_OUTPUT_DIR',
})
"""Configuration keys and the application settings of their defaults."""

STATIC_DEFAULTS = {
    'kc_over_pi': None,
    'restart': None,
    'engine': 'qmc',
    'restrict_to_truncation': False,
    'alphas': [],
    'box_lengths': [],
    'cutoffs_over_pi': [],
    'target_walker_grid': [],
}

LIST_KEYS = ('alphas', 'box_lengths', 'cutoffs_over_pi',
             'target_walker_grid')


def default_values() -> dict:
    """Defaults of every key except ``mode``."""
    if has_app_context():
        source = current_app.config
    else:
        source = {k: getattr(config, k) for k in dir(config)
                  if k.isupper()}
    values = {key: source[setting] for key, setting in DEFAULT_KEYS.items()}
    values.update({k: (list(v) if isinstance(v, list) else v)
                   for k, v in STATIC_DEFAULTS.items()})
    return values


class RunConfigSchema(Schema):
    """Run configuration schema."""

    mode = fields.String(required=True, validate=OneOf(MODES))

    alpha = fields.Float(validate=Range(min=0))
    box_length = fields.Float(validate=Range(min=0, min_inclusive=False))
    num_modes = fields.Integer(allow_none=True, validate=Range(min=1))
    kc_over_pi = fields.Float(allow_none=True,
                              validate=Range(min=0, min_inclusive=False))
    total_momentum = fields.Float()

    time_step = fields.Float()
    target_walkers = fields.Float()
    initial_walkers = fields.Float()
    initial_shift = fields.Float()
    shift_damping = fields.Float()
    shift_interval = fields.Integer()
    deterministic_threshold = fields.Float()
    compression_threshold = fields.Float()
    num_eigenstates = fields.Integer()
    num_replicas = fields.Integer()
    orthogonalization_period = fields.Integer()
    seed = fields.Integer(validate=Range(min=0, max=2 ** 64 - 1))
    deterministic = fields.Boolean()
    threads = fields.Integer()
    chunk_size = fields.Integer()
    measure_interval = fields.Integer()
    equilibration_steps = fields.Integer(validate=Range(min=0))
    measurement_steps = fields.Integer(validate=Range(min=0))
    checkpoint_interval = fields.Integer(validate=Range(min=0))
    restart = fields.String(allow_none=True)

    max_total_phonons = fields.Integer()
    max_per_mode = fields.Integer()
    num_eigenpairs = fields.Integer(validate=Range(min=1))
    restrict_to_truncation = fields.Boolean()

    engine = fields.String(validate=OneOf(('qmc', 'oracle')))
    alphas = fields.List(fields.Float(validate=Range(min=0)))
    box_lengths = fields.List(
        fields.Float(validate=Range(min=0, min_inclusive=False)))
    cutoffs_over_pi = fields.List(
        fields.Float(validate=Range(min=0, min_inclusive=False)))
    target_walker_grid = fields.List(
        fields.Float(validate=Range(min=0, min_inclusive=False)))

    parity_threshold = fields.Float(validate=Range(min=0, max=1))
    strong_max_index = fields.Integer(validate=Range(min=0))
    output_dir = fields.String()

    @pre_load
    def split_lists(self, data, **kwargs):
        """Split comma-separated grids."""
        data = dict(data)
        for key in LIST_KEYS:
            if isinstance(data.get(key), str):
                data[key] = [v.strip() for v in data[key].split(',')
                             if v.strip()]
        return data

    @validates_schema
    def validate_parameters(self, data, **kwargs):
        """Validate the parameter objects built from the values."""
        data = resolve_modes(data)
        run = RunConfig(data)
        try:
            run.model
            run.truncation
            run.qmc
        except (InvalidModelError, InvalidQmcParamsError) as exc:
            raise ValidationError(str(exc), exc.field)

        mode = data['mode']
        if mode in ('excited', 'signproblem') and \
                data['num_eigenstates'] < 2:
            raise ValidationError(f'mode {mode} needs at least 2',
                                  'num_eigenstates')
        if mode == 'scan' and len(data['alphas']) < 2:
            raise ValidationError('a scan needs at least two values',
                                  'alphas')
        if mode == 'scan' and data['engine'] == 'qmc' and \
                data['num_eigenstates'] < 2:
            raise ValidationError('a scan needs at least 2',
                                  'num_eigenstates')
        if mode == 'scan' and data['engine'] == 'oracle' and \
                data['num_eigenpairs'] < 2:
            raise ValidationError('a scan needs at least 2',
                                  'num_eigenpairs')
        if mode == 'signproblem' and data['engine'] != 'qmc':
            raise ValidationError('mode signproblem needs walkers',
                                  'engine')
        if mode == 'signproblem' and not data['target_walker_grid']:
            raise ValidationError('required in mode signproblem',
                                  'target_walker_grid')
        if mode == 'convergence' and \
                not (data['cutoffs_over_pi'] or data['box_lengths']):
            raise ValidationError(
                'mode convergence needs cutoffs_over_pi or box_lengths',
                'cutoffs_over_pi')

    @post_load
    def to_config(self, data, **kwargs):
        """Build the :class:`RunConfig`."""
        return RunConfig(resolve_modes(data))


def resolve_modes(data: dict) -> dict:
    """Derive ``num_modes`` from ``kc_over_pi`` when it is given.

    :math:`M = (k_c/\\pi) L + 1` must be an integer and agree with an
    explicit ``num_modes``.
    """
    data = dict(data)
    if data.get('kc_over_pi') is None:
        if data.get('num_modes') is None:
            raise ValidationError('num_modes or kc_over_pi is required',
                                  'num_modes')
        return data
    modes = data['kc_over_pi'] * data['box_length'] + 1
    if abs(modes - round(modes)) > 1e-9:
        raise ValidationError(
            f'kc_over_pi * box_length + 1 = {modes} is not an integer',
            'kc_over_pi')
    modes = int(round(modes))
    if data.get('num_modes') not in (None, modes):
        raise ValidationError(
            f'disagrees with kc_over_pi, which gives {modes}', 'num_modes')
    data['num_modes'] = modes
    return data


def parse_lines(text: str) -> dict:
    """Split a configuration text into raw ``{key: value}`` strings."""
    raw = {}
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition('=')
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise ConfigParseError(number, f'expected "key = value", got '
                                           f'{line!r}')
        if key in raw:
            raise ConfigParseError(number, f'duplicate key {key!r}')
        raw[key] = value
    return raw


def load_config(raw: dict) -> RunConfig:
    """Validate raw values on top of the defaults."""
    values = default_values()
    if 'kc_over_pi' in raw and 'num_modes' not in raw:
        values['num_modes'] = None
    values.update(raw)
    try:
        return RunConfigSchema().load(values)
    except ValidationError as exc:
        messages = exc.messages if isinstance(exc.messages, dict) \
            else {'_schema': exc.messages}
        raise ConfigValidationError(messages)


def parse_config(text: str) -> RunConfig:
    """Parse and validate a run configuration text."""
    return load_config(parse_lines(text))


def override_config(run: RunConfig, **changes) -> RunConfig:
    """Re-validated copy with some values replaced; ``None`` is skipped."""
    values = dict(run.values)
    values.update({k: v for k, v in changes.items() if v is not None})
    return load_config(values)


def _format(value) -> str:
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return repr(value) if math.isfinite(value) else str(value)
    if isinstance(value, (list, tuple)):
        return ', '.join(_format(v) for v in value)
    return str(value)


def dump_config(run: RunConfig) -> str:
    """Configuration text that parses back to ``run``."""
    lines = ['# Resolved run configuration', f'mode = {run.mode}']
    for key in sorted(run.values):
        value = run.values[key]
        if key == 'mode' or value is None:
            continue
        if isinstance(value, list) and not value:
            continue
        lines.append(f'{key} = {_format(value)}')
    return '\n'.join(lines) + '\n'
