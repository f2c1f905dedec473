# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Marshmallow serializers of the run summary."""

import math

from marshmallow import Schema, fields


def _number(value):
    """Plain float, with ``None`` for values JSON cannot carry."""
    if value is None:
        return None
    value = float(value)
    return value if math.isfinite(value) else None


class Number(fields.Field):
    """Float field dumping NaN and infinities as ``null``."""

    def _serialize(self, value, attr, obj, **kwargs):
        return _number(value)


class NumberList(fields.Field):
    """Sequence (or array) of floats."""

    def _serialize(self, value, attr, obj, **kwargs):
        return [_number(v) for v in value]


class TruncationSchema(Schema):
    """Oracle truncation."""

    max_total_phonons = fields.Integer()
    max_per_mode = fields.Integer()


class ModelParamsSchema(Schema):
    """Model parameters."""

    alpha = Number()
    box_length = Number()
    num_modes = fields.Integer()
    total_momentum = Number()
    momentum_cutoff = Number()


class QmcParamsSchema(Schema):
    """FCIQMC parameters."""

    time_step = Number()
    target_walkers = Number()
    initial_walkers = Number()
    initial_shift = Number()
    shift_damping = Number()
    shift_interval = fields.Integer()
    deterministic_threshold = Number()
    compression_threshold = Number()
    num_eigenstates = fields.Integer()
    num_replicas = fields.Integer()
    orthogonalization_period = fields.Integer()
    seed = fields.Integer()
    deterministic = fields.Boolean()
    threads = fields.Integer()
    chunk_size = fields.Integer()
    measure_interval = fields.Integer()
    truncation = fields.Nested(TruncationSchema, allow_none=True)


class BlockingLevelSchema(Schema):
    """One level of a blocking table."""

    level = fields.Integer()
    blocks = fields.Integer()
    error = Number()
    error_of_error = Number()


class BlockingResultSchema(Schema):
    """Blocked mean and error with the full table."""

    mean = Number()
    error = Number()
    plateau = fields.Boolean()
    length = fields.Integer()
    levels = fields.List(fields.Nested(BlockingLevelSchema))


class ReplicaSummarySchema(Schema):
    """Shift statistics of one replica."""

    replica = fields.Integer()
    eigenstate = fields.Integer()
    shift = fields.Nested(BlockingResultSchema, allow_none=True)
    shift_released = fields.Boolean()
    mean_walkers = Number()
    final_walkers = Number()


class SpectrumPointSchema(Schema):
    """Energy and excitation energy of one eigenstate."""

    index = fields.Integer()
    energy = Number()
    energy_error = Number()
    excitation = Number()
    excitation_error = Number()
    parity = fields.Function(lambda point: point.parity.value)
    bound = fields.Boolean()
    edge_overlap = Number()


class SpectralWeightSchema(Schema):
    """Quasiparticle weight."""

    index = fields.Integer()
    value = Number()
    error = Number()
    total_momentum = Number()
    biased = fields.Boolean()


class DensityProfileSchema(Schema):
    """Phonon density per mode."""

    index = fields.Integer()
    momenta = NumberList()
    values = NumberList()
    errors = NumberList()
    biased = fields.Boolean()


class FitResultSchema(Schema):
    """Least-squares fit."""

    law = fields.String()
    parameters = NumberList()
    errors = NumberList()
    residual = Number()
    limit = Number()


class CrossingSchema(Schema):
    """Interpolated zero crossing."""

    position = Number()
    error = Number()
    lower = Number()
    upper = Number()


class SummarySchema(Schema):
    """Summary document of a run (``summary.json``)."""

    version = fields.String()
    mode = fields.String()
    model = fields.Nested(ModelParamsSchema, allow_none=True)
    qmc = fields.Nested(QmcParamsSchema, allow_none=True)
    truncation = fields.Nested(TruncationSchema, allow_none=True)
    steps = fields.Dict(keys=fields.String(), values=fields.Integer())
    converged = fields.Boolean(allow_none=True)
    spectrum = fields.List(fields.Nested(SpectrumPointSchema))
    weights = fields.List(fields.Nested(SpectralWeightSchema))
    densities = fields.List(fields.Nested(DensityProfileSchema))
    replicas = fields.List(fields.Nested(ReplicaSummarySchema))
    fits = fields.Dict(keys=fields.String(),
                       values=fields.Nested(FitResultSchema))
    crossing = fields.Nested(CrossingSchema, allow_none=True)
    tables = fields.Dict(keys=fields.String(), values=fields.Raw())
    metadata = fields.Dict(keys=fields.String(), values=fields.Raw())
