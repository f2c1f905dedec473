# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Asynchronous tasks.

Grid points of the scan modes are independent runs. They are sent as
Celery tasks, or applied in-process when ``POLARON_SCAN_EAGER`` is set.
"""

from typing import Callable, List, Optional, Sequence

from celery import shared_task
from flask import current_app

from .errors import PolaronError
from .models import RunConfig
from .observables.api import exact_spectrum, spectrum
from .oracle.api import solve
from .proxies import current_logger
from .qmc.api import run
from .schemas.loaders import load_config
from .schemas.serializers import SpectrumPointSchema


def point_spectrum(config: RunConfig):
    """Spectrum of one grid point and whether it converged."""
    app_config = current_app.config
    if config['engine'] == 'oracle':
        solution = solve(
            config.model, config.truncation, config['num_eigenpairs'],
            max_size=app_config['POLARON_ORACLE_MAX_BASIS_SIZE'],
            dense_limit=app_config['POLARON_ORACLE_DENSE_LIMIT'],
            tolerance=app_config['POLARON_ORACLE_RESIDUAL_TOLERANCE'])
        vectors = [solution.walker_vector(j)
                   for j in range(len(solution.energies))]
        return exact_spectrum(solution.energies, vectors,
                              config['parity_threshold'],
                              config.model), True
    report = run(config.model, config.qmc, config['equilibration_steps'],
                 config['measurement_steps'])
    points = spectrum(report, config['parity_threshold'],
                      app_config['POLARON_BLOCKING_MIN_LENGTH'])
    return points, report.converged


@shared_task(ignore_result=False)
def run_point(values: dict, changes: dict, label: str = None) -> dict:
    """Run one grid point; failures come back as error rows."""
    merged = dict(values)
    merged.update(changes)
    try:
        config = load_config(merged)
        points, converged = point_spectrum(config)
    except PolaronError as exc:
        current_logger.exception('Grid point %s failed.', label)
        return {'label': label, 'changes': changes, 'status': 'error',
                'error': f'{type(exc).__name__}: {exc}'}
    return {'label': label, 'changes': changes, 'status': 'ok',
            'converged': converged,
            'spectrum': SpectrumPointSchema(many=True).dump(points)}


def dispatch_points(config: RunConfig, changes: Sequence[dict],
                    labels: Sequence[str],
                    callback: Optional[Callable[[dict], None]] = None
                    ) -> List[dict]:
    """Run every grid point; results come back in grid order."""
    values = {k: v for k, v in config.values.items() if k != 'restart'}
    values['checkpoint_interval'] = 0
    tasks = [run_point.s(values, c, label)
             for c, label in zip(changes, labels)]
    results = []
    if current_app.config['POLARON_SCAN_EAGER']:
        for task in tasks:
            results.append(task.apply(throw=True).get())
            if callback is not None:
                callback(results[-1])
    else:
        pending = [task.apply_async() for task in tasks]
        for result in pending:
            results.append(result.get())
            if callback is not None:
                callback(results[-1])
    return results
