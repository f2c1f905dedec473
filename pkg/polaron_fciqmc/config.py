# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Configuration for Polaron FCIQMC.

Every attribute prefixed with ``POLARON_`` is a default that a run
configuration file may override (see :mod:`polaron_fciqmc.schemas.loaders`).
The values can also be overridden through a Python file named by the
``POLARON_FCIQMC_CONFIG`` environment variable, which is loaded by
:func:`polaron_fciqmc.factory.create_app`.

All physical quantities are dimensionless: energies in units of
:math:`\\hbar\\omega_{LO}`, lengths in units of :math:`l_0` and momenta in
units of :math:`\\hbar/l_0`.
"""

from __future__ import absolute_import, print_function

import os


def _parse_env_bool(var_name, default=None):
    value = str(os.environ.get(var_name)).lower()
    if value in ('true', '1'):
        return True
    elif value in ('false', '0'):
        return False
    return default


def _parse_env_int(var_name, default=None):
    value = os.environ.get(var_name)
    if value is None:
        return default
    return int(value)


# Model
# =====
POLARON_ALPHA = 2.0
"""Dimensionless electron-phonon coupling constant :math:`\\alpha`."""

POLARON_BOX_LENGTH = 6.0
"""Box length :math:`L/l_0` with periodic boundaries."""

POLARON_NUM_MODES = 25
"""Number of phonon modes :math:`M` (odd).

With ``POLARON_BOX_LENGTH = 6`` this is the cutoff :math:`k_c = 4\\pi/l_0`;
the ground state figures use ``73`` (:math:`k_c = 12\\pi/l_0`).
"""

POLARON_TOTAL_MOMENTUM = 0.0
"""Conserved total momentum :math:`P` in units of :math:`\\hbar/l_0`."""

# FCIQMC engine
# =============
POLARON_QMC_TIME_STEP = 1e-3
"""Imaginary time step :math:`d\\tau`.

The death factor :math:`1 - d\\tau(H_{ii} - S)` must stay non-negative on
every visited state, so the largest diagonal energy (about :math:`k_c^2`)
bounds it. For :math:`k_c = 12\\pi/l_0` use ``5e-4`` or smaller.
"""

POLARON_QMC_TARGET_WALKERS = 100000
"""Walker number :math:`N_{target}` at which the shift is released."""

POLARON_QMC_INITIAL_WALKERS = 10.0
"""Magnitude of the single starting coefficient of every replica."""

POLARON_QMC_INITIAL_SHIFT = 0.0
"""Shift offset held until the walker number reaches the target.

Each replica starts at this value plus the diagonal energy of its
starting state, so the ground replica starts exactly here.
"""


POLARON_QMC_SHIFT_DAMPING = 0.08
"""Damping :math:`\\zeta` of the logarithmic shift update."""

POLARON_QMC_SHIFT_INTERVAL = 1
"""Number of steps :math:`A` between shift updates."""

POLARON_QMC_DETERMINISTIC_THRESHOLD = 1.0
"""Coefficients with a modulus of at least this value are projected exactly."""

POLARON_QMC_COMPRESSION_THRESHOLD = 1.0
"""Stochastic compression threshold :math:`t` (one walker)."""

POLARON_QMC_NUM_EIGENSTATES = 1
"""Number of eigenstates propagated simultaneously."""

POLARON_QMC_NUM_REPLICAS = 1
"""Independent replicas per eigenstate (``2`` enables replica estimators)."""

POLARON_QMC_ORTHOGONALIZATION_PERIOD = 1
"""Steps between Gram-Schmidt orthogonalizations of excited replicas."""

POLARON_QMC_SEED = 1234
"""Seed of the random number generator."""

POLARON_QMC_DETERMINISTIC = _parse_env_bool('POLARON_DETERMINISTIC', True)
"""Use the counter-based generator.

Results are then bit-identical for any number of threads. Set to ``False``
(or the environment variable ``POLARON_DETERMINISTIC=0``) for the faster
per-replica stream generator.
"""

POLARON_QMC_THREADS = _parse_env_int('POLARON_THREADS', 1)
"""Worker threads used for the spawning phase of a step."""

POLARON_QMC_CHUNK_SIZE = 4096
"""Number of vector entries handed to a worker in one piece."""

POLARON_QMC_MEASURE_INTERVAL = 10
"""Steps between snapshots of the replica estimators."""

POLARON_QMC_EQUILIBRATION_STEPS = 20000
"""Steps discarded before measuring."""

POLARON_QMC_MEASUREMENT_STEPS = 200000
"""Steps recorded for the estimators."""

POLARON_QMC_CHECKPOINT_INTERVAL = 0
"""Steps between checkpoint files (``0`` disables periodic checkpoints)."""

# Exact diagonalization
# =====================
POLARON_ORACLE_MAX_TOTAL_PHONONS = 6
"""Truncation :math:`N_{max}` of the total phonon number."""

POLARON_ORACLE_MAX_PER_MODE = 255
"""Truncation :math:`n_{max}` of the occupation of a single mode."""

POLARON_ORACLE_NUM_EIGENPAIRS = 4
"""Number of lowest eigenpairs computed."""

POLARON_ORACLE_MAX_BASIS_SIZE = 10 ** 7
"""Largest basis the oracle agrees to enumerate."""

POLARON_ORACLE_DENSE_LIMIT = 2000
"""Below this basis size the dense eigensolver is used."""

POLARON_ORACLE_RESIDUAL_TOLERANCE = 1e-9
"""Relative residual :math:`\\|Hv - Ev\\|/\\|v\\|` required of eigenpairs."""

# Analysis
# ========
POLARON_BLOCKING_MIN_LENGTH = 32
"""Shortest time series accepted by the blocking analysis."""

POLARON_PARITY_THRESHOLD = 0.9
"""Normalized parity overlap above which a vector is even (odd below minus
this value)."""

POLARON_STRONG_MAX_MODES = 200
"""Hessian modes summed explicitly in the zero-point sum."""

# Output and dispatch
# ===================
POLARON_OUTPUT_DIR = 'output'
"""Directory receiving ``config.echo``, ``timeseries.tsv``, ``summary.json``
and ``checkpoints/``."""

POLARON_SCAN_EAGER = True
"""Run scan points in-process instead of sending them to Celery workers."""

CELERY_BROKER_URL = os.environ.get('POLARON_BROKER_URL', 'memory://')
"""Celery broker URL, used only when ``POLARON_SCAN_EAGER`` is ``False``."""

CELERY_RESULT_BACKEND = os.environ.get(
    'POLARON_RESULT_BACKEND', 'cache+memory://')
"""Celery result backend collecting scan point results."""
