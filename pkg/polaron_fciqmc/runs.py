# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Run modes.

Each ``run_*`` function takes a resolved :class:`~.models.RunConfig`,
writes the output directory and returns the summary document. They need
an application context.
"""

import math
import os
from typing import Callable, List, Optional

from flask import current_app

from .models import RunConfig
from .observables.api import dense_density, exact_spectrum, \
    snapshot_density, snapshot_weight, spectrum
from .observables.errors import DegenerateOverlapError, FitError, \
    NoCrossingError, SeriesTooShortError
from .observables.fits import critical_walker_number, \
    fit_box_convergence, fit_cutoff_convergence, interpolate_crossing
from .observables.models import SpectralWeight
from .oracle.api import solve
from .outputs import checkpoint_dir, prepare_output_dir, write_summary, \
    write_table, write_timeseries
from .proxies import current_logger
from .qmc.api import run
from .qmc.checkpoint import restore
from .qmc.errors import InvalidQmcParamsError
from .qmc.models import QmcReport, QmcState
from .qmc.receivers import latest_checkpoint
from .qmc.signals import checkpoint_due
from .schemas.errors import ConfigParseError, ConfigValidationError
from .schemas.loaders import load_config, override_config, parse_lines
from .strong.api import crossover_table, energy_strong, energy_weak, \
    excitation_energies_strong, hessian_spectrum, zero_point_sum, \
    zero_point_tail
from .strong.models import PekarSolution
from .tasks import dispatch_points

CROSSING_CAVEAT = (
    'Linear interpolation between grid points. Excitations inside the '
    'discretized continuum depend on the box length, so the crossing is '
    'only as precise as the grid spacing allows.')

EDGE_OVERLAP_LIMIT = 0.5
"""Edge overlap above which an eigenstate is the continuum edge state."""

DEFAULT_CROSSOVER_ALPHAS = tuple(0.25 * i for i in range(1, 21))

ZERO_POINT_ORDERS = (10, 25, 50, 100, 200, 400)


def load_run(path: str, mode: str, seed: int = None, threads: int = None,
             deterministic: bool = None) -> RunConfig:
    """Read the configuration file of a ``mode`` run.

    A missing ``mode`` key is taken from the command; a different one is
    a validation error. Command-line overrides are validated again.
    """
    try:
        with open(path, 'r', encoding='utf-8') as fp:
            text = fp.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise ConfigParseError(0, f'cannot read {path}: {exc}')
    raw = parse_lines(text)
    raw.setdefault('mode', mode)
    if raw['mode'] != mode:
        raise ConfigValidationError(
            {'mode': [f'configuration is for {raw["mode"]!r}, '
                      f'not {mode!r}']})
    config = load_config(raw)
    return override_config(config, seed=seed, threads=threads,
                           deterministic=deterministic)


def restore_state(config: RunConfig) -> Optional[QmcState]:
    """State of the checkpoint named by ``restart``, if any.

    ``restart`` is a checkpoint file or a directory whose newest
    checkpoint is used.
    """
    path = config.restart
    if not path:
        return None
    if os.path.isdir(path):
        found = latest_checkpoint(path)
        if found is None:
            raise InvalidQmcParamsError('restart', path,
                                        'directory holds no checkpoint')
        path = found
    with open(path, 'rb') as fp:
        state = restore(fp.read())
    params = config.qmc
    if state.num_modes != config.model.num_modes or \
            len(state.replicas) != params.num_replica_vectors or \
            state.num_eigenstates != params.num_eigenstates:
        raise InvalidQmcParamsError(
            'restart', path, 'checkpoint does not match the configuration')
    current_logger.info('Continuing from %s at step %d.', path, state.step)
    return state


def run_fciqmc(config: RunConfig,
               callback: Callable[[QmcState], None] = None) -> QmcReport:
    """Propagate the configured replicas, restarting if requested.

    A checkpoint of the final state is always written.
    """
    directory = checkpoint_dir(config)
    report = run(config.model, config.qmc, config['equilibration_steps'],
                 config['measurement_steps'], state=restore_state(config),
                 callback=callback,
                 checkpoint_interval=config['checkpoint_interval'],
                 checkpoint_dir=directory)
    checkpoint_due.send(current_app._get_current_object(),
                        state=report.state, directory=directory)
    return report


def _spectrum_table(config: RunConfig, points):
    rows = [(p.index, p.energy, p.energy_error, p.excitation,
             p.excitation_error, p.parity.value, str(p.bound).lower())
            for p in points]
    write_table(config, 'spectrum.tsv',
                ('index', 'energy', 'energy_error', 'excitation',
                 'excitation_error', 'parity', 'bound'), rows,
                comments=['Energies in units of hbar omega_LO; excitation '
                          '= E_j - E_0.'])


def _observable_tables(config: RunConfig, weights, densities):
    write_table(config, 'weights.tsv',
                ('index', 'weight', 'error', 'biased'),
                [(w.index, w.value, w.error, str(w.biased).lower())
                 for w in weights],
                comments=['Spectral weight Z_j = |<vac|j>|^2.'])
    rows = []
    for profile in densities:
        rows.extend((profile.index, k, n, e) for k, n, e in
                    zip(profile.momenta, profile.values, profile.errors))
    write_table(config, 'density.tsv',
                ('index', 'momentum', 'density', 'error'), rows,
                comments=['Phonon number density per mode, momenta in '
                          'units of hbar/l_0.'])


def qmc_observables(report: QmcReport, min_length: int):
    """Spectral weights and densities of every eigenstate of a run.

    Uses the replica estimators when two replica sets were propagated and
    the biased single-replica ones otherwise. Eigenstates whose estimate
    is not possible are reported in the returned warnings.
    """
    biased = report.state.num_replicas < 2
    weights, densities, warnings = [], [], []
    for e in range(report.state.num_eigenstates):
        if not len(report.measured_snapshots(e)):
            warnings.append(f'eigenstate {e}: no snapshots recorded')
            continue
        try:
            weights.append(snapshot_weight(report, e, biased, min_length))
            densities.append(snapshot_density(report, e, biased,
                                              min_length))
        except DegenerateOverlapError as exc:
            current_logger.warning('Eigenstate %d: %s', e, exc)
            warnings.append(f'eigenstate {e}: {exc}')
    return weights, densities, warnings


def run_qmc_mode(config: RunConfig,
                 callback: Callable[[QmcState], None] = None) -> dict:
    """Ground (``gs``) or excited state (``excited``) FCIQMC run."""
    prepare_output_dir(config)
    min_length = current_app.config['POLARON_BLOCKING_MIN_LENGTH']
    report = run_fciqmc(config, callback)
    write_timeseries(config, report.state)

    warnings = []
    try:
        points = spectrum(report, config['parity_threshold'], min_length)
    except SeriesTooShortError as exc:
        current_logger.warning('No energy estimate: %s', exc)
        points, warnings = [], [str(exc)]
    weights, densities, more = qmc_observables(report, min_length)
    warnings.extend(more)
    _spectrum_table(config, points)
    _observable_tables(config, weights, densities)

    return write_summary(
        config, model=config.model, qmc=config.qmc,
        steps={'equilibration': report.equilibration_steps,
               'measurement': report.measurement_steps,
               'final': report.state.step},
        converged=report.converged, spectrum=points, weights=weights,
        densities=densities, replicas=report.replicas,
        metadata={'warnings': warnings, 'restart': config.restart,
                  'estimators': 'biased' if report.state.num_replicas < 2
                  else 'replica'})


def run_oracle_mode(config: RunConfig) -> dict:
    """Exact eigenpairs on the truncated space."""
    prepare_output_dir(config)
    write_timeseries(config, None)
    app_config = current_app.config
    solution = solve(
        config.model, config.truncation, config['num_eigenpairs'],
        max_size=app_config['POLARON_ORACLE_MAX_BASIS_SIZE'],
        dense_limit=app_config['POLARON_ORACLE_DENSE_LIMIT'],
        tolerance=app_config['POLARON_ORACLE_RESIDUAL_TOLERANCE'])
    vectors = [solution.walker_vector(j)
               for j in range(len(solution.energies))]
    points = exact_spectrum(solution.energies, vectors,
                            config['parity_threshold'], config.model)
    weights = [SpectralWeight(j, v.vacuum_coefficient ** 2 / v.dot(v), 0.0,
                              config.model.total_momentum)
               for j, v in enumerate(vectors)]
    densities = [dense_density(v, config.model, j)
                 for j, v in enumerate(vectors)]
    _spectrum_table(config, points)
    _observable_tables(config, weights, densities)
    return write_summary(
        config, model=config.model, truncation=config.truncation,
        spectrum=points, weights=weights, densities=densities,
        converged=True,
        metadata={'basis_size': int(solution.basis.shape[0])})


def run_strongcoupling_mode(config: RunConfig) -> dict:
    """Hessian spectrum, zero-point sum and weak/strong crossover."""
    prepare_output_dir(config)
    write_timeseries(config, None)
    max_index = config['strong_max_index']
    modes = hessian_spectrum(max_index)
    write_table(config, 'hessian.tsv', ('j', 'parity', 'n_j', 'omega_j'),
                [(m.index, m.parity, m.order, m.frequency) for m in modes],
                comments=['Fluctuation frequencies around the Pekar '
                          'minimizer, units of hbar omega_LO.'])

    orders = sorted({j for j in ZERO_POINT_ORDERS if j < max_index}
                    | {max_index})
    zero_point = [(j, zero_point_sum(j, tail=False), zero_point_tail(j),
                   zero_point_sum(j)) for j in orders]
    write_table(config, 'zero_point.tsv',
                ('max_index', 'explicit_sum', 'tail', 'total'), zero_point,
                comments=['Convergence of 1/2 sum_j (omega_j - 1) with '
                          'the number of explicit modes.'])

    alphas = config['alphas'] or list(DEFAULT_CROSSOVER_ALPHAS)
    crossover = crossover_table(alphas, max_index)
    write_table(config, 'crossover.tsv', ('alpha', 'weak', 'strong'),
                crossover,
                comments=['Ground energies of the weak- and strong-coupling '
                          'expansions.'])

    excitations = excitation_energies_strong(min(max_index, 8))
    alpha = config['alpha']
    tables = {
        'zero_point_sum': zero_point[-1][3],
        'excitations': [{'index': x.index, 'energy': x.energy,
                         'bound': x.bound} for x in excitations],
        'energy_weak': energy_weak(alpha),
    }
    if alpha > 0:
        tables['energy_strong'] = energy_strong(alpha, max_index=max_index)
        tables['pekar_norm'] = PekarSolution(alpha).norm()
    return write_summary(config, model=config.model, tables=tables,
                         metadata={'modes': len(modes)})


def _ok(results: List[dict]) -> List[dict]:
    return [r for r in results if r['status'] == 'ok']


def _point(result: dict, index: int) -> Optional[dict]:
    for point in result.get('spectrum', []):
        if point['index'] == index:
            return point
    return None


def threshold_point(result: dict) -> Optional[dict]:
    """Excited point whose excitation is compared with the continuum edge.

    The lowest excited state that is not the edge state
    :math:`(a_0^\\dagger - g)|GS\\rangle` itself, otherwise the first
    excited state.
    """
    excited = [p for p in result.get('spectrum', [])
               if p['index'] > 0 and p['excitation'] is not None]
    inside = [p for p in excited
              if (p.get('edge_overlap') or 0.0) < EDGE_OVERLAP_LIMIT]
    if inside:
        return min(inside, key=lambda p: p['excitation'])
    return excited[0] if excited else None


def _status_columns(result: dict):
    return (result['status'], result.get('error', ''))


def run_threshold_scan(config: RunConfig,
                       callback: Callable[[dict], None] = None) -> dict:
    """Coupling at which an excitation drops below the continuum edge.

    Locates the sign change of :math:`E_1 - E_0 - 1` over the coupling
    grid by linear interpolation.
    """
    prepare_output_dir(config)
    write_timeseries(config, None)
    alphas = config['alphas']
    results = dispatch_points(config, [{'alpha': a} for a in alphas],
                              [f'alpha={a!r}' for a in alphas], callback)
    rows, positions, values, errors = [], [], [], []
    for alpha, result in zip(alphas, results):
        ground = _point(result, 0)
        excited = threshold_point(result)
        if ground is None or excited is None:
            rows.append((alpha, None, None, None, None, None, '',
                         'error' if result['status'] == 'error'
                         else 'incomplete', result.get('error', '')))
            continue
        gap = excited['excitation'] - 1.0
        rows.append((alpha, ground['energy'], ground['energy_error'],
                     excited['excitation'], excited['excitation_error'],
                     gap, excited['parity']) + _status_columns(result))
        positions.append(alpha)
        values.append(gap)
        errors.append(excited['excitation_error'] or 0.0)
    write_table(config, 'scan.tsv',
                ('alpha', 'energy', 'energy_error', 'excitation',
                 'excitation_error', 'gap', 'parity', 'status', 'error'),
                [tuple('' if v is None else v for v in row) for row in rows],
                comments=['gap = excitation - 1 of the lowest excited state '
                          'other than the continuum edge state.',
                          CROSSING_CAVEAT])

    crossing = None
    try:
        crossing = interpolate_crossing(positions, values, errors)
    except NoCrossingError as exc:
        current_logger.warning('Threshold scan: %s', exc)
        failure = exc
    else:
        failure = None
        current_logger.info('Threshold crossing at alpha = %.4f +- %.4f.',
                            crossing.position, crossing.error)
    summary = write_summary(
        config, model=config.model, crossing=crossing,
        tables={'points': [
            {'alpha': a, 'status': r['status'], 'error': r.get('error'),
             'spectrum': r.get('spectrum', [])}
            for a, r in zip(alphas, results)]},
        metadata={'engine': config['engine'], 'caveat': CROSSING_CAVEAT,
                  'failed_points': len(results) - len(_ok(results))})
    if failure is not None:
        raise failure
    return summary


def run_signproblem_scan(config: RunConfig,
                         callback: Callable[[dict], None] = None) -> dict:
    """Mean shifts over a grid of target walker numbers.

    The critical walker number is the smallest grid point whose mean
    excited shift agrees with that of the largest grid point within three
    standard errors.
    """
    prepare_output_dir(config)
    write_timeseries(config, None)
    targets = config['target_walker_grid']
    results = dispatch_points(
        config, [{'target_walkers': n} for n in targets],
        [f'target_walkers={n!r}' for n in targets], callback)
    rows = []
    usable = {0: ([], [], []), 1: ([], [], [])}
    for target, result in zip(targets, results):
        ground, excited = _point(result, 0), _point(result, 1)
        row = [target]
        for index, point in ((0, ground), (1, excited)):
            if point is None or point['energy'] is None:
                row.extend(('', ''))
                continue
            row.extend((point['energy'], point['energy_error']))
            grid, means, errors = usable[index]
            grid.append(target)
            means.append(point['energy'])
            errors.append(point['energy_error'] or 0.0)
        row.append(str(result.get('converged', False)).lower())
        rows.append(tuple(row) + _status_columns(result))
    write_table(config, 'signproblem.tsv',
                ('target_walkers', 'ground_shift', 'ground_error',
                 'excited_shift', 'excited_error', 'converged', 'status',
                 'error'), rows,
                comments=['Mean shift of the ground and first excited '
                          'replicas against the target walker number.'])

    tables = {}
    for index, name in ((1, 'critical_walkers'),
                        (0, 'critical_walkers_ground')):
        grid, means, errors = usable[index]
        tables[name] = critical_walker_number(grid, means, errors) \
            if grid else None
    return write_summary(
        config, model=config.model, qmc=config.qmc, tables=tables,
        metadata={'failed_points': len(results) - len(_ok(results))})


def run_convergence(config: RunConfig,
                    callback: Callable[[dict], None] = None) -> dict:
    """Ground energy against the momentum cutoff and the box length."""
    prepare_output_dir(config)
    write_timeseries(config, None)
    model = config.model
    fits, tables, rows = {}, {}, []

    cutoffs = config['cutoffs_over_pi']
    if cutoffs:
        results = dispatch_points(
            config, [{'kc_over_pi': c, 'num_modes': None} for c in cutoffs],
            [f'kc_over_pi={c!r}' for c in cutoffs], callback)
        x, y, e = _ground_series('cutoff', [c * math.pi for c in cutoffs],
                                 results, rows)
        try:
            fits['cutoff'] = fit_cutoff_convergence(x, y, e)
        except FitError as exc:
            current_logger.warning('Cutoff fit: %s', exc)
        tables['cutoff_points'] = len(x)

    lengths = config['box_lengths']
    if lengths:
        kc_over_pi = config['kc_over_pi'] or \
            (model.num_modes - 1) / model.box_length
        results = dispatch_points(
            config, [{'box_length': length, 'kc_over_pi': kc_over_pi,
                      'num_modes': None} for length in lengths],
            [f'box_length={length!r}' for length in lengths], callback)
        x, y, e = _ground_series('box_length', lengths, results, rows)
        try:
            box = fit_box_convergence(x, y, e)
            fits['box_exponential'] = box.exponential
            fits['box_algebraic'] = box.algebraic
            tables['box_preferred'] = box.preferred
        except FitError as exc:
            current_logger.warning('Box length fit: %s', exc)
        tables['box_points'] = len(x)

    write_table(config, 'convergence.tsv',
                ('grid', 'value', 'energy', 'energy_error', 'status',
                 'error'), rows,
                comments=['Ground energy per grid point; cutoff values are '
                          'k_c in units of 1/l_0.'])
    return write_summary(config, model=model, fits=fits, tables=tables,
                         metadata={'engine': config['engine']})


def _ground_series(grid: str, positions, results, rows):
    """Append table rows and return the usable ``(x, E_0, errors)``."""
    x, y, e = [], [], []
    for position, result in zip(positions, results):
        ground = _point(result, 0)
        if ground is None or ground['energy'] is None:
            rows.append((grid, position, '', '') + _status_columns(result))
            continue
        rows.append((grid, position, ground['energy'],
                     ground['energy_error']) + _status_columns(result))
        x.append(position)
        y.append(ground['energy'])
        e.append(ground['energy_error'] or 0.0)
    errors = e if any(e) else None
    return x, y, errors


MODE_RUNNERS = {
    'gs': run_qmc_mode,
    'excited': run_qmc_mode,
    'oracle': run_oracle_mode,
    'strongcoupling': run_strongcoupling_mode,
    'scan': run_threshold_scan,
    'signproblem': run_signproblem_scan,
    'convergence': run_convergence,
}
"""Runner of every mode."""

