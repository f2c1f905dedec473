# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.
"""Test the command line and the output directory."""

import json
import os

import pytest
from helpers import read_tsv

from polaron_fciqmc.cli import EXIT_CONFIG_ERROR, EXIT_RUN_ERROR, cli
from polaron_fciqmc.runs import load_run
from polaron_fciqmc.schemas.loaders import parse_config

SMALL = """
alpha = 0.5
box_length = 2
num_modes = 3
max_total_phonons = 2
max_per_mode = 2
"""

WALKERS = SMALL + """
restrict_to_truncation = true
time_step = 0.002
target_walkers = 20
initial_walkers = 10
equilibration_steps = 5
measurement_steps = 40
measure_interval = 1
"""


def _summary(output_dir):
    with open(os.path.join(output_dir, 'summary.json')) as fp:
        return json.load(fp)


def test_gs(runner, write_config, output_dir):
    """Test a ground state run and its output directory."""
    path = write_config('mode = gs\nnum_replicas = 2\n' + WALKERS)
    result = runner.invoke(cli, ['gs', '-c', path, '--seed', '3'])
    assert result.exit_code == 0, result.output

    assert sorted(os.listdir(output_dir)) == [
        'checkpoints', 'config.echo', 'density.tsv', 'spectrum.tsv',
        'summary.json', 'timeseries.tsv', 'weights.tsv']
    assert os.listdir(os.path.join(output_dir, 'checkpoints')) == [
        'step-0000000045.fpqmc']

    header, rows = read_tsv(os.path.join(output_dir, 'timeseries.tsv'))
    assert header == ['step', 'replica', 'shift', 'walkers', 'vacuum_coeff']
    assert len(rows) == 45 * 2

    summary = _summary(output_dir)
    assert summary['mode'] == 'gs'
    assert summary['steps'] == {'equilibration': 5, 'measurement': 40,
                                'final': 45}
    assert summary['qmc']['seed'] == 3
    assert summary['metadata']['estimators'] == 'replica'
    assert len(summary['spectrum']) == 1


def test_config_echo(runner, write_config, output_dir):
    """Test that the echo parses back to the run configuration."""
    path = write_config('mode = gs\n' + WALKERS)
    assert runner.invoke(cli, ['gs', '-c', path,
                               '--no-deterministic']).exit_code == 0
    with open(os.path.join(output_dir, 'config.echo')) as fp:
        echoed = parse_config(fp.read())
    assert echoed == load_run(path, 'gs', deterministic=False)
    assert echoed['deterministic'] is False


def test_restart(runner, write_config, output_dir, tmp_path):
    """Test that a run continues from the checkpoints of another."""
    first = write_config('mode = gs\n' + WALKERS)
    assert runner.invoke(cli, ['gs', '-c', first]).exit_code == 0
    resumed_dir = str(tmp_path / 'resumed')
    second = write_config(
        'mode = gs\n' + WALKERS.replace('measurement_steps = 40',
                                        'measurement_steps = 60')
        + f'restart = {os.path.join(output_dir, "checkpoints")}\n',
        name='resumed.cfg', output=resumed_dir)
    result = runner.invoke(cli, ['gs', '-c', second])
    assert result.exit_code == 0, result.output
    summary = _summary(resumed_dir)
    assert summary['steps']['final'] == 65
    assert summary['metadata']['restart'].endswith('checkpoints')


def test_excited(runner, write_config, output_dir):
    """Test an excited state run."""
    path = write_config('mode = excited\nnum_eigenstates = 2\n' + WALKERS)
    result = runner.invoke(cli, ['excited', '-c', path, '--threads', '2'])
    assert result.exit_code == 0, result.output
    summary = _summary(output_dir)
    assert [p['index'] for p in summary['spectrum']] == [0, 1]
    assert summary['metadata']['estimators'] == 'biased'
    _, rows = read_tsv(os.path.join(output_dir, 'spectrum.tsv'))
    assert len(rows) == 2


def test_oracle(runner, write_config, output_dir):
    """Test the exact oracle mode."""
    path = write_config('mode = oracle\nnum_eigenpairs = 10\n' + SMALL)
    result = runner.invoke(cli, ['oracle', '-c', path])
    assert result.exit_code == 0, result.output
    summary = _summary(output_dir)
    assert summary['metadata']['basis_size'] == 10
    assert len(summary['spectrum']) == 10
    energies = [p['energy'] for p in summary['spectrum']]
    assert energies == sorted(energies)
    weight = summary['weights'][0]['value']
    assert 0.0 < weight <= 1.0
    header, rows = read_tsv(os.path.join(output_dir, 'timeseries.tsv'))
    assert rows == []


def test_strongcoupling(runner, write_config, output_dir):
    """Test the strong-coupling mode tables."""
    path = write_config('mode = strongcoupling\nstrong_max_index = 20\n'
                        'alpha = 2\n')
    result = runner.invoke(cli, ['strongcoupling', '-c', path])
    assert result.exit_code == 0, result.output
    assert 'zero-point sum' in result.output
    _, hessian = read_tsv(os.path.join(output_dir, 'hessian.tsv'))
    assert len(hessian) == 21
    assert hessian[2][1] == 'even'
    _, zero_point = read_tsv(os.path.join(output_dir, 'zero_point.tsv'))
    assert [row[0] for row in zero_point] == ['10', '20']
    _, crossover = read_tsv(os.path.join(output_dir, 'crossover.tsv'))
    assert len(crossover) == 20
    tables = _summary(output_dir)['tables']
    assert tables['energy_weak'] == pytest.approx(-2.31016)
    assert tables['pekar_norm'] == pytest.approx(1.0)
    assert all(x['bound'] for x in tables['excitations'])


def test_scan_oracle_engine(runner, write_config, output_dir):
    """Test a coupling scan on exact spectra."""
    path = write_config('mode = scan\nengine = oracle\nnum_eigenpairs = 6\n'
                        'alphas = 0.5, 1.0, 2.0\n' + SMALL)
    result = runner.invoke(cli, ['scan', '-c', path])
    # a grid without a sign change still writes its tables
    assert result.exit_code in (0, EXIT_RUN_ERROR), result.output
    _, rows = read_tsv(os.path.join(output_dir, 'scan.tsv'))
    assert [row[0] for row in rows] == ['0.5', '1.0', '2.0']
    assert all(row[7] == 'ok' for row in rows)
    summary = _summary(output_dir)
    assert summary['metadata']['failed_points'] == 0
    assert summary['metadata']['engine'] == 'oracle'


def test_signproblem(runner, write_config, output_dir):
    """Test the walker number scan."""
    path = write_config('mode = signproblem\nnum_eigenstates = 2\n'
                        'target_walker_grid = 20, 40\n' + WALKERS)
    result = runner.invoke(cli, ['signproblem', '-c', path])
    assert result.exit_code == 0, result.output
    assert 'N_c' in result.output
    _, rows = read_tsv(os.path.join(output_dir, 'signproblem.tsv'))
    assert [row[0] for row in rows] == ['20.0', '40.0']
    tables = _summary(output_dir)['tables']
    assert tables['critical_walkers'] in (20.0, 40.0)


def test_convergence_oracle_engine(runner, write_config, output_dir):
    """Test the cutoff and box length grids."""
    path = write_config('mode = convergence\nengine = oracle\n'
                        'cutoffs_over_pi = 1, 2, 3, 4\n'
                        'box_lengths = 2, 4, 6, 8\n' + SMALL.replace(
                            'num_modes = 3\n', 'kc_over_pi = 1\n'))
    result = runner.invoke(cli, ['convergence', '-c', path])
    assert result.exit_code == 0, result.output
    _, rows = read_tsv(os.path.join(output_dir, 'convergence.tsv'))
    assert [row[0] for row in rows] == ['cutoff'] * 4 + ['box_length'] * 4
    assert all(row[4] == 'ok' for row in rows)
    tables = _summary(output_dir)['tables']
    assert tables['cutoff_points'] == 4
    assert tables['box_points'] == 4


@pytest.mark.parametrize(('text', 'command'), [
    ('mode = gs\nalpha = -1\n', 'gs'),
    ('mode = oracle\n' + SMALL, 'gs'),
    ('mode = gs\nnum_modes 3\n', 'gs'),
    ('mode = excited\n' + SMALL, 'excited'),
])
def test_config_errors(runner, write_config, text, command):
    """Test the exit code of unusable configurations."""
    path = write_config(text)
    result = runner.invoke(cli, [command, '-c', path])
    assert result.exit_code == EXIT_CONFIG_ERROR
    assert 'Error' in result.output


def test_missing_config(runner, tmp_path):
    """Test a configuration file that does not exist."""
    result = runner.invoke(cli, ['gs', '-c', str(tmp_path / 'none.cfg')])
    assert result.exit_code == EXIT_CONFIG_ERROR


def test_run_error(app, runner, write_config):
    """Test the exit code of a failing run."""
    app.config['POLARON_ORACLE_MAX_BASIS_SIZE'] = 5
    path = write_config('mode = oracle\n' + SMALL)
    result = runner.invoke(cli, ['oracle', '-c', path])
    assert result.exit_code == EXIT_RUN_ERROR
    assert 'BasisTooLargeError' in result.output


def test_output_dir_is_a_file(runner, write_config, tmp_path):
    """Test that an unusable output directory is a run failure."""
    blocker = tmp_path / 'taken'
    blocker.write_text('not a directory')
    path = write_config('mode = oracle\n' + SMALL, output=str(blocker))
    result = runner.invoke(cli, ['oracle', '-c', path])
    assert result.exit_code == EXIT_RUN_ERROR
    assert 'Error' in result.output
    assert blocker.read_text() == 'not a directory'
