# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Polaron FCIQMC command line.

One subcommand per run mode::

    polaron-fciqmc gs --config run.cfg [--seed N] [--threads N]
                      [--deterministic/--no-deterministic]

Exit code ``1`` means the configuration could not be read or validated,
``2`` any other failure of the run, including I/O errors.
"""

from functools import wraps

import click
from flask.cli import FlaskGroup, with_appcontext

from .errors import PolaronError
from .factory import create_app
from .runs import MODE_RUNNERS, load_run
from .schemas.errors import ConfigParseError, ConfigValidationError

EXIT_CONFIG_ERROR = 1
EXIT_RUN_ERROR = 2


def exit_codes(f):
    """Map package errors to the exit codes of the command line."""
    @wraps(f)
    def inner(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except (ConfigParseError, ConfigValidationError) as exc:
            click.echo(f'Error: {exc}', err=True)
            raise click.exceptions.Exit(EXIT_CONFIG_ERROR)
        except PolaronError as exc:
            click.echo(f'Error: {type(exc).__name__}: {exc}', err=True)
            raise click.exceptions.Exit(EXIT_RUN_ERROR)
        except (click.ClickException, click.exceptions.Exit, click.Abort):
            raise
        except Exception as exc:
            # output directory, summary validation and checkpoint I/O
            click.echo(f'Error: {type(exc).__name__}: {exc}', err=True)
            raise click.exceptions.Exit(EXIT_RUN_ERROR)
    return inner


def run_options(f):
    """Options shared by every mode."""
    f = click.option('--deterministic/--no-deterministic', default=None,
                     help='Thread-count independent random numbers.')(f)
    f = click.option('--threads', type=int, default=None,
                     help='Worker threads of the spawning phase.')(f)
    f = click.option('--seed', type=int, default=None,
                     help='Random seed (overrides the configuration).')(f)
    f = click.option('-c', '--config', 'config_path', required=True,
                     type=click.Path(dir_okay=False),
                     help='Run configuration file.')(f)
    return f


@click.group(cls=FlaskGroup, create_app=lambda *args: create_app(),
             add_default_commands=False)
def cli():
    """Polaron FCIQMC: Froehlich polaron spectra in one dimension."""


def _load(mode, config_path, seed, threads, deterministic):
    config = load_run(config_path, mode, seed=seed, threads=threads,
                      deterministic=deterministic)
    click.echo(f'Writing {mode} results to {config.output_dir}', err=True)
    return config


def _propagate(config):
    """Run an FCIQMC mode behind a progress bar over the steps."""
    total = config['equilibration_steps'] + config['measurement_steps']
    with click.progressbar(length=total, label='Propagating',
                           file=click.get_text_stream('stderr')) as bar:
        def advance(state):
            bar.update(state.step - bar.pos)
        return MODE_RUNNERS[config.mode](config, callback=advance)


def _scan(config, points):
    """Run a grid mode behind a progress bar over the points."""
    with click.progressbar(length=points, label='Grid points',
                           file=click.get_text_stream('stderr')) as bar:
        return MODE_RUNNERS[config.mode](
            config, callback=lambda result: bar.update(1))


def _report(summary):
    for point in summary.get('spectrum', []):
        click.echo('{index}\t{energy}\t{energy_error}\t{excitation}\t'
                   '{parity}'.format(**point))


@cli.command('gs')
@run_options
@with_appcontext
@exit_codes
def gs_command(config_path, seed, threads, deterministic):
    """Ground state energy, spectral weight and phonon density."""
    config = _load('gs', config_path, seed, threads, deterministic)
    _report(_propagate(config))


@cli.command('excited')
@run_options
@with_appcontext
@exit_codes
def excited_command(config_path, seed, threads, deterministic):
    """Lowest eigenstates with orthogonalized replicas."""
    config = _load('excited', config_path, seed, threads, deterministic)
    _report(_propagate(config))


@cli.command('oracle')
@run_options
@with_appcontext
@exit_codes
def oracle_command(config_path, seed, threads, deterministic):
    """Exact eigenpairs on a truncated Fock space."""
    config = _load('oracle', config_path, seed, threads, deterministic)
    _report(MODE_RUNNERS['oracle'](config))


@cli.command('strongcoupling')
@run_options
@with_appcontext
@exit_codes
def strongcoupling_command(config_path, seed, threads, deterministic):
    """Hessian spectrum and strong-coupling energies."""
    config = _load('strongcoupling', config_path, seed, threads,
                   deterministic)
    summary = MODE_RUNNERS['strongcoupling'](config)
    click.echo(f'zero-point sum\t{summary["tables"]["zero_point_sum"]}')


@cli.command('scan')
@run_options
@with_appcontext
@exit_codes
def scan_command(config_path, seed, threads, deterministic):
    """Coupling where the first bound excited state appears."""
    config = _load('scan', config_path, seed, threads, deterministic)
    summary = _scan(config, len(config['alphas']))
    crossing = summary['crossing']
    click.echo(f'alpha*\t{crossing["position"]}\t{crossing["error"]}')


@cli.command('signproblem')
@run_options
@with_appcontext
@exit_codes
def signproblem_command(config_path, seed, threads, deterministic):
    """Mean shifts against the target walker number."""
    config = _load('signproblem', config_path, seed, threads, deterministic)
    summary = _scan(config, len(config['target_walker_grid']))
    click.echo(f'N_c\t{summary["tables"]["critical_walkers"]}')


@cli.command('convergence')
@run_options
@with_appcontext
@exit_codes
def convergence_command(config_path, seed, threads, deterministic):
    """Ground energy against the cutoff and the box length, with fits."""
    config = _load('convergence', config_path, seed, threads, deterministic)
    summary = _scan(config, len(config['cutoffs_over_pi'])
                    + len(config['box_lengths']))
    for name, fit in sorted(summary['fits'].items()):
        click.echo(f'{name}\t{fit["limit"]}\t'
                   + '\t'.join(map(str, fit['parameters'])))
