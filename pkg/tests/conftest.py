# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.
"""Pytest configuration and fixtures."""

import pytest

from polaron_fciqmc.factory import create_app
from polaron_fciqmc.fock.models import ModelParams
from polaron_fciqmc.oracle.models import Truncation


@pytest.fixture
def output_dir(tmp_path):
    """Fresh output directory of a run."""
    return str(tmp_path / 'output')


@pytest.fixture
def app(output_dir):
    """Application with an eager task queue, inside its context."""
    app = create_app(TESTING=True, POLARON_OUTPUT_DIR=output_dir,
                     POLARON_SCAN_EAGER=True)
    with app.app_context():
        yield app


@pytest.fixture
def runner(app):
    """Command line runner bound to ``app``."""
    return app.test_cli_runner()


@pytest.fixture
def small_model():
    """Three modes with :math:`\\kappa = \\pm\\pi`."""
    return ModelParams(alpha=0.5, box_length=2.0, num_modes=3)


@pytest.fixture
def small_truncation():
    """At most two phonons in total."""
    return Truncation(max_total_phonons=2, max_per_mode=2)


@pytest.fixture
def write_config(tmp_path, output_dir):
    """Write a run configuration file; returns its path."""
    def write(text, name='run.cfg', output=None):
        path = tmp_path / name
        path.write_text(f'output_dir = {output or output_dir}\n' + text,
                        encoding='utf-8')
        return str(path)
    return write
