# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.
"""Test the application factory and the extension."""

from polaron_fciqmc.ext import PolaronFCIQMC
from polaron_fciqmc.factory import create_app
from polaron_fciqmc.proxies import current_logger, current_polaron
from polaron_fciqmc.version import __version__


def test_version():
    """Test version import."""
    assert __version__


def test_create_app(app, output_dir):
    """Test the configuration defaults and overrides."""
    assert app.config['POLARON_OUTPUT_DIR'] == output_dir
    assert app.config['POLARON_BLOCKING_MIN_LENGTH'] == 32
    assert app.config['POLARON_QMC_SEED'] == 1234
    assert 'celery' in app.extensions
    assert isinstance(current_polaron._get_current_object(), PolaronFCIQMC)
    assert current_logger.name == app.logger.name


def test_overrides_keep_explicit_values():
    """Test that the extension does not clobber explicit settings."""
    app = create_app(POLARON_PARITY_THRESHOLD=0.75)
    assert app.config['POLARON_PARITY_THRESHOLD'] == 0.75
    assert app.config['POLARON_SCAN_EAGER'] is True


def test_logger_outside_app():
    """Test the package logger outside an application context."""
    assert current_logger.name == 'polaron_fciqmc'


def test_worker_application():
    """Test that the worker application knows the grid point task."""
    from polaron_fciqmc.celery import celery
    assert 'polaron_fciqmc.tasks.run_point' in celery.tasks
