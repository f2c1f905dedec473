# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Application factory."""

from celery import Celery
from flask import Flask

from . import config
from .ext import PolaronFCIQMC


def create_celery(app: Flask) -> Celery:
    """Celery application whose tasks run inside ``app``'s context."""
    celery = Celery(app.import_name,
                    broker=app.config['CELERY_BROKER_URL'],
                    backend=app.config['CELERY_RESULT_BACKEND'])

    class ContextTask(celery.Task):
        def __call__(self, *args, **kwargs):
            """Run the task inside the application context."""
            with app.app_context():
                return self.run(*args, **kwargs)

    celery.Task = ContextTask
    celery.set_default()
    app.extensions['celery'] = celery
    return celery


def create_app(**config_overrides) -> Flask:
    """Create the application.

    Configuration is read from :mod:`polaron_fciqmc.config`, then from the
    Python file named by ``POLARON_FCIQMC_CONFIG`` and finally from the
    keyword arguments.
    """
    app = Flask('polaron_fciqmc')
    app.config.from_object(config)
    app.config.from_envvar('POLARON_FCIQMC_CONFIG', silent=True)
    app.config.update(config_overrides)
    PolaronFCIQMC(app)
    create_celery(app)
    return app
