# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Celery application for the grid point workers.

Start a worker with ``celery -A polaron_fciqmc.celery worker``.
"""

from .factory import create_app

app = create_app()
celery = app.extensions['celery']

from . import tasks  # noqa: E402,F401 isort:skip
