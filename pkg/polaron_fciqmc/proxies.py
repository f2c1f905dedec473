# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Polaron FCIQMC proxies."""

import logging

from flask import current_app, has_app_context
from werkzeug.local import LocalProxy

current_polaron = LocalProxy(
    lambda: current_app.extensions['polaron-fciqmc'])
"""The :class:`~polaron_fciqmc.ext.PolaronFCIQMC` extension."""

current_logger = LocalProxy(
    lambda: current_app.logger if has_app_context()
    else logging.getLogger('polaron_fciqmc'))
"""Application logger, or the package logger outside an application."""
