# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Errors and exceptions."""

from ..errors import PolaronError


class BasisTooLargeError(PolaronError):
    """The truncated basis exceeds the configured size bound."""

    def __init__(self, size: int, limit: int):
        """Initialize the exception."""
        self.size = size
        self.limit = limit
        super(BasisTooLargeError, self).__init__(
            f'basis of {size} states exceeds the limit of {limit}')


class NoConvergenceError(PolaronError):
    """The eigensolver did not reach the requested residual."""
