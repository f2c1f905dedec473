# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Errors and exceptions."""

from ..errors import PolaronError


class InvalidModelError(PolaronError, ValueError):
    """Model parameters outside their domain."""

    def __init__(self, field: str, value, reason: str):
        """Initialize the exception."""
        self.field = field
        self.value = value
        super(InvalidModelError, self).__init__(
            f'{field}={value!r}: {reason}')


class OccupancyOverflowError(PolaronError):
    """A phonon creation would push a mode occupation above 255."""

    def __init__(self, mode: int, occupation: int = 255):
        """Initialize the exception."""
        self.mode = mode
        self.occupation = occupation
        super(OccupancyOverflowError, self).__init__(
            f'mode {mode} already holds {occupation} phonons')


class FockStateError(PolaronError, ValueError):
    """Malformed Fock state."""
