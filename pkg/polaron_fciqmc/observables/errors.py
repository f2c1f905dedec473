# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Errors and exceptions."""

from ..errors import PolaronError


class SeriesTooShortError(PolaronError):
    """The time series is too short for a blocking analysis."""

    def __init__(self, length: int, minimum: int):
        """Initialize the exception."""
        self.length = length
        self.minimum = minimum
        super(SeriesTooShortError, self).__init__(
            f'series of length {length} is shorter than {minimum}')


class DegenerateOverlapError(PolaronError):
    """The replica overlap is consistent with zero."""

    def __init__(self, overlap: float, error: float):
        """Initialize the exception."""
        self.overlap = overlap
        self.error = error
        super(DegenerateOverlapError, self).__init__(
            f'replica overlap {overlap:.6g} +/- {error:.3g} is consistent '
            f'with zero')


class FitError(PolaronError):
    """A convergence fit failed."""


class NoCrossingError(PolaronError):
    """The scanned values never change sign."""
