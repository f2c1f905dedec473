# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Errors and exceptions."""

from ..errors import PolaronError


class DigammaDomainError(PolaronError, ValueError):
    """The digamma function is only evaluated for positive arguments."""

    def __init__(self, x: float):
        """Initialize the exception."""
        self.x = x
        super(DigammaDomainError, self).__init__(
            f'digamma argument must be > 0, got {x!r}')


class BracketFailureError(PolaronError):
    """No sign change of the odd-mode equation inside its interval."""

    def __init__(self, index: int, lower: float, upper: float):
        """Initialize the exception."""
        self.index = index
        self.lower = lower
        self.upper = upper
        super(BracketFailureError, self).__init__(
            f'odd mode {index}: no sign change in ({lower}, {upper})')
