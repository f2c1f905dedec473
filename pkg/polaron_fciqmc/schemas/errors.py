# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Errors and exceptions."""

from ..errors import PolaronError


class ConfigParseError(PolaronError):
    """A run configuration line is not of the form ``key = value``."""

    def __init__(self, line: int, message: str):
        """Initialize the exception."""
        self.line = line
        super(ConfigParseError, self).__init__(f'line {line}: {message}')


class ConfigValidationError(PolaronError):
    """A run configuration failed validation."""

    def __init__(self, messages: dict):
        """Initialize the exception."""
        self.messages = messages
        details = '; '.join(
            f'{field}: {" ".join(map(str, errors))}'
            if isinstance(errors, list) else f'{field}: {errors}'
            for field, errors in sorted(messages.items()))
        super(ConfigValidationError, self).__init__(
            f'invalid configuration ({details})')

    @property
    def fields(self):
        """Names of the offending fields."""
        return sorted(self.messages)
