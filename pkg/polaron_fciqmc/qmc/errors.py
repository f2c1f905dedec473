# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Errors and exceptions."""

from ..errors import PolaronError


class TimeStepTooLargeError(PolaronError):
    """A death factor :math:`1 - d\\tau(H_{ii} - S)` became negative."""

    def __init__(self, time_step: float, energy: float, shift: float):
        """Initialize the exception."""
        self.time_step = time_step
        self.energy = energy
        self.shift = shift
        super(TimeStepTooLargeError, self).__init__(
            f'dtau={time_step} too large for H_ii={energy:.6g} at '
            f'shift {shift:.6g}; need dtau < {1.0 / (energy - shift):.3g}')


class DegenerateReplicaError(PolaronError):
    """Gram-Schmidt met a replica with zero norm."""

    def __init__(self, index: int):
        """Initialize the exception."""
        self.index = index
        super(DegenerateReplicaError, self).__init__(
            f'replica {index} has zero norm')


class InvalidWalkerCountError(PolaronError, ValueError):
    """Walker numbers passed to the shift update must be positive."""


class CheckpointVersionError(PolaronError):
    """The checkpoint was written by an incompatible format version."""


class CorruptCheckpointError(PolaronError):
    """The checkpoint stream is truncated or fails its checksum."""


class InvalidQmcParamsError(PolaronError, ValueError):
    """FCIQMC parameters outside their domain."""

    def __init__(self, field: str, value, reason: str):
        """Initialize the exception."""
        self.field = field
        self.value = value
        super(InvalidQmcParamsError, self).__init__(
            f'{field}={value!r}: {reason}')
