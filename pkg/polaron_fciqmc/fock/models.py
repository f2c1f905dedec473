# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Model parameters and Fock states."""

import math
from functools import total_ordering
from typing import Iterable, NamedTuple, Union

import numpy as np

from .errors import FockStateError, InvalidModelError, OccupancyOverflowError

MAX_OCCUPATION = 255


class ModelParams:
    """Dimensionless definition of the discretized LLP Hamiltonian.

    :param alpha: Coupling constant :math:`\\alpha \\geq 0`.
    :param box_length: Box length :math:`L/l_0 > 0`.
    :param num_modes: Odd number of modes :math:`M`.
    :param total_momentum: Total momentum :math:`P l_0/\\hbar`.
    """

    __slots__ = ('alpha', 'box_length', 'num_modes', 'total_momentum')

    def __init__(self, alpha: float, box_length: float, num_modes: int,
                 total_momentum: float = 0.0):
        """Validate and store the parameters."""
        if not (math.isfinite(alpha) and alpha >= 0):
            raise InvalidModelError('alpha', alpha, 'must be >= 0')
        if not (math.isfinite(box_length) and box_length > 0):
            raise InvalidModelError('box_length', box_length, 'must be > 0')
        if int(num_modes) != num_modes or num_modes < 1:
            raise InvalidModelError(
                'num_modes', num_modes, 'must be a positive integer')
        if num_modes % 2 == 0:
            raise InvalidModelError(
                'num_modes', num_modes, 'must be odd (symmetric grid)')
        if not math.isfinite(total_momentum):
            raise InvalidModelError(
                'total_momentum', total_momentum, 'must be finite')
        self.alpha = float(alpha)
        self.box_length = float(box_length)
        self.num_modes = int(num_modes)
        self.total_momentum = float(total_momentum)

    @classmethod
    def from_cutoff(cls, alpha: float, box_length: float,
                    momentum_cutoff: float, total_momentum: float = 0.0):
        """Build the model from :math:`M = k_c L/\\pi + 1`."""
        modes = momentum_cutoff * box_length / math.pi + 1
        if abs(modes - round(modes)) > 1e-9:
            raise InvalidModelError(
                'momentum_cutoff', momentum_cutoff,
                f'k_c*L/pi + 1 = {modes} is not an integer')
        return cls(alpha, box_length, int(round(modes)), total_momentum)

    @property
    def momentum_cutoff(self) -> float:
        """Cutoff :math:`k_c = \\pi(M-1)/L`."""
        return math.pi * (self.num_modes - 1) / self.box_length

    @property
    def coupling(self) -> float:
        """Coupling amplitude :math:`g = \\sqrt{2\\alpha/L}`."""
        return math.sqrt(2.0 * self.alpha / self.box_length)

    @property
    def max_mode_index(self) -> int:
        """Largest mode index :math:`(M-1)/2`."""
        return (self.num_modes - 1) // 2

    @property
    def zero_mode(self) -> int:
        """Array position of the :math:`k=0` mode."""
        return self.max_mode_index

    def replace(self, **changes) -> 'ModelParams':
        """Copy with some fields replaced."""
        values = self.to_dict()
        values.update(changes)
        return ModelParams(**values)

    def to_dict(self) -> dict:
        """Plain dictionary of the fields."""
        return {k: getattr(self, k) for k in self.__slots__}

    def __eq__(self, other):
        """Field-wise equality."""
        if not isinstance(other, ModelParams):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __hash__(self):
        """Hash of the fields."""
        return hash(tuple(self.to_dict().values()))

    def __repr__(self):
        """String representation of the model."""
        return (f'<ModelParams alpha={self.alpha} L={self.box_length} '
                f'M={self.num_modes} P={self.total_momentum}>')


@total_ordering
class FockState:
    """Occupations of the :math:`M` phonon modes, one byte per mode.

    Position ``i`` of :attr:`occupations` holds mode
    :math:`j = i - (M-1)/2`. States order lexicographically by their
    occupations in mode order.
    """

    __slots__ = ('occupations', )

    def __init__(self, occupations: Union[bytes, Iterable[int]]):
        """Pack the occupations."""
        if isinstance(occupations, (bytes, bytearray)):
            packed = bytes(occupations)
        else:
            values = [int(n) for n in occupations]
            for mode, n in enumerate(values):
                if n < 0:
                    raise FockStateError(
                        f'negative occupation {n} in mode {mode}')
                if n > MAX_OCCUPATION:
                    raise OccupancyOverflowError(mode, n)
            packed = bytes(values)
        if not packed:
            raise FockStateError('a Fock state needs at least one mode')
        self.occupations = packed

    @classmethod
    def vacuum(cls, num_modes: int) -> 'FockState':
        """State without phonons."""
        return cls(bytes(num_modes))

    @classmethod
    def excited(cls, num_modes: int, occupied: dict) -> 'FockState':
        """State with ``occupied[j]`` phonons in mode index ``j``."""
        offset = (num_modes - 1) // 2
        values = [0] * num_modes
        for j, n in occupied.items():
            if abs(j) > offset:
                raise FockStateError(f'mode index {j} outside the grid')
            values[j + offset] = n
        return cls(values)

    @classmethod
    def parse(cls, text: str) -> 'FockState':
        """Parse the comma-separated text form, e.g. ``"0,0,1,0,0"``."""
        try:
            return cls(int(v) for v in text.strip().split(','))
        except ValueError as exc:
            raise FockStateError(f'cannot parse Fock state {text!r}: {exc}')

    @property
    def num_modes(self) -> int:
        """Number of modes."""
        return len(self.occupations)

    @property
    def total_phonons(self) -> int:
        """Total phonon number :math:`a = \\sum_j n_j`."""
        return sum(self.occupations)

    def occupation(self, j: int) -> int:
        """Occupation of mode index ``j``."""
        return self.occupations[j + (self.num_modes - 1) // 2]

    def as_array(self) -> np.ndarray:
        """Occupations as a ``uint8`` array."""
        return np.frombuffer(self.occupations, dtype=np.uint8).copy()

    def __eq__(self, other):
        """Equality of the full occupation arrays."""
        if not isinstance(other, FockState):
            return NotImplemented
        return self.occupations == other.occupations

    def __lt__(self, other):
        """Lexicographic order in mode order."""
        if not isinstance(other, FockState):
            return NotImplemented
        return self.occupations < other.occupations

    def __hash__(self):
        """Hash of the occupations."""
        return hash(self.occupations)

    def __str__(self):
        """Comma-separated occupations."""
        return ','.join(str(n) for n in self.occupations)

    def __repr__(self):
        """String representation of the state."""
        return f'<FockState {self}>'


class OffDiagonal(NamedTuple):
    """Off-diagonal matrix element :math:`\\langle target|H|state\\rangle`."""

    target: FockState
    amplitude: float
