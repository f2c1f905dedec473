# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Oracle models."""

import numpy as np

from ..fock.errors import InvalidModelError
from ..fock.models import MAX_OCCUPATION


class Truncation:
    """Bounds on the total phonon number and on each mode occupation."""

    __slots__ = ('max_total_phonons', 'max_per_mode')

    def __init__(self, max_total_phonons: int,
                 max_per_mode: int = MAX_OCCUPATION):
        """Validate and store the bounds."""
        if int(max_total_phonons) != max_total_phonons \
                or max_total_phonons < 0:
            raise InvalidModelError('max_total_phonons', max_total_phonons,
                                    'must be a non-negative integer')
        if int(max_per_mode) != max_per_mode \
                or not 0 <= max_per_mode <= MAX_OCCUPATION:
            raise InvalidModelError('max_per_mode', max_per_mode,
                                    f'must lie in 0..{MAX_OCCUPATION}')
        self.max_total_phonons = int(max_total_phonons)
        self.max_per_mode = int(max_per_mode)

    def contains(self, states: np.ndarray) -> np.ndarray:
        """Mask of the rows of ``states`` inside the truncation."""
        states = np.asarray(states)
        return ((states.sum(axis=1, dtype=np.int64)
                 <= self.max_total_phonons)
                & (states.max(axis=1, initial=0) <= self.max_per_mode))

    def __eq__(self, other):
        """Field-wise equality."""
        if not isinstance(other, Truncation):
            return NotImplemented
        return (self.max_total_phonons, self.max_per_mode) == \
            (other.max_total_phonons, other.max_per_mode)

    def __hash__(self):
        """Hash of the bounds."""
        return hash((self.max_total_phonons, self.max_per_mode))

    def __repr__(self):
        """String representation of the truncation."""
        return (f'<Truncation N_max={self.max_total_phonons} '
                f'n_max={self.max_per_mode}>')
