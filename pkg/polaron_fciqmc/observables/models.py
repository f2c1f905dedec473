# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Observable models."""

from enum import Enum
from typing import List, NamedTuple

import numpy as np


class Parity(Enum):
    """Behaviour of a vector under :math:`j \\to -j`."""

    EVEN = 'even'
    ODD = 'odd'
    MIXED = 'mixed'


class Estimate(NamedTuple):
    """Value with its error bar."""

    value: float
    error: float


class BlockingLevel(NamedTuple):
    """Error estimate after ``level`` pair-averaging transformations."""

    level: int
    blocks: int
    error: float
    error_of_error: float


class BlockingResult(NamedTuple):
    """Mean and blocked error of a time series."""

    mean: float
    error: float
    plateau: bool
    length: int
    levels: List[BlockingLevel]


class SpectrumPoint(NamedTuple):
    """Energy of eigenstate ``index`` and its excitation energy.

    ``edge_overlap`` is the normalized squared overlap with
    :math:`(a_0^\\dagger - g)|GS\\rangle`, the state sitting exactly at the
    continuum edge.
    """

    index: int
    energy: float
    energy_error: float
    excitation: float
    excitation_error: float
    parity: Parity
    edge_overlap: float = 0.0

    @property
    def bound(self) -> bool:
        """Excitation below the one-phonon continuum edge."""
        return self.excitation < 1.0


class SpectralWeight(NamedTuple):
    """Quasiparticle weight :math:`Z_j = |\\langle vac|j\\rangle|^2`."""

    index: int
    value: float
    error: float
    total_momentum: float
    biased: bool = False


class DensityProfile(NamedTuple):
    """Phonon density :math:`\\langle n_\\kappa \\rangle` per mode."""

    index: int
    momenta: np.ndarray
    values: np.ndarray
    errors: np.ndarray
    biased: bool = False

    def symmetric(self, sigmas: float = 3.0) -> bool:
        """Whether :math:`n_\\kappa = n_{-\\kappa}` within error bars."""
        combined = np.hypot(self.errors, self.errors[::-1])
        return bool(np.all(np.abs(self.values - self.values[::-1])
                           <= sigmas * combined + 1e-12))
