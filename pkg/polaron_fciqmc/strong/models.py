# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Strong-coupling models."""

import math
from typing import NamedTuple

import numpy as np
from scipy.integrate import quad

from ..fock.errors import InvalidModelError


class HessianMode(NamedTuple):
    """Fluctuation mode ``index`` around the Pekar minimizer.

    Even modes have the integer order :math:`n = j + 2`, odd modes a real
    order from the digamma equation. The frequency follows from
    :math:`\\omega^2 = 1 - 4/((n+2)(n-1))`.
    """

    index: int
    parity: str
    order: float
    frequency: float


class PekarSolution:
    """Closed-form minimizer of the Pekar functional at coupling ``alpha``.

    :math:`\\psi(x) = \\sqrt{\\alpha/2}\\,\\mathrm{sech}(\\alpha x)` and
    :math:`\\varphi(x) = \\sqrt{2\\alpha}\\,\\psi(x)^2`.
    """

    def __init__(self, alpha: float):
        """Store the coupling."""
        if not (math.isfinite(alpha) and alpha > 0):
            raise InvalidModelError('alpha', alpha, 'must be > 0')
        self.alpha = float(alpha)

    def electron(self, x):
        """Electron profile :math:`\\psi(x)`."""
        x = np.asarray(x)
        return math.sqrt(self.alpha / 2.0) / np.cosh(self.alpha * x)

    def field(self, x):
        """Classical field profile :math:`\\varphi(x)`."""
        return math.sqrt(2.0 * self.alpha) * self.electron(x) ** 2

    @property
    def classical_energy(self) -> float:
        """Pekar energy :math:`-\\alpha^2/3`."""
        return -self.alpha ** 2 / 3.0

    def norm(self) -> float:
        """:math:`\\int |\\psi|^2 dx` by quadrature."""
        # sech^2 falls below 1e-34 beyond |alpha x| = 40
        bound = 40.0 / self.alpha
        value, _ = quad(lambda x: float(self.electron(x)) ** 2,
                        -bound, bound)
        return value

    def __repr__(self):
        """String representation of the solution."""
        return f'<PekarSolution alpha={self.alpha}>'
