# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Hessian spectrum around the Pekar minimizer and energy expansions.

The fluctuation operator around :math:`\\psi^P` separates into Legendre
problems. Even modes have integer order :math:`n_j = j + 2`; odd mode
:math:`j` has the real order solving

.. math::

    \\psi_\\Gamma(n + 1) + \\gamma = \\frac{\\pi}{2} \\tan\\frac{n\\pi}{2}

in :math:`(j + 1, j + 2)`. Both branches share
:math:`\\omega_j^2 = 1 - 4/((n_j + 2)(n_j - 1))`.
"""

import math
from functools import lru_cache
from typing import List, NamedTuple, Sequence

from scipy.optimize import brentq

from ..fock.errors import InvalidModelError
from .errors import BracketFailureError
from .models import HessianMode
from .special import EULER_GAMMA, digamma

BRACKET_EPSILON = 1e-6
"""Distance kept from the ends of the odd-mode interval."""

ROOT_TOLERANCE = 1e-12

WEAK_COEFFICIENTS = (-1.0, -0.06066, -0.00844)
"""Coefficients of :math:`\\alpha, \\alpha^2, \\alpha^3` in the weak-coupling
energy."""


def odd_mode_equation(n: float) -> float:
    """Left minus right side of the odd-mode equation."""
    return digamma(n + 1.0) + EULER_GAMMA - \
        0.5 * math.pi * math.tan(0.5 * math.pi * n)


@lru_cache(maxsize=None)
def odd_mode_root(j: int) -> float:
    """Order :math:`n_j` of odd mode ``j``, the root in ``(j+1, j+2)``."""
    if j < 1 or j % 2 == 0:
        raise InvalidModelError('j', j, 'must be an odd index >= 1')
    lower = j + 1 + BRACKET_EPSILON
    upper = j + 2 - BRACKET_EPSILON
    f_lower, f_upper = odd_mode_equation(lower), odd_mode_equation(upper)
    if f_lower * f_upper >= 0:
        raise BracketFailureError(j, lower, upper)
    return brentq(odd_mode_equation, lower, upper, xtol=ROOT_TOLERANCE,
                  maxiter=200)


def frequency_from_order(n: float) -> float:
    """:math:`\\sqrt{1 - 4/((n+2)(n-1))}`."""
    return math.sqrt(max(0.0, 1.0 - 4.0 / ((n + 2.0) * (n - 1.0))))


def hessian_frequency(j: int) -> HessianMode:
    """Mode ``j`` of the Hessian spectrum."""
    if j < 0:
        raise InvalidModelError('j', j, 'must be >= 0')
    if j % 2 == 0:
        order = float(j + 2)
        frequency = math.sqrt(1.0 - 4.0 / ((j + 4) * (j + 1)))
        return HessianMode(j, 'even', order, frequency)
    order = odd_mode_root(j)
    return HessianMode(j, 'odd', order, frequency_from_order(order))


def hessian_spectrum(max_index: int) -> List[HessianMode]:
    """Modes ``0..max_index``."""
    return [hessian_frequency(j) for j in range(max_index + 1)]


def zero_point_tail(max_index: int) -> float:
    """Integral estimate of :math:`\\frac12\\sum_{j > J}(\\omega_j - 1)`.

    Uses :math:`\\omega_j - 1 \\approx -2/n_j^2` with
    :math:`n_j \\approx j + 2`.
    """
    return -1.0 / (max_index + 2.5)


def zero_point_sum(max_index: int, tail: bool = True) -> float:
    """:math:`\\frac12 \\sum_{j=0}^{J} (\\omega_j - 1)`, plus the tail."""
    if max_index < 0:
        raise InvalidModelError('max_index', max_index, 'must be >= 0')
    total = 0.5 * math.fsum(mode.frequency - 1.0
                            for mode in hessian_spectrum(max_index))
    if tail:
        total += zero_point_tail(max_index)
    return total


def energy_strong(alpha: float, j: int = 0, max_index: int = 200) -> float:
    """Strong-coupling energy of state ``j`` at :math:`P = 0`.

    :math:`E_0 = -\\alpha^2/3 + \\frac12\\sum_j(\\omega_j - 1)` and
    :math:`E_j = E_0 + \\omega_j` for :math:`j \\geq 1`; the zero mode
    carries no excitation.
    """
    if not alpha > 0:
        raise InvalidModelError('alpha', alpha, 'must be > 0')
    energy = -alpha ** 2 / 3.0 + zero_point_sum(max_index)
    if j > 0:
        energy += hessian_frequency(j).frequency
    return energy


def energy_weak(alpha: float) -> float:
    """Third-order weak-coupling energy."""
    if not alpha >= 0:
        raise InvalidModelError('alpha', alpha, 'must be >= 0')
    c1, c2, c3 = WEAK_COEFFICIENTS
    return alpha * (c1 + alpha * (c2 + alpha * c3))


class StrongExcitation(NamedTuple):
    """Excitation energy :math:`\\omega_j` of a strong-coupling state."""

    index: int
    energy: float
    bound: bool


def excitation_energies_strong(count: int) -> List[StrongExcitation]:
    """Excitations :math:`\\omega_1 \\dots \\omega_{count}`.

    ``bound`` marks those below the continuum edge at one phonon.
    """
    return [StrongExcitation(m.index, m.frequency, m.frequency < 1.0)
            for m in hessian_spectrum(count)[1:]]


class CrossoverRow(NamedTuple):
    """Weak- and strong-coupling ground energies at one coupling."""

    alpha: float
    weak: float
    strong: float


def crossover_table(alphas: Sequence[float],
                    max_index: int = 200) -> List[CrossoverRow]:
    """Both ground energy expansions over ``alphas``."""
    zps = zero_point_sum(max_index)
    return [CrossoverRow(a, energy_weak(a), -a ** 2 / 3.0 + zps)
            for a in alphas]
