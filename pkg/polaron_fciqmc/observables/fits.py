# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Convergence fits, threshold crossings and critical walker numbers."""

import math
from typing import NamedTuple, Optional, Sequence

import numpy as np
from scipy.optimize import curve_fit

from .errors import FitError, NoCrossingError


class FitResult(NamedTuple):
    """Least-squares fit of one convergence law."""

    law: str
    parameters: np.ndarray
    errors: np.ndarray
    residual: float

    @property
    def limit(self) -> float:
        """Extrapolated energy, the first parameter of every law."""
        return float(self.parameters[0])


class BoxFit(NamedTuple):
    """Exponential and algebraic fits of the box-length dependence."""

    exponential: FitResult
    algebraic: FitResult

    @property
    def preferred(self) -> str:
        """Law with the smaller residual."""
        if self.exponential.residual <= self.algebraic.residual:
            return self.exponential.law
        return self.algebraic.law


class Crossing(NamedTuple):
    """Zero of a linearly interpolated series."""

    position: float
    error: float
    lower: float
    upper: float


def cutoff_law(kc, limit, scale, exponent):
    """:math:`E_\\infty + (a k_c/\\pi)^b`."""
    return limit + (scale * np.asarray(kc) / math.pi) ** exponent


def box_exponential_law(length, limit, amplitude, rate):
    """:math:`E_\\infty - A e^{-BL}`."""
    return limit - amplitude * np.exp(-rate * np.asarray(length))


def box_algebraic_law(length, limit, amplitude, exponent):
    """:math:`E_\\infty + C L^{-D}`."""
    return limit + amplitude * np.asarray(length, dtype=float) ** -exponent


def _fit(law, name, x, y, errors, p0, bounds=(-np.inf, np.inf)):
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if len(x) <= len(p0):
        raise FitError(f'{name} fit needs more than {len(p0)} points, '
                       f'got {len(x)}')
    sigma = None if errors is None else np.asarray(errors, dtype=float)
    if sigma is not None and not np.all(sigma > 0):
        # exact points carry no weights
        sigma = None
    try:
        popt, pcov = curve_fit(law, x, y, p0=p0, sigma=sigma,
                               absolute_sigma=sigma is not None,
                               bounds=bounds, maxfev=20000)
    except (RuntimeError, ValueError) as exc:
        raise FitError(f'{name} fit failed: {exc}')
    residual = float(np.sum((law(x, *popt) - y) ** 2))
    return FitResult(name, popt, np.sqrt(np.diag(pcov)), residual)


def _cutoff_start(x, y):
    if len(x) < 2:
        return (y.min() - 0.05, 0.4, -1.0)
    order = np.argsort(x)
    (x1, x2), (y1, y2) = x[order][-2:], y[order][-2:]
    limit = (x2 * y2 - x1 * y1) / (x2 - x1)
    excess = y2 - limit
    if not (math.isfinite(limit) and excess > 0):
        return (y.min() - 0.05, 0.4, -1.0)
    return (limit, 1.0 / (x2 * excess), -1.0)


def fit_cutoff_convergence(kc: Sequence[float], energies: Sequence[float],
                           errors: Optional[Sequence[float]] = None
                           ) -> FitResult:
    """Fit :func:`cutoff_law` to energies at momentum cutoffs ``kc``.

    The fit starts from a :math:`1/k_c` extrapolation through the two
    largest cutoffs.
    """
    energies = np.asarray(energies, dtype=np.float64)
    p0 = _cutoff_start(np.asarray(kc, dtype=np.float64) / math.pi,
                       energies)
    return _fit(cutoff_law, 'algebraic', kc, energies, errors, p0,
                bounds=([-np.inf, 1e-6, -10.0], [np.inf, np.inf, 0.0]))


def fit_box_convergence(lengths: Sequence[float], energies: Sequence[float],
                        errors: Optional[Sequence[float]] = None) -> BoxFit:
    """Fit both box-length laws; see :attr:`BoxFit.preferred`."""
    energies = np.asarray(energies, dtype=np.float64)
    lengths = np.asarray(lengths, dtype=np.float64)
    limit = energies[np.argmax(lengths)]
    exponential = _fit(
        box_exponential_law, 'exponential', lengths, energies, errors,
        (limit, 1.0, 1.0),
        bounds=([-np.inf, -np.inf, 1e-6], [np.inf, np.inf, np.inf]))
    algebraic = _fit(
        box_algebraic_law, 'algebraic', lengths, energies, errors,
        (limit, 1.0, 1.0),
        bounds=([-np.inf, -np.inf, 1e-6], [np.inf, np.inf, np.inf]))
    return BoxFit(exponential, algebraic)


def interpolate_crossing(positions: Sequence[float], values: Sequence[float],
                         errors: Optional[Sequence[float]] = None
                         ) -> Crossing:
    """First sign change of ``values``, located by linear interpolation.

    The error propagates the errors of the two bracketing values.
    """
    x = np.asarray(positions, dtype=np.float64)
    y = np.asarray(values, dtype=np.float64)
    e = np.zeros_like(y) if errors is None else \
        np.asarray(errors, dtype=np.float64)
    order = np.argsort(x)
    x, y, e = x[order], y[order], e[order]
    for i in range(len(x) - 1):
        if y[i] == 0.0:
            return Crossing(float(x[i]), 0.0, float(x[i]), float(x[i]))
        if y[i] * y[i + 1] < 0:
            width = x[i + 1] - x[i]
            gap = y[i] - y[i + 1]
            position = x[i] + width * y[i] / gap
            d_lower = -width * y[i + 1] / gap ** 2
            d_upper = width * y[i] / gap ** 2
            error = math.hypot(d_lower * e[i], d_upper * e[i + 1])
            return Crossing(float(position), float(error), float(x[i]),
                            float(x[i + 1]))
    if len(y) and y[-1] == 0.0:
        return Crossing(float(x[-1]), 0.0, float(x[-1]), float(x[-1]))
    raise NoCrossingError(f'no sign change in {list(y)}')


def critical_walker_number(targets: Sequence[float], means: Sequence[float],
                           errors: Sequence[float],
                           sigmas: float = 3.0) -> float:
    """Smallest walker number whose mean agrees with the largest one."""
    targets = np.asarray(targets, dtype=np.float64)
    means = np.asarray(means, dtype=np.float64)
    errors = np.asarray(errors, dtype=np.float64)
    order = np.argsort(targets)
    targets, means, errors = targets[order], means[order], errors[order]
    agree = np.abs(means - means[-1]) <= \
        sigmas * np.hypot(errors, errors[-1])
    return float(targets[np.argmax(agree)])
