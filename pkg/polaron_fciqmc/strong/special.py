# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Digamma function."""

import math

from .errors import DigammaDomainError

EULER_GAMMA = 0.57721566490153286061
"""Euler's constant :math:`\\gamma`."""

_ASYMPTOTIC_FROM = 10.0

# Coefficients B_2k / 2k of the asymptotic series in 1/x^2k.
_SERIES = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
)


def digamma(x: float) -> float:
    """Logarithmic derivative :math:`\\Gamma'(x)/\\Gamma(x)` for ``x > 0``.

    Upward recurrence :math:`\\psi(x) = \\psi(x+1) - 1/x` moves the argument
    to :math:`x \\geq 10`, where the asymptotic series is accurate to
    round-off.
    """
    x = float(x)
    if not (x > 0 and math.isfinite(x)):
        raise DigammaDomainError(x)
    result = 0.0
    while x < _ASYMPTOTIC_FROM:
        result -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    series = 0.0
    power = inv2
    for coefficient in _SERIES:
        series += coefficient * power
        power *= inv2
    return result + math.log(x) - 0.5 / x - series
