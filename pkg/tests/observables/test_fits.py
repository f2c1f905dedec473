# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.
"""Test the convergence fits and interpolations."""

import math

import numpy as np
import pytest

from polaron_fciqmc.observables.errors import FitError, NoCrossingError
from polaron_fciqmc.observables.fits import box_exponential_law, \
    critical_walker_number, cutoff_law, fit_box_convergence, \
    fit_cutoff_convergence, interpolate_crossing


def test_fit_cutoff_convergence():
    """Test that the cutoff law is recovered from exact points."""
    kc = math.pi * np.array([2.0, 4.0, 6.0, 8.0, 10.0, 12.0])
    energies = cutoff_law(kc, -2.3455, 0.4110, -1.0568)
    fit = fit_cutoff_convergence(kc, energies)
    assert fit.limit == pytest.approx(-2.3455, abs=1e-3)
    assert fit.parameters[2] == pytest.approx(-1.0568, abs=1e-2)
    assert fit.residual < 1e-8


def test_fit_cutoff_large_scale():
    """Test a weak-coupling sized scale far from the usual start."""
    kc = math.pi * np.array([2.0, 3.0, 4.0, 5.0, 6.0])
    energies = cutoff_law(kc, -0.52, 10.0, -1.0)
    fit = fit_cutoff_convergence(kc, energies)
    assert fit.limit == pytest.approx(-0.52, abs=1e-4)
    assert fit.parameters[1] == pytest.approx(10.0, rel=1e-2)
    assert fit.parameters[2] == pytest.approx(-1.0, abs=1e-3)


def test_fit_box_convergence():
    """Test that exact exponential data prefer the exponential law."""
    lengths = np.array([2.0, 3.0, 4.0, 5.0, 6.0, 7.0])
    energies = box_exponential_law(lengths, -2.3089, 9.5077, 1.5976)
    fit = fit_box_convergence(lengths, energies)
    assert fit.preferred == 'exponential'
    assert fit.exponential.limit == pytest.approx(-2.3089, abs=1e-3)
    assert fit.exponential.parameters[2] == pytest.approx(1.5976, rel=1e-2)


def test_fit_too_few_points():
    """Test that underdetermined fits are refused."""
    with pytest.raises(FitError):
        fit_cutoff_convergence([1.0, 2.0, 3.0], [-1.0, -1.5, -1.7])


def test_interpolate_crossing():
    """Test the zero of a linear series."""
    x = [1.9, 1.6, 1.65, 1.8]
    y = [2 * (v - 1.72) for v in x]
    crossing = interpolate_crossing(x, y, [0.01] * 4)
    assert crossing.position == pytest.approx(1.72)
    assert (crossing.lower, crossing.upper) == (1.65, 1.8)
    assert crossing.error > 0.0


def test_interpolate_exact_zero():
    """Test a grid point exactly on the zero."""
    crossing = interpolate_crossing([1.0, 2.0, 3.0], [-1.0, 0.0, 1.0])
    assert crossing.position == 2.0
    assert crossing.error == 0.0


def test_no_crossing():
    """Test series without a sign change."""
    with pytest.raises(NoCrossingError):
        interpolate_crossing([1.0, 2.0], [0.5, 0.1])


@pytest.mark.parametrize(('means', 'expected'), [
    ([-0.9, -0.7, -0.6, -0.6], 1e5),
    ([-0.6, -0.6, -0.6, -0.6], 1e3),
    ([-0.9, -0.8, -0.7, -0.6], 1e6),
])
def test_critical_walker_number(means, expected):
    """Test the smallest walker number agreeing with the largest."""
    targets = [1e3, 1e4, 1e5, 1e6]
    assert critical_walker_number(targets, means, [0.01] * 4) == expected
