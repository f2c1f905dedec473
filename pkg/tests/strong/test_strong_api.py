# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.
"""Test the strong-coupling Hessian spectrum and energies."""

import math

import numpy as np
import pytest

from polaron_fciqmc.fock.errors import InvalidModelError
from polaron_fciqmc.strong.api import crossover_table, energy_strong, \
    energy_weak, excitation_energies_strong, hessian_frequency, \
    hessian_spectrum, odd_mode_equation, odd_mode_root, zero_point_sum
from polaron_fciqmc.strong.models import PekarSolution


@pytest.mark.parametrize(('j', 'expected'), [
    (0, 0.0),
    (2, math.sqrt(7.0 / 9.0)),
    (4, math.sqrt(0.9)),
])
def test_even_frequencies(j, expected):
    """Test the closed-form even modes."""
    mode = hessian_frequency(j)
    assert mode.parity == 'even'
    assert mode.order == j + 2
    assert mode.frequency == pytest.approx(expected, abs=1e-12)


def test_first_odd_mode():
    """Test the lowest odd mode."""
    mode = hessian_frequency(1)
    assert mode.parity == 'odd'
    assert mode.order == pytest.approx(2.523, abs=1e-3)
    assert mode.frequency == pytest.approx(0.647, abs=1e-3)


@pytest.mark.parametrize('j', [1, 3, 5, 11, 21, 99])
def test_odd_roots(j):
    """Test that the odd orders solve their equation in their interval."""
    n = odd_mode_root(j)
    assert j + 1 < n < j + 2
    assert abs(odd_mode_equation(n)) < 1e-8


@pytest.mark.parametrize('j', [0, 2, -1])
def test_odd_root_index(j):
    """Test that only odd indices have odd roots."""
    with pytest.raises(InvalidModelError):
        odd_mode_root(j)


def test_spectrum_ordering():
    """Test that the frequencies increase towards one."""
    frequencies = np.array([m.frequency for m in hessian_spectrum(200)])
    assert np.all(np.diff(frequencies) > 0)
    assert np.all(frequencies < 1.0)
    assert [m.index for m in hessian_spectrum(3)] == [0, 1, 2, 3]


def test_zero_point_sum():
    """Test the zero-point energy of the fluctuations."""
    assert zero_point_sum(200) == pytest.approx(-0.955, abs=0.005)
    assert zero_point_sum(400) == pytest.approx(zero_point_sum(200),
                                                abs=1e-3)
    assert zero_point_sum(200, tail=False) > zero_point_sum(200)


@pytest.mark.parametrize(('alpha', 'expected'), [
    (0.0, 0.0),
    (0.25, -0.253923125),
    (1.0, -1.0691),
])
def test_energy_weak(alpha, expected):
    """Test the weak-coupling expansion."""
    assert energy_weak(alpha) == pytest.approx(expected, abs=1e-12)


def test_energy_strong():
    """Test the strong-coupling energies."""
    zps = zero_point_sum(200)
    assert energy_strong(3.0) == pytest.approx(-3.0 + zps)
    assert energy_strong(3.0, j=1) - energy_strong(3.0) == \
        pytest.approx(hessian_frequency(1).frequency)
    with pytest.raises(InvalidModelError):
        energy_strong(0.0)


def test_crossover():
    """Test that both expansions meet near alpha = 2."""
    (row, ) = crossover_table([2.0])
    assert row.weak == pytest.approx(-2.310, abs=1e-3)
    assert row.strong == pytest.approx(-2.288, abs=5e-3)
    assert abs(row.weak - row.strong) < 0.15


def test_strong_excitations():
    """Test that every Hessian excitation lies below the continuum."""
    excitations = excitation_energies_strong(4)
    assert [e.index for e in excitations] == [1, 2, 3, 4]
    assert all(e.bound for e in excitations)
    assert excitations[1].energy == pytest.approx(math.sqrt(7.0 / 9.0))


@pytest.mark.parametrize('alpha', [0.5, 2.0, 7.0])
def test_pekar_solution(alpha):
    """Test the normalization of the Pekar electron profile."""
    solution = PekarSolution(alpha)
    assert solution.norm() == pytest.approx(1.0, abs=1e-8)
    assert solution.classical_energy == pytest.approx(-alpha ** 2 / 3)
    assert solution.field(0.0) == pytest.approx(
        math.sqrt(2 * alpha) * alpha / 2)
