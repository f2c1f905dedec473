# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.
"""Physics checks against the exact solver and the analytic limits.

The long FCIQMC runs are marked ``slow`` (``pytest -m slow``).
"""

import math

import numpy as np
import pytest
from helpers import dense

from polaron_fciqmc.fock.api import continuum_threshold_state
from polaron_fciqmc.fock.models import ModelParams
from polaron_fciqmc.observables.api import dense_density, exact_spectrum, \
    spectrum
from polaron_fciqmc.observables.fits import fit_cutoff_convergence, \
    interpolate_crossing
from polaron_fciqmc.oracle.api import basis_rows, hamiltonian_matrix, \
    solve, spectrum_scan
from polaron_fciqmc.oracle.models import Truncation
from polaron_fciqmc.qmc.api import run
from polaron_fciqmc.qmc.models import QmcParams, WalkerVector
from polaron_fciqmc.strong.api import energy_weak, hessian_frequency


def _time_step(model, phonons=3):
    """Step keeping the death factor positive up to ``phonons`` phonons."""
    recoil = phonons * model.momentum_cutoff
    return 0.9 / (phonons + recoil ** 2)


def _steps(duration, time_step):
    return int(round(duration / time_step))


@pytest.fixture
def exact_pair(small_model):
    """Two lowest eigenpairs of the small model, well inside the cap."""
    return solve(small_model, Truncation(8), k=2)


def test_ground_state_sign_stable(small_model):
    """Test that ground replicas started on the vacuum stay positive."""
    params = QmcParams(time_step=2e-3, target_walkers=200,
                       initial_walkers=10, num_replicas=2, seed=5,
                       measure_interval=5, truncation=Truncation(4))
    lowest = []
    run(small_model, params, 100, 200, callback=lambda state: lowest.append(
        min(r.vector.coeffs.min() for r in state.replicas)))
    assert len(lowest) == 300
    assert min(lowest) > 0


def test_population_plateau(small_model):
    """Test the constant population at a shift fixed to the exact energy."""
    truncation = Truncation(4)
    solution = solve(small_model, truncation, k=1)
    vacuum = int(np.flatnonzero(~solution.basis.any(axis=1))[0])
    ground = solution.vectors[:, 0]
    ground = ground * np.sign(ground[vacuum])
    expected = 1000.0 * ground[vacuum] * ground.sum()
    params = QmcParams(time_step=5e-3, target_walkers=1e9,
                       initial_walkers=1000.0, seed=9,
                       initial_shift=float(solution.energies[0]),
                       truncation=truncation)
    walkers = []
    report = run(small_model, params, 2000, 500,
                 callback=lambda state: walkers.append(
                     state.replicas[0].vector.norm1))
    late = np.array(walkers[-500:])
    assert not report.replicas[0].shift_released
    assert late.mean() == pytest.approx(expected, rel=2e-2)
    assert late.max() / late.min() < 1.02


def test_edge_state_energy(small_model, exact_pair):
    """Test that the edge state sits exactly one phonon above the ground."""
    e0 = exact_pair.energies[0]
    edge = continuum_threshold_state(exact_pair.walker_vector(0),
                                     small_model)
    rows = basis_rows(small_model, Truncation(9))
    coeffs = dense(edge, rows)
    assert np.abs(coeffs).sum() == pytest.approx(edge.norm1)
    matrix = hamiltonian_matrix(small_model, rows)
    energy = coeffs @ (matrix @ coeffs) / (coeffs @ coeffs)
    assert energy == pytest.approx(e0 + 1.0, abs=1e-6)
    assert exact_pair.energies[1] == pytest.approx(e0 + 1.0, abs=1e-6)


def test_edge_state_norm(small_model, exact_pair):
    """Test the norm of the edge state against the ground moments."""
    ground = exact_pair.walker_vector(0)
    edge = continuum_threshold_state(ground, small_model)
    zero, g = small_model.zero_mode, small_model.coupling
    occupation = ground.states[:, zero].astype(np.float64)
    raised = ground.states.copy()
    raised[:, zero] += 1
    created = WalkerVector(raised, ground.coeffs * np.sqrt(occupation + 1))
    norm = ground.dot(ground)
    expected = norm + ground.coeffs ** 2 @ occupation + g ** 2 * norm \
        - 2 * g * ground.dot(created)
    assert edge.dot(edge) == pytest.approx(expected, rel=1e-12)


def test_edge_state_density(small_model, exact_pair):
    """Test that only the zero mode gains the extra phonon."""
    ground = exact_pair.walker_vector(0)
    edge = continuum_threshold_state(ground, small_model)
    change = dense_density(edge, small_model).values \
        - dense_density(ground, small_model).values
    zero = small_model.zero_mode
    assert change[zero] == pytest.approx(1.0, abs=1e-5)
    assert np.abs(np.delete(change, zero)).max() < 1e-5


def test_truncation_variational():
    """Test that the exact ground energy drops as the cap is raised."""
    model = ModelParams(alpha=2.0, box_length=2.0, num_modes=3)
    energies = [solve(model, Truncation(n), k=1).energies[0]
                for n in (4, 6, 8)]
    assert energies[0] > energies[1] > energies[2]


def test_weak_coupling_oracle():
    """Test the exact ground energy against the weak-coupling series."""
    model = ModelParams.from_cutoff(0.25, 6.0, 8 * math.pi)
    energy = solve(model, Truncation(3), k=1).energies[0]
    assert energy == pytest.approx(energy_weak(0.25), abs=1e-2)


def test_spectrum_scan_edge_state():
    """Test that every exact spectrum holds the edge state at one."""
    models = [ModelParams(alpha, 2.0, modes)
              for alpha in (0.25, 1.0) for modes in (3, 5)]
    for row in spectrum_scan(models, Truncation(8), k=3):
        edge = [p for p in row.points if p.edge_overlap > 0.5]
        assert len(edge) == 1
        assert edge[0].excitation == pytest.approx(1.0, abs=1e-3)


def test_ground_spectral_weight():
    """Test the weak-coupling decrease of the vacuum weight."""
    weights = []
    for alpha in (0.0, 0.25, 0.5):
        model = ModelParams.from_cutoff(alpha, 6.0, 4 * math.pi)
        ground = solve(model, Truncation(3), k=1).walker_vector(0)
        weights.append(ground.vacuum_coefficient ** 2)
        assert weights[-1] == pytest.approx(1 - alpha / 2, abs=0.05)
    assert weights[0] == pytest.approx(1.0)
    assert weights[0] > weights[1] > weights[2]


def test_hessian_tail_law():
    """Test that j^2 (1 - omega_j) levels off below two."""
    ratios = np.array([j * j * (1.0 - hessian_frequency(j).frequency)
                       for j in range(50, 201)])
    assert np.all((ratios > 1.7) & (ratios < 2.0))
    assert ratios[-1] == pytest.approx(2.0, abs=0.06)


def test_cutoff_exponent():
    """Test the algebraic cutoff convergence of exact energies."""
    cutoffs = np.array([2.0, 3.0, 4.0, 5.0, 6.0]) * math.pi
    energies = [
        solve(ModelParams.from_cutoff(0.5, 6.0, kc), Truncation(2),
              k=1).energies[0]
        for kc in cutoffs]
    assert np.all(np.diff(energies) < 0)
    fit = fit_cutoff_convergence(cutoffs, energies)
    assert -1.3 < fit.parameters[2] < -0.7
    assert fit.limit < min(energies)


@pytest.mark.slow
def test_weak_coupling_ground_state():
    """Test FCIQMC against the oracle and the weak-coupling series."""
    model = ModelParams.from_cutoff(0.25, 6.0, 4 * math.pi)
    truncation = Truncation(4)
    exact = solve(model, truncation, k=1).energies[0]
    dt = _time_step(model)
    params = QmcParams(time_step=dt, target_walkers=1e5,
                       initial_walkers=1000.0, initial_shift=1.0, seed=11,
                       measure_interval=100, truncation=truncation)
    report = run(model, params, _steps(10, dt), _steps(20, dt))
    ground = spectrum(report)[0]
    assert abs(ground.energy - exact) < 3 * ground.energy_error + 1e-3
    assert ground.energy == pytest.approx(energy_weak(0.25), abs=2e-2)


@pytest.mark.slow
def test_intermediate_coupling_ground_state():
    """Test the ground energy at the largest cutoff of the energy curve."""
    model = ModelParams.from_cutoff(2.0, 6.0, 12 * math.pi)
    dt = _time_step(model)
    params = QmcParams(time_step=dt, target_walkers=2e5,
                       initial_walkers=1000.0, seed=21,
                       measure_interval=1000)
    report = run(model, params, _steps(10, dt), _steps(20, dt))
    ground = spectrum(report)[0]
    assert ground.energy == pytest.approx(-2.316, abs=0.015)
    assert ground.energy_error < 0.01


@pytest.mark.slow
def test_bound_state_below_continuum():
    """Test a bound excitation below one next to the edge state."""
    model = ModelParams.from_cutoff(2.0, 6.0, 4 * math.pi)
    dt = _time_step(model)
    params = QmcParams(time_step=dt, target_walkers=1e6,
                       initial_walkers=1000.0, num_eigenstates=3, seed=5,
                       measure_interval=1000)
    report = run(model, params, _steps(40, dt), _steps(40, dt))
    excited = spectrum(report)[1:]
    bound = min(excited, key=lambda p: p.excitation)
    assert bound.excitation < 1.0 - 3 * bound.excitation_error
    assert any(abs(p.excitation - 1.0) <= 0.02 for p in excited)


@pytest.mark.slow
def test_threshold_bracket():
    """Test where the lowest non-edge excitation crosses the edge."""
    alphas = [1.5, 1.6, 1.7, 1.8, 1.9, 2.0]
    crossings = []
    for length in (6.0, 8.0):
        models = [ModelParams.from_cutoff(a, length, 4 * math.pi)
                  for a in alphas]
        gaps = []
        for row in spectrum_scan(models, Truncation(5), k=6):
            inside = [p.excitation for p in row.points[1:]
                      if p.edge_overlap < 0.5]
            gaps.append(min(inside) - 1.0)
        crossings.append(interpolate_crossing(alphas, gaps).position)
    assert all(1.65 <= c <= 1.85 for c in crossings)
    assert crossings[0] == pytest.approx(crossings[1], abs=0.1)


@pytest.mark.slow
def test_sign_problem_plateau():
    """Test the low excited shift below the critical walker number."""
    model = ModelParams.from_cutoff(2.0, 6.0, 4 * math.pi)
    dt = _time_step(model)
    points = {}
    for target in (1e3, 1e5, 1e6):
        params = QmcParams(time_step=dt, target_walkers=target,
                           initial_walkers=100.0, num_eigenstates=2,
                           seed=17, measure_interval=1000)
        points[target] = spectrum(
            run(model, params, _steps(20, dt), _steps(40, dt)))

    def agree(a, b):
        return abs(a.energy - b.energy) <= \
            3 * math.hypot(a.energy_error, b.energy_error)

    low, mid, high = (points[t][1] for t in (1e3, 1e5, 1e6))
    assert low.energy < mid.energy - \
        3 * math.hypot(low.energy_error, mid.energy_error)
    assert agree(mid, high)
    assert all(agree(points[t][0], points[1e6][0]) for t in (1e3, 1e5))


@pytest.mark.slow
def test_bound_state_spectral_weight():
    """Test the vacuum weight of the bound state past the threshold."""
    model = ModelParams.from_cutoff(2.0, 6.0, 4 * math.pi)
    solution = solve(model, Truncation(5), k=4)
    vectors = [solution.walker_vector(j) for j in range(4)]
    points = exact_spectrum(solution.energies, vectors, model=model)
    bound = min((p for p in points[1:] if p.edge_overlap < 0.5),
                key=lambda p: p.excitation)
    assert bound.bound
    weight = vectors[bound.index].vacuum_coefficient ** 2
    assert 0.1 <= weight <= 0.35
