# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.
"""Test the FCIQMC propagation."""

import math

import numpy as np
import pytest
from helpers import dense, vector

from polaron_fciqmc.fock.models import FockState, ModelParams
from polaron_fciqmc.oracle.api import solve
from polaron_fciqmc.oracle.models import Truncation
from polaron_fciqmc.qmc.api import compress, initial_state, orthogonalize, \
    project, run, spawn, starting_states, step, update_shift
from polaron_fciqmc.qmc.errors import DegenerateReplicaError, \
    InvalidQmcParamsError, InvalidWalkerCountError, TimeStepTooLargeError
from polaron_fciqmc.qmc.models import QmcParams, WalkerVector
from polaron_fciqmc.qmc.rng import CounterRNG


@pytest.fixture
def walk_params():
    """Short runs on the restricted space of the small model."""
    return QmcParams(time_step=2e-3, target_walkers=50, initial_walkers=10,
                     num_replicas=2, num_eigenstates=2, measure_interval=5,
                     chunk_size=2, seed=42, truncation=Truncation(4))


def test_starting_states(small_model):
    """Test the lowest diagonal states with ties in state order."""
    states = starting_states(small_model, 3)
    assert [str(s) for s in states] == ['0,0,0', '0,1,0', '0,2,0']
    with pytest.raises(InvalidQmcParamsError):
        starting_states(small_model, 11)


def test_initial_state(small_model):
    """Test the replica layout of a fresh state."""
    params = QmcParams(num_replicas=2, num_eigenstates=2,
                       initial_walkers=4, initial_shift=0.5)
    state = initial_state(small_model, params, sign=-1.0)
    assert len(state.replicas) == 4
    assert state.num_replicas == 2
    assert [r.shift for r in state.replicas] == [0.5, 1.5, 0.5, 1.5]
    assert state.replicas[3].vector == WalkerVector.single(
        FockState.parse('0,1,0'), -4.0)
    assert not any(r.variable for r in state.replicas)


def test_initial_shift_offset():
    """Test that a frozen excited shift keeps its eigenstate stationary."""
    model = ModelParams(alpha=0.0, box_length=2.0, num_modes=3)
    params = QmcParams(num_eigenstates=2, initial_walkers=10,
                       target_walkers=1000)
    state = initial_state(model, params)
    assert [r.shift for r in state.replicas] == [0.0, 1.0]
    for _ in range(5):
        step(state, model, params)
    excited = state.replicas[1]
    assert not excited.variable
    assert excited.shift == 1.0
    assert excited.vector == vector({'0,1,0': 10.0})
    assert state.replicas[0].vector == vector({'0,0,0': 10.0})


def test_update_shift():
    """Test the logarithmic population control."""
    params = QmcParams(time_step=0.01, shift_damping=0.1, shift_interval=2)
    assert update_shift(1.0, 110, 100, params) == \
        pytest.approx(1.0 - 5.0 * math.log(1.1))
    assert update_shift(1.0, 100, 100, params) == 1.0
    with pytest.raises(InvalidWalkerCountError):
        update_shift(1.0, 0, 100, params)


def test_orthogonalize():
    """Test Gram-Schmidt against the lower vectors."""
    v0 = vector({'0,0,0': 1.0, '0,1,0': 1.0})
    v1 = vector({'0,0,0': 2.0, '1,0,0': 1.0})
    v2 = vector({'0,1,0': 3.0, '0,0,1': 1.0})
    result = orthogonalize([v0, v1, v2])
    assert result[0] == v0
    for i in range(3):
        for j in range(i):
            assert result[i].dot(result[j]) == pytest.approx(0.0, abs=1e-12)


def test_orthogonalize_degenerate():
    """Test that a vanished lower vector is reported."""
    with pytest.raises(DegenerateReplicaError):
        orthogonalize([WalkerVector.empty(3), vector({'0,0,0': 1.0})])


def test_spawn_deterministic(small_model):
    """Test the exact off-diagonal product above the threshold."""
    params = QmcParams(time_step=0.01, deterministic_threshold=0.0)
    spawned = spawn(vector({'0,0,0': 2.0}), small_model, params,
                    CounterRNG(1))
    expected = 2.0 * 0.01 * small_model.coupling
    assert spawned.to_dict() == pytest.approx({
        FockState.parse(s): expected for s in ('1,0,0', '0,1,0', '0,0,1')})


def test_spawn_deterministic_boundary(small_model):
    """Test that a coefficient equal to the threshold spawns exactly."""
    params = QmcParams(time_step=0.01, deterministic_threshold=2.0)
    expected = 2.0 * 0.01 * small_model.coupling
    for seed in range(5):
        spawned = spawn(vector({'0,0,0': 2.0}), small_model, params,
                        CounterRNG(seed))
        assert spawned.to_dict() == pytest.approx({
            FockState.parse(s): expected
            for s in ('1,0,0', '0,1,0', '0,0,1')})


def test_spawn_unbiased(small_model):
    """Test that stochastic spawns average to the exact product."""
    params = QmcParams(time_step=0.01, deterministic_threshold=10.0)
    rng = CounterRNG(3)
    source = vector({'0,0,0': 0.5})
    steps = 6000
    total = WalkerVector.empty(3)
    for s in range(steps):
        total = total + spawn(source, small_model, params, rng, step=s)
    expected = 0.5 * 0.01 * small_model.coupling
    for name in ('1,0,0', '0,1,0', '0,0,1'):
        mean = total.get(FockState.parse(name)) / steps
        assert mean == pytest.approx(expected, rel=0.1)


def test_compress_unbiased():
    """Test that compression keeps the mean of small entries."""
    rng = CounterRNG(5)
    source = vector({'1,0,0': 0.3, '0,1,0': 2.0})
    steps = 4000
    kept = 0.0
    for s in range(steps):
        compressed = compress(source, 1.0, rng, step=s)
        assert compressed.get(FockState.parse('0,1,0')) == 2.0
        assert compressed.get(FockState.parse('1,0,0')) in (0.0, 1.0)
        kept += compressed.get(FockState.parse('1,0,0'))
    assert kept / steps == pytest.approx(0.3, abs=0.04)


def test_compress_exempt():
    """Test that exempt entries are left alone."""
    source = vector({'1,0,0': 0.3, '0,1,0': 2.0})
    # rows are ordered 0,1,0 then 1,0,0
    compressed = compress(source, 1.0, CounterRNG(5),
                          exempt=np.array([False, True]))
    assert compressed == source


def test_project_fixed_point(small_model, small_truncation):
    """Test that an exact eigenvector is a fixed point at its energy."""
    solution = solve(small_model, small_truncation, k=2)
    ground = solution.walker_vector(0).scale(1e6)
    params = QmcParams(time_step=1e-3, deterministic_threshold=0.0,
                       truncation=small_truncation)
    projected = project(ground, solution.energies[0], small_model, params,
                        CounterRNG(1))
    assert np.allclose(dense(projected, solution.basis),
                       dense(ground, solution.basis), rtol=1e-8, atol=1e-4)


def test_project_truncation(small_model):
    """Test that spawns outside the truncation are discarded."""
    params = QmcParams(time_step=1e-3, deterministic_threshold=0.0,
                       truncation=Truncation(1))
    projected = project(vector({'0,1,0': 5.0}), 0.0, small_model, params,
                        CounterRNG(1))
    assert all(s.total_phonons <= 1 for s, _ in projected.items())
    assert projected.get(FockState.parse('0,1,0')) == \
        pytest.approx(5.0 * (1.0 - 1e-3))


def test_project_time_step_too_large(small_model):
    """Test that a negative death factor is refused."""
    params = QmcParams(time_step=0.5)
    with pytest.raises(TimeStepTooLargeError):
        project(vector({'0,0,0': 5.0}), -10.0, small_model, params,
                CounterRNG(1))


def test_step_releases_shift(small_model):
    """Test that the shift turns variable at the target walker number."""
    params = QmcParams(target_walkers=5, initial_walkers=10,
                       truncation=Truncation(2))
    state = initial_state(small_model, params)
    step(state, small_model, params)
    assert state.step == 1
    replica = state.replicas[0]
    assert replica.variable
    assert replica.reference_walkers == replica.vector.norm1
    assert state.series.data.shape == (1, 5)
    assert state.series.data[0, 0] == 1


def test_step_orthogonalizes(small_model, walk_params):
    """Test that excited replicas stay orthogonal to the ground state."""
    state = initial_state(small_model, walk_params)
    for _ in range(5):
        step(state, small_model, walk_params)
    for r in range(state.num_replicas):
        ground, excited = [rep.vector for rep in state.replica_set(r)]
        assert ground.dot(excited) == pytest.approx(
            0.0, abs=1e-9 * ground.norm1 * excited.norm1)


def test_run_reproducible(small_model, walk_params):
    """Test that the same seed gives the same run."""
    first = run(small_model, walk_params, 20, 40)
    second = run(small_model, walk_params, 20, 40)
    assert first.state == second.state
    assert first.state.step == 60
    assert len(first.state.snapshots) == 8 * 2


def test_run_thread_independent(small_model, walk_params):
    """Test that deterministic runs do not depend on the thread count."""
    single = run(small_model, walk_params, 20, 40)
    threaded = run(small_model, walk_params.replace(threads=3), 20, 40)
    assert single.state == threaded.state


def test_run_uncoupled():
    """Test the exact zero energy without coupling."""
    model = ModelParams(alpha=0.0, box_length=2.0, num_modes=3)
    params = QmcParams(target_walkers=5, initial_walkers=10,
                       measure_interval=1)
    report = run(model, params, 5, 64)
    assert np.all(report.state.series.data[:, 2] == 0.0)
    summary = report.replicas[0]
    assert summary.shift.mean == 0.0
    assert summary.shift.error == 0.0
    assert summary.shift_released
    assert report.converged
    assert report.state.replicas[0].vector == vector({'0,0,0': 10.0})


def test_run_callback(small_model, walk_params):
    """Test that the callback sees every step."""
    seen = []
    run(small_model, walk_params, 5, 5, callback=lambda s: seen.append(
        s.step))
    assert seen == list(range(1, 11))
