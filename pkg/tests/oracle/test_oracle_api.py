# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.
"""Test the exact diagonalization oracle."""

import numpy as np
import pytest

from polaron_fciqmc.fock.api import free_spectrum
from polaron_fciqmc.fock.errors import InvalidModelError
from polaron_fciqmc.fock.models import ModelParams
from polaron_fciqmc.observables.api import classify_parity
from polaron_fciqmc.observables.models import Parity
from polaron_fciqmc.oracle.api import basis_rows, basis_size, build_basis, \
    hamiltonian_matrix, parity_permutation, solve, spectrum_scan
from polaron_fciqmc.oracle.errors import BasisTooLargeError
from polaron_fciqmc.oracle.models import Truncation


@pytest.mark.parametrize(('modes', 'truncation', 'size'), [
    (3, Truncation(2, 2), 10),
    (1, Truncation(3), 4),
    (3, Truncation(2, 1), 7),
    (5, Truncation(3), 56),
    (3, Truncation(0), 1),
])
def test_basis_size(modes, truncation, size):
    """Test the basis counts."""
    model = ModelParams(alpha=1.0, box_length=2.0, num_modes=modes)
    assert basis_size(modes, truncation) == size
    assert basis_rows(model, truncation).shape == (size, modes)


def test_basis_order(small_model, small_truncation):
    """Test the lexicographic basis."""
    basis = [str(s) for s in build_basis(small_model, small_truncation)]
    assert basis == sorted(basis)
    assert basis[0] == '0,0,0'
    assert len(set(basis)) == 10


def test_basis_too_large(small_model):
    """Test the basis size bound."""
    with pytest.raises(BasisTooLargeError):
        basis_rows(small_model, Truncation(10), max_size=100)


def test_invalid_truncation():
    """Test the truncation bounds."""
    with pytest.raises(InvalidModelError):
        Truncation(-1)
    with pytest.raises(InvalidModelError):
        Truncation(2, 256)


def test_hamiltonian_symmetric(small_model):
    """Test that the truncated Hamiltonian is symmetric."""
    rows = basis_rows(small_model, Truncation(3))
    matrix = hamiltonian_matrix(small_model, rows).toarray()
    assert np.allclose(matrix, matrix.T)
    assert matrix[0, 0] == 0.0
    assert np.count_nonzero(matrix[0]) == 3


def test_parity_permutation(small_model, small_truncation):
    """Test that the mirror map is an involution."""
    rows = basis_rows(small_model, small_truncation)
    permutation = parity_permutation(rows)
    assert np.array_equal(permutation[permutation], np.arange(len(rows)))
    assert np.array_equal(rows[permutation], rows[:, ::-1])


def test_uncoupled_levels():
    """Test that without coupling the spectrum is the free one."""
    model = ModelParams(alpha=0.0, box_length=2.0, num_modes=3)
    solution = solve(model, Truncation(2), k=10)
    expected = sorted(level.energy for level in free_spectrum(model, 2)
                      for _ in range(level.degeneracy))
    assert np.allclose(solution.energies, expected)


def test_lanczos_matches_dense():
    """Test the iterative solver against dense diagonalization."""
    model = ModelParams(alpha=1.0, box_length=3.0, num_modes=5)
    truncation = Truncation(3)
    dense = solve(model, truncation, k=4)
    lanczos = solve(model, truncation, k=4, dense_limit=0)
    assert np.allclose(dense.energies, lanczos.energies, atol=1e-9)


def test_solution_vectors(small_model, small_truncation):
    """Test the eigenpairs and their parities."""
    solution = solve(small_model, small_truncation, k=10)
    matrix = hamiltonian_matrix(small_model, solution.basis).toarray()
    assert np.allclose(solution.energies, np.linalg.eigvalsh(matrix))
    for j, (energy, vec) in enumerate(solution.pairs):
        assert np.allclose(matrix @ vec, energy * vec, atol=1e-9)
        walkers = solution.walker_vector(j)
        assert walkers.dot(walkers) == pytest.approx(1.0)
        assert classify_parity(walkers) in (Parity.EVEN, Parity.ODD)


def test_spectrum_scan(small_truncation):
    """Test the exact spectrum over a coupling grid."""
    models = [ModelParams(a, 2.0, 3) for a in (0.5, 1.0)]
    rows = spectrum_scan(models, small_truncation, k=3)
    assert [row.model.alpha for row in rows] == [0.5, 1.0]
    for row in rows:
        assert len(row.points) == 3
        assert row.points[0].excitation == 0.0
        assert row.points[0].parity == Parity.EVEN
    assert rows[1].points[0].energy < rows[0].points[0].energy
