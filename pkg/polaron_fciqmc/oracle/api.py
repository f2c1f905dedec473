# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Exact eigenpairs of the Hamiltonian on a truncated Fock space."""

from typing import List, NamedTuple, Sequence, Tuple

import numpy as np
import scipy.linalg
import scipy.sparse
from scipy.sparse.linalg import ArpackNoConvergence, eigsh

from ..fock.api import diagonal_energies, excitations, reflect_rows
from ..fock.models import FockState, ModelParams
from ..observables.api import exact_spectrum
from ..observables.models import SpectrumPoint
from ..proxies import current_logger
from ..qmc.models import WalkerVector
from ..utils import chunk_slices, find_rows, hash_rows
from .errors import BasisTooLargeError, NoConvergenceError
from .models import Truncation

MATRIX_CHUNK = 16384
"""Rows whose connections are generated at once while assembling."""

DEGENERACY_TOLERANCE = 1e-8


def basis_size(num_modes: int, truncation: Truncation) -> int:
    """Number of occupation arrays inside ``truncation``."""
    cap, total = truncation.max_per_mode, truncation.max_total_phonons
    counts = [1] + [0] * total
    for _ in range(num_modes):
        updated = [0] * (total + 1)
        for s, count in enumerate(counts):
            if count:
                for n in range(min(cap, total - s) + 1):
                    updated[s + n] += count
        counts = updated
    return sum(counts)


def basis_rows(model: ModelParams, truncation: Truncation,
               max_size: int = 10 ** 7) -> np.ndarray:
    """Basis as ``(n, M)`` ``uint8`` rows in lexicographic order."""
    size = basis_size(model.num_modes, truncation)
    if size > max_size:
        raise BasisTooLargeError(size, max_size)
    cap, total = truncation.max_per_mode, truncation.max_total_phonons
    # suffix[b]: rows of the remaining modes holding at most b phonons
    suffix = [np.arange(min(b, cap) + 1, dtype=np.uint8)[:, None]
              for b in range(total + 1)]
    for _ in range(model.num_modes - 1):
        suffix = [
            np.concatenate([
                np.hstack([np.full((len(suffix[b - n]), 1), n,
                                   dtype=np.uint8), suffix[b - n]])
                for n in range(min(b, cap) + 1)
            ])
            for b in range(total + 1)
        ]
    return np.ascontiguousarray(suffix[total])


def build_basis(model: ModelParams, truncation: Truncation,
                max_size: int = 10 ** 7) -> List[FockState]:
    """Basis states in lexicographic order."""
    return [FockState(row.tobytes())
            for row in basis_rows(model, truncation, max_size)]


def hamiltonian_matrix(model: ModelParams,
                       rows: np.ndarray) -> scipy.sparse.csr_matrix:
    """Hamiltonian restricted to ``rows`` as a sparse matrix.

    Connections leaving the basis are dropped.
    """
    size = rows.shape[0]
    hashes = hash_rows(rows)
    order = np.argsort(hashes, kind='stable')
    row_index = [np.arange(size)]
    col_index = [np.arange(size)]
    values = [diagonal_energies(rows, model)]
    for sl in chunk_slices(size, MATRIX_CHUNK):
        source, targets, amplitudes = excitations(rows[sl], model)
        found = find_rows(rows, hashes, order, targets)
        inside = found >= 0
        row_index.append(found[inside])
        col_index.append(source[inside] + sl.start)
        values.append(amplitudes[inside])
    return scipy.sparse.csr_matrix(
        (np.concatenate(values),
         (np.concatenate(row_index), np.concatenate(col_index))),
        shape=(size, size))


def parity_permutation(rows: np.ndarray) -> np.ndarray:
    """Index of the mirrored state of every basis row."""
    hashes = hash_rows(rows)
    order = np.argsort(hashes, kind='stable')
    return find_rows(rows, hashes, order, reflect_rows(rows))


def _parity_rotate(energies, vectors, permutation):
    """Rotate degenerate eigenvectors onto parity eigenvectors."""
    start = 0
    while start < len(energies):
        stop = start + 1
        scale = max(1.0, abs(energies[start]))
        while stop < len(energies) and energies[stop] - energies[start] \
                < DEGENERACY_TOLERANCE * scale:
            stop += 1
        if stop - start > 1:
            block = vectors[:, start:stop]
            parity = block.T @ block[permutation]
            _, rotation = scipy.linalg.eigh(0.5 * (parity + parity.T))
            vectors[:, start:stop] = block @ rotation
        start = stop
    return vectors


class OracleSolution(NamedTuple):
    """Lowest eigenpairs on the truncated space."""

    model: ModelParams
    truncation: Truncation
    basis: np.ndarray
    energies: np.ndarray
    vectors: np.ndarray

    @property
    def pairs(self) -> List[Tuple[float, np.ndarray]]:
        """``(energy, dense vector)`` pairs in ascending energy."""
        return [(float(e), self.vectors[:, j])
                for j, e in enumerate(self.energies)]

    def walker_vector(self, j: int) -> WalkerVector:
        """Eigenvector ``j`` as a :class:`WalkerVector`."""
        return to_walker_vector(self.basis, self.vectors[:, j])


def to_walker_vector(rows: np.ndarray, vector: np.ndarray) -> WalkerVector:
    """Dense vector over the basis ``rows`` as a :class:`WalkerVector`."""
    return WalkerVector(rows, vector, merged=True)


def solve(model: ModelParams, truncation: Truncation, k: int = 4,
          max_size: int = 10 ** 7, dense_limit: int = 2000,
          tolerance: float = 1e-9) -> OracleSolution:
    """Lowest ``k`` eigenpairs of the truncated Hamiltonian.

    Small bases are diagonalized densely, larger ones with the implicitly
    restarted Lanczos method of ARPACK. At :math:`P = 0` degenerate
    eigenvectors are rotated into definite parity.
    """
    rows = basis_rows(model, truncation, max_size)
    size = rows.shape[0]
    k = min(k, size)
    matrix = hamiltonian_matrix(model, rows)
    if size <= dense_limit or k >= size - 1:
        energies, vectors = scipy.linalg.eigh(matrix.toarray())
        energies, vectors = energies[:k], vectors[:, :k]
    else:
        try:
            energies, vectors = eigsh(matrix, k=k, which='SA', tol=1e-13)
        except ArpackNoConvergence as exc:
            raise NoConvergenceError(f'Lanczos did not converge: {exc}')
        order = np.argsort(energies)
        energies, vectors = energies[order], vectors[:, order]

    if model.total_momentum == 0.0:
        vectors = _parity_rotate(energies, vectors, parity_permutation(rows))

    residuals = np.linalg.norm(matrix @ vectors - vectors * energies,
                               axis=0) / np.linalg.norm(vectors, axis=0)
    if np.any(residuals >= tolerance):
        raise NoConvergenceError(
            f'eigenpair residuals {residuals.max():.3g} above {tolerance}')
    current_logger.debug('Oracle solved %d states of basis size %d.',
                         k, size)
    return OracleSolution(model, truncation, rows, energies, vectors)


class ScanRow(NamedTuple):
    """Exact spectrum at one model."""

    model: ModelParams
    points: List[SpectrumPoint]


def spectrum_scan(models: Sequence[ModelParams], truncation: Truncation,
                  k: int = 4, parity_threshold: float = 0.9,
                  **options) -> List[ScanRow]:
    """Exact spectrum points for every model of the grid."""
    rows = []
    for model in models:
        solution = solve(model, truncation, k, **options)
        vectors = [solution.walker_vector(j)
                   for j in range(len(solution.energies))]
        rows.append(ScanRow(model, exact_spectrum(
            solution.energies, vectors, parity_threshold, model)))
    return rows
