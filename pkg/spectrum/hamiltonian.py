"""Rotating-frame Hamiltonian of the three-photon Kerr parametric oscillator."""

import numpy as np

from fockspace.operators import annihilation_op
from utilities.typehints import FockSpace, ModelParams, OperatorMatrix


def hamiltonian_terms(space: FockSpace) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Number, Kerr and three-photon pump terms as real matrices.

    The pump term is assembled as M + M^T so the result is exactly symmetric.
    """
    a = np.real(annihilation_op(space).entries)
    a2 = a @ a
    a3 = a2 @ a
    number = a.T @ a
    kerr = a2.T @ a2
    pump = a3 + a3.T
    return number, kerr, pump


def build_hamiltonian(p: ModelParams, space: FockSpace) -> OperatorMatrix:
    """H = -Delta a^dagger a - U a^dagger^2 a^2 + G (a^dagger^3 + a^3)"""
    number, kerr, pump = hamiltonian_terms(space)
    return OperatorMatrix(-p.delta * number - p.kerr * kerr + p.pump * pump, hermitian=True)


def undriven_energies(p: ModelParams, space: FockSpace) -> np.ndarray:
    """Diagonal energies -(Delta + U (n - 1)) n at zero pump"""
    n = space.levels().astype(float)
    return -(p.delta + p.kerr * (n - 1)) * n


def degenerate_pairs(p: ModelParams, space: FockSpace, tolerance: float = 1e-9) -> list[tuple[int, int]]:
    """Fock pairs (n, m), n < m, that share an energy at zero pump"""
    energies = undriven_energies(p, space)
    scale = tolerance * max(p.kerr, 1.0)
    pairs = []
    for n in range(space.dim):
        for m in range(n + 1, space.dim):
            if abs(energies[n] - energies[m]) < scale:
                pairs.append((n, m))
    return pairs
