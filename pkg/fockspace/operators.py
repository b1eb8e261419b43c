"""Ladder operators, symmetry operators and basis states on a truncated Fock space."""

import numpy as np

from utilities.exceptions import ParameterError
from utilities.typehints import FockSpace, OperatorMatrix, StateVector


def annihilation_op(space: FockSpace) -> OperatorMatrix:
    """Lowering operator with <n|a|n+1> = sqrt(n+1)"""
    return OperatorMatrix(np.diag(np.sqrt(np.arange(1, space.dim)), k=1))


def creation_op(space: FockSpace) -> OperatorMatrix:
    return annihilation_op(space).adjoint()


def number_op(space: FockSpace) -> OperatorMatrix:
    return OperatorMatrix(np.diag(space.levels().astype(float)), hermitian=True)


def z3_rotation(space: FockSpace) -> OperatorMatrix:
    """Discrete rotation exp(i 2 pi n / 3)"""
    # Phases from n mod 3 so that levels n and n+3 carry bit-identical entries
    return OperatorMatrix(np.diag(np.exp(2j * np.pi * (space.levels() % 3) / 3)), unitary=True)


def sector_indices(space: FockSpace, k: int) -> np.ndarray:
    """Fock levels n with n mod 3 == k"""
    if k not in (0, 1, 2):
        raise ParameterError(f"sector index must be 0, 1 or 2, got {k}")
    return np.arange(k, space.dim, 3)


def sector_projector(space: FockSpace, k: int) -> OperatorMatrix:
    diagonal = np.zeros(space.dim)
    diagonal[sector_indices(space, k)] = 1.0
    return OperatorMatrix(np.diag(diagonal), hermitian=True)


def project_onto_sector(state: StateVector, k: int) -> StateVector:
    """Pi_k |psi> without building the projector"""
    amplitudes = np.zeros(state.dim, dtype=complex)
    index = np.arange(k, state.dim, 3)
    amplitudes[index] = state.amplitudes[index]
    return StateVector(amplitudes)


def basis_state(space: FockSpace, n: int) -> StateVector:
    if not 0 <= n < space.dim:
        raise ParameterError(f"Fock level {n} outside 0..{space.dim - 1}")
    amplitudes = np.zeros(space.dim, dtype=complex)
    amplitudes[n] = 1.0
    return StateVector(amplitudes)


def coherent_state(space: FockSpace, alpha: complex) -> StateVector:
    """Closed-form coherent state, renormalized inside the truncation"""
    amplitudes = np.empty(space.dim, dtype=complex)
    amplitudes[0] = np.exp(-abs(alpha) ** 2 / 2)
    # Stable product form of alpha^n / sqrt(n!)
    for n in range(1, space.dim):
        amplitudes[n] = amplitudes[n - 1] * alpha / np.sqrt(n)
    return StateVector(amplitudes).normalized()
