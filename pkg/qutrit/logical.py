"""Logical qutrit operators on the cat basis and Gell-Mann coordinates of qutrit states."""

import logging
import warnings
from typing import Sequence

import numpy as np

from qutrit.transitions import transition_table
from states.gaussian_frame import squeezing_parameter
from states.overlaps import overlap_squeezed_coherent
from utilities.exceptions import WeakSeparationWarning
from utilities.typehints import DensityMatrix, FockSpace, ModelParams, QutritCoords, StateVector, TimeSeries

logger = logging.getLogger(__name__)

# Overlap modulus above which the cat legs no longer count as well separated
SEPARATION_LIMIT = 0.05

# Diagonal Gell-Mann matrices sit at these positions of the standard ordering
DIAGONAL = (2, 7)


def cyclic_shift() -> np.ndarray:
    """Permutation sending |C_k> to |C_{k-1}>"""
    return np.roll(np.eye(3), -1, axis=0)


def logical_operators(p: ModelParams, space: FockSpace) -> dict[str, np.ndarray]:
    """X_L from a / |alpha| restricted to the cat basis, Z_L = diag(1, w, w^2)"""
    overlap = overlap_squeezed_coherent(p)
    if overlap.A >= SEPARATION_LIMIT:
        warnings.warn(f"cat legs overlap with A = {overlap.A:.3g} >= {SEPARATION_LIMIT}; "
                      "X_L deviates from a cyclic shift", WeakSeparationWarning, stacklevel=2)
    magnitude = squeezing_parameter(p)[0].alpha_mag
    x_logical = transition_table(p, space).numerical.a_elems / magnitude
    z_logical = np.diag(np.exp(2j * np.pi * np.arange(3) / 3))
    logger.debug("X_L deviation from the cyclic shift: %.3e", np.linalg.norm(x_logical - cyclic_shift()))
    return {"X_L": x_logical, "Z_L": z_logical}


def gell_mann() -> tuple[np.ndarray, ...]:
    """The eight Gell-Mann matrices in the standard order lambda_1..lambda_8"""
    matrices = []
    for j, k in ((0, 1), (0, 2), (1, 2)):
        sym = np.zeros((3, 3), dtype=complex)
        sym[j, k] = sym[k, j] = 1
        anti = np.zeros((3, 3), dtype=complex)
        anti[j, k], anti[k, j] = -1j, 1j
        matrices.append((sym, anti))
    (l1, l2), (l4, l5), (l6, l7) = matrices
    l3 = np.diag([1, -1, 0]).astype(complex)
    l8 = np.diag([1, 1, -2]).astype(complex) / np.sqrt(3)
    return l1, l2, l3, l4, l5, l6, l7, l8


def qutrit_coords(rho3: np.ndarray | DensityMatrix) -> QutritCoords:
    """x = Tr(rho l3), y = Tr(rho l8), z = root-sum-square of the six off-diagonal expectations"""
    rho = rho3 if isinstance(rho3, DensityMatrix) else DensityMatrix(rho3)
    values = np.array([np.trace(rho.entries @ m).real for m in gell_mann()])
    off_diagonal = np.delete(values, DIAGONAL)
    return QutritCoords(x=float(values[2]), y=float(values[7]), z=float(np.sqrt(np.sum(off_diagonal ** 2))))


def code_space_density(rho: DensityMatrix, basis: Sequence[StateVector]) -> np.ndarray:
    """rho3[l, k] = <C_l|rho|C_k>, renormalized to unit trace on the code space"""
    vectors = np.column_stack([state.amplitudes for state in basis])
    reduced = vectors.conj().T @ rho.entries @ vectors
    trace = np.trace(reduced).real
    if trace <= 0:
        raise ValueError("the state has no weight on the code space")
    reduced = 0.5 * (reduced + reduced.conj().T) / trace
    return reduced


def qutrit_trajectory(series: TimeSeries, basis: Sequence[StateVector]) -> list[dict[str, float]]:
    """Rows (t, x, y, z, code_weight) along a stored evolution"""
    if series.states is None:
        raise ValueError("the time series carries no states; evolve with store_states=True")
    rows = []
    vectors = np.column_stack([state.amplitudes for state in basis])
    for t, rho in zip(series.times, series.states):
        weight = float(np.trace(vectors.conj().T @ rho.entries @ vectors).real)
        coords = qutrit_coords(code_space_density(rho, basis))
        rows.append({"t": float(t), "x": coords.x, "y": coords.y, "z": coords.z, "code_weight": weight})
    return rows
