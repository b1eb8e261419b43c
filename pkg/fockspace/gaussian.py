"""Displacement and squeezing unitaries built by matrix exponential of truncated generators."""

import logging

import numpy as np
from scipy.linalg import expm

from fockspace.operators import annihilation_op, basis_state
from fockspace.truncation import require_photons
from utilities.exceptions import ParameterError
from utilities.typehints import FockSpace, OperatorMatrix, StateVector

logger = logging.getLogger(__name__)


def displacement_op(space: FockSpace, alpha: complex) -> OperatorMatrix:
    """D(alpha) = exp(alpha a^dagger - alpha^* a)"""
    require_photons(space, abs(alpha) ** 2, "displacement")
    a = annihilation_op(space).entries
    generator = alpha * a.conj().T - np.conj(alpha) * a
    return OperatorMatrix(expm(generator), unitary=True)


def squeeze_op(space: FockSpace, r: float, theta: float) -> OperatorMatrix:
    """S(xi) = exp((xi^* a^2 - xi a^dagger^2) / 2) with xi = r exp(i theta).

    A negative r is accepted and is the same operator as |r| with theta shifted by pi.
    """
    require_photons(space, np.sinh(r) ** 2, "squeezing")
    a = annihilation_op(space).entries
    xi = r * np.exp(1j * theta)
    generator = 0.5 * (np.conj(xi) * (a @ a) - xi * (a.conj().T @ a.conj().T))
    return OperatorMatrix(expm(generator), unitary=True)


# Fock state squeezed first, then displaced
def displaced_squeezed_number_state(space: FockSpace, alpha: complex, r: float, theta: float,
                                    n: int = 0) -> StateVector:
    if not 0 <= n < space.dim:
        raise ParameterError(f"Fock level {n} outside 0..{space.dim - 1}")
    # Mean photon number of the target state, used for the truncation guard
    photons = abs(alpha) ** 2 + (2 * n + 1) * np.sinh(r) ** 2 + n
    require_photons(space, photons, "displaced squeezed number state")

    # Apply S(xi) to |n> and then D(alpha)
    squeezed = squeeze_op(space, r, theta).apply(basis_state(space, n))
    return displacement_op(space, alpha).apply(squeezed).normalized()
