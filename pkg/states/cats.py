"""Three-legged squeezed cat states and their normalization factors."""

import logging
import math

import numpy as np

from fockspace.operators import project_onto_sector
from states.gaussian_frame import squeezed_coherent_kets
from states.overlaps import overlap_squeezed_coherent
from utilities.exceptions import ParameterError
from utilities.typehints import CatBasis, CatOverlap, FockSpace, ModelParams, StateVector

logger = logging.getLogger(__name__)


def cat_norms(overlap: CatOverlap) -> np.ndarray:
    """N_k = [3 (1 + 2A cos(Theta - 2 pi k / 3))]^{-1/2}"""
    k = np.arange(3)
    return (3 * (1 + 2 * overlap.A * np.cos(overlap.Theta - 2 * np.pi * k / 3))) ** -0.5


def cat_states(p: ModelParams, space: FockSpace) -> CatBasis:
    """|C_k> = 3 N_k Pi_k |zeta_0>"""
    zeta_0 = squeezed_coherent_kets(p, space)[0]
    overlap = overlap_squeezed_coherent(p)
    norms = cat_norms(overlap)

    cats = []
    numeric_norms = np.zeros(3)
    for k in range(3):
        projected = project_onto_sector(zeta_0, k)
        numeric_norms[k] = 1.0 / (3.0 * projected.norm())
        cats.append(projected.normalized())
    deviation = float(np.max(np.abs(numeric_norms - norms)))
    logger.debug("cat normalizations: closed form %s, numeric %s (max dev %.2e)", norms, numeric_norms, deviation)
    return CatBasis(cats=tuple(cats), norms=norms, overlap=overlap, numeric_norms=numeric_norms)


def cat_from_legs(basis: CatBasis, legs: tuple[StateVector, ...], k: int) -> StateVector:
    """N_k sum_j e^{-i 2 pi j k / 3} |zeta_j>"""
    amplitudes = sum(np.exp(-2j * np.pi * j * k / 3) * legs[j].amplitudes for j in range(3))
    return StateVector(basis.norms[k] * amplitudes)


def legs_from_cats(basis: CatBasis, j: int) -> StateVector:
    """(1 / sqrt 3) sum_k e^{i 2 pi j k / 3} |C_k>, close to |zeta_j> up to corrections of order A"""
    amplitudes = sum(np.exp(2j * np.pi * j * k / 3) * basis.cats[k].amplitudes for k in range(3))
    return StateVector(amplitudes / math.sqrt(3))


def cat_expansion_residuals(p: ModelParams, space: FockSpace) -> dict[str, np.ndarray]:
    """Residuals of the leg expansion of every cat and of the inverse relations"""
    basis = cat_states(p, space)
    legs = squeezed_coherent_kets(p, space)
    forward = np.array([(cat_from_legs(basis, legs, k) - basis.cats[k]).norm() for k in range(3)])
    inverse = np.array([(legs_from_cats(basis, j) - legs[j]).norm() for j in range(3)])
    return {"forward": forward, "inverse": inverse}


def norm_ratio_approximations(p: ModelParams) -> dict[str, tuple[float, float]]:
    """Exact normalization ratios next to their first-order expansions in A"""
    overlap = overlap_squeezed_coherent(p)
    norms = cat_norms(overlap)
    a, theta = overlap.A, overlap.Theta
    root3 = math.sqrt(3)
    return {
        "N0/N2": (norms[0] / norms[2], 1 - root3 / 2 * (root3 * math.cos(theta) + math.sin(theta)) * a),
        "N1/N0": (norms[1] / norms[0], 1 + root3 / 2 * (root3 * math.cos(theta) - math.sin(theta)) * a),
        "N2/N1": (norms[2] / norms[1], 1 + root3 * math.sin(theta) * a),
    }


def small_pump_cat_limit(k: int, r: float, space: FockSpace) -> StateVector:
    """Vanishing-pump limit of |C_k> at zero detuning: a squeezed-vacuum series on |2n>.

    c_{n,k} = [1 + 2 cos(4 pi (n + k) / 3)] tanh(r)^n sqrt((2n)!) / (2^n n!)
    """
    if k not in (0, 1, 2):
        raise ParameterError(f"sector must be 0, 1 or 2, got {k}")
    amplitudes = np.zeros(space.dim, dtype=complex)
    t = math.tanh(r)
    for n in range(0, (space.dim + 1) // 2):
        weight = round(1 + 2 * math.cos(4 * math.pi * (n + k) / 3))
        log_shape = 0.5 * math.lgamma(2 * n + 1) - n * math.log(2) - math.lgamma(n + 1)
        amplitudes[2 * n] = weight * t ** n * math.exp(log_shape)
    # The prefactor N_k / sqrt(cosh r) only fixes the norm
    return StateVector(amplitudes).normalized()
