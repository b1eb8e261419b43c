"""Single-photon and dephasing matrix elements between three-legged cats, closed form and brute force."""

import logging
import math

import numpy as np

from fockspace.operators import annihilation_op, number_op, project_onto_sector
from states.cats import cat_norms, cat_states
from states.gaussian_frame import squeezed_coherent_kets, squeezing_parameter
from states.overlaps import number_state_overlaps, overlap_matrices, overlap_squeezed_coherent
from utilities.exceptions import ParameterError, TruncationError
from utilities.typehints import (
    FockSpace,
    ModelParams,
    StateVector,
    TransitionComparison,
    TransitionTable,
)

logger = logging.getLogger(__name__)

# Residual allowed in the two-term ladder decomposition
DECOMPOSITION_TOLERANCE = 1e-8


def ladder_action_on_zeta(p: ModelParams, space: FockSpace) -> dict[str, np.ndarray | float]:
    """Coefficients of a|zeta_k> and a^dagger|zeta_k> on {|zeta_k>, |zeta_k, 1>} with the residual of the expansion"""
    triple = squeezing_parameter(p)
    vacua = squeezed_coherent_kets(p, space)
    singles = squeezed_coherent_kets(p, space, n=1)
    a = annihilation_op(space)
    c, s = math.cosh(triple[0].r), math.sinh(triple[0].r)

    a_diag = np.array([g.alpha for g in triple])
    a_leak = np.array([-np.exp(1j * g.theta) * s for g in triple])
    adag_diag = a_diag.conj()
    adag_leak = np.full(3, c, dtype=complex)

    residual = 0.0
    for k in range(3):
        lowered = a.apply(vacua[k]).amplitudes
        raised = a.adjoint().apply(vacua[k]).amplitudes
        expected_lowered = a_diag[k] * vacua[k].amplitudes + a_leak[k] * singles[k].amplitudes
        expected_raised = adag_diag[k] * vacua[k].amplitudes + adag_leak[k] * singles[k].amplitudes
        residual = max(residual, float(np.linalg.norm(lowered - expected_lowered)),
                       float(np.linalg.norm(raised - expected_raised)))
    if residual > DECOMPOSITION_TOLERANCE:
        raise TruncationError(f"ladder decomposition residual {residual:.3e} at dim={space.dim}; enlarge the space")
    return {"a_diag": a_diag, "a_leak": a_leak, "adag_diag": adag_diag, "adag_leak": adag_leak,
            "residual": residual}


def excited_sector_states(p: ModelParams, space: FockSpace) -> tuple[StateVector, StateVector, StateVector]:
    """Sector projections of D(alpha_0) S(xi_0)|1>, normalized"""
    single = squeezed_coherent_kets(p, space, n=1)[0]
    return tuple(project_onto_sector(single, k).normalized() for k in range(3))


def leg_overlaps(p: ModelParams, k: int, l: int) -> dict[str, complex]:
    """<zeta_k|zeta_l>, <zeta_k,1|zeta_l>, <zeta_k|zeta_l,1> and <zeta_k,1|zeta_l,1>"""
    if k not in (0, 1, 2) or l not in (0, 1, 2):
        raise ParameterError(f"leg indices must be 0, 1 or 2, got ({k}, {l})")
    triple = squeezing_parameter(p)
    return number_state_overlaps(triple[k], triple[l])


def _sector_weight(row: np.ndarray, m: int) -> complex:
    # <x|Pi_m|zeta_0, 1> = (1/3) sum_j e^{-i 2 pi j (m - 1) / 3} <x|zeta_j, 1>
    return complex(sum(np.exp(-2j * np.pi * j * (m - 1) / 3) * row[j] for j in range(3)) / 3)


def _closed_form_table(p: ModelParams) -> TransitionTable:
    triple = squeezing_parameter(p)
    magnitude, r = triple[0].alpha_mag, triple[0].r
    c, s = math.cosh(r), math.sinh(r)
    norms = cat_norms(overlap_squeezed_coherent(p))
    matrices = overlap_matrices(triple)
    vac_single = matrices["s01"][0]
    single_single = matrices["s11"][0]

    a_elems = np.zeros((3, 3), dtype=complex)
    adag_elems = np.zeros((3, 3), dtype=complex)
    leak_a = np.zeros(3, dtype=complex)
    leak_adag = np.zeros(3, dtype=complex)
    for k in range(3):
        lower, upper = (k - 1) % 3, (k + 1) % 3
        a_elems[lower, k] = (magnitude * norms[k] / norms[lower]
                             + 9 * s * norms[k] * norms[lower] * _sector_weight(vac_single, lower))
        adag_elems[upper, k] = (magnitude * norms[k] / norms[upper]
                                + 9 * c * norms[k] * norms[upper] * _sector_weight(vac_single, upper))
        leak_a[k] = 3 * s * norms[k] * math.sqrt(_sector_weight(single_single, lower).real)
        leak_adag[k] = 3 * c * norms[k] * math.sqrt(_sector_weight(single_single, upper).real)
    return TransitionTable(a_elems=a_elems, adag_elems=adag_elems, leak_a=leak_a, leak_adag=leak_adag)


def _numerical_table(p: ModelParams, space: FockSpace) -> TransitionTable:
    cats = cat_states(p, space).cats
    excited = excited_sector_states(p, space)
    a = annihilation_op(space)
    adag = a.adjoint()
    a_elems = np.array([[cats[l].inner(a.apply(cats[k])) for k in range(3)] for l in range(3)])
    adag_elems = np.array([[cats[l].inner(adag.apply(cats[k])) for k in range(3)] for l in range(3)])

    leak_a = np.zeros(3, dtype=complex)
    leak_adag = np.zeros(3, dtype=complex)
    for k in range(3):
        for operator, target, leak in ((a, (k - 1) % 3, leak_a), (adag, (k + 1) % 3, leak_adag)):
            # Least-squares coefficients of O|C_k> on the non-orthogonal pair {|C_m>, |psi_m>}
            columns = np.column_stack([cats[target].amplitudes, excited[target].amplitudes])
            coefficients, *_ = np.linalg.lstsq(columns, operator.apply(cats[k]).amplitudes, rcond=None)
            leak[k] = coefficients[1]
    return TransitionTable(a_elems=a_elems, adag_elems=adag_elems, leak_a=leak_a, leak_adag=leak_adag)


def transition_table(p: ModelParams, space: FockSpace) -> TransitionComparison:
    comparison = TransitionComparison(closed_form=_closed_form_table(p), numerical=_numerical_table(p, space))
    logger.info("transition table at Delta=%g G=%g: closed form vs Fock space deviation %.3e",
                p.delta, p.pump, comparison.max_deviation)
    return comparison


def dephasing_elements(p: ModelParams, space: FockSpace) -> dict[str, np.ndarray | float]:
    """<C_k|n|C_l>: closed-form and numerical diagonals with the largest off-diagonal magnitude"""
    triple = squeezing_parameter(p)
    magnitude, s = triple[0].alpha_mag, math.sinh(triple[0].r)
    norms = cat_norms(overlap_squeezed_coherent(p))
    matrices = overlap_matrices(triple)

    closed = np.zeros(3)
    for k in range(3):
        lower = (k - 1) % 3
        closed[k] = ((norms[k] / norms[lower]) ** 2 * magnitude ** 2
                     + 9 * s ** 2 * norms[k] ** 2 * _sector_weight(matrices["s11"][0], lower).real
                     + 18 * magnitude * s * norms[k] ** 2 * _sector_weight(matrices["s01"][0], lower).real)

    cats = cat_states(p, space).cats
    n_op = number_op(space)
    elements = np.array([[cats[l].inner(n_op.apply(cats[k])) for k in range(3)] for l in range(3)])
    offdiag = float(np.max(np.abs(elements - np.diag(np.diag(elements)))))
    return {"diag": closed, "diag_numerical": np.real(np.diag(elements)), "offdiag_max": offdiag}
