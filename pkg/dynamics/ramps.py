"""Adiabatic preparation of the cat states by ramping the pump from zero."""

import logging
from typing import Callable, Optional

import numpy as np

from dynamics.lindblad import evolve_master_equation
from fockspace.operators import annihilation_op, basis_state
from fockspace.phasespace import fidelity
from solvers.evolution import evolve_ket
from spectrum.analysis import spectrum
from spectrum.hamiltonian import hamiltonian_terms
from states.exact import exact_ground_state
from utilities.exceptions import ParameterError
from utilities.typehints import (
    DensityMatrix,
    FockSpace,
    LindbladSpec,
    ModelParams,
    PreparationResult,
    RampKind,
    RampSpec,
    StateVector,
)

logger = logging.getLogger(__name__)


def cubic_ramp(p: ModelParams, ramp_time: float) -> RampSpec:
    """Smoothstep ramp of the pump and, when it is nonzero, of the detuning towards p"""
    return RampSpec(RampKind.SMOOTHSTEP_CUBIC, target_pump=p.pump, ramp_time=ramp_time,
                    also_ramp_detuning=p.delta != 0, target_detuning=p.delta)


# Parameters reached at the end of the ramp
def final_params(p: ModelParams, ramp: RampSpec) -> ModelParams:
    delta = ramp.target_detuning if ramp.also_ramp_detuning else p.delta
    return p.with_changes(pump=ramp.target_pump, delta=delta)


def ramped_hamiltonian(p: ModelParams, ramp: RampSpec, space: FockSpace,
                       detuning: Optional[Callable[[float], float]] = None) -> Callable[[float], np.ndarray]:
    """H(t) with G(t) = G s(t) and, if requested, Delta(t) = Delta s(t) or a custom detuning profile"""
    # Fixed operator pieces, rescaled at every call
    number, kerr, pump = hamiltonian_terms(space)
    static = -p.kerr * kerr

    def hamiltonian(t: float) -> np.ndarray:
        envelope = ramp.envelope(t)
        if detuning is not None:
            delta = detuning(t)
        elif ramp.also_ramp_detuning:
            delta = ramp.target_detuning * envelope
        else:
            delta = p.delta
        return static - delta * number + ramp.target_pump * envelope * pump

    return hamiltonian


# Highest quasi-energy eigenstate of each sector, the numerically exact cats
def numerical_cats(p: ModelParams, space: FockSpace) -> tuple[StateVector, StateVector, StateVector]:
    result = spectrum(p, space)
    return tuple(result.top_of_sector(k) for k in range(3))


def adiabatic_prepare(p: ModelParams, k: int, ramp: RampSpec, space: FockSpace,
                      points: int = 2) -> PreparationResult:
    """Evolve |k> under the ramped Hamiltonian (with single-photon loss when kappa > 0).

    Populations are measured on the numerically exact cats at the final parameters.
    """
    if k not in (0, 1, 2):
        raise ParameterError(f"initial Fock level must be 0, 1 or 2, got {k}")
    hamiltonian = ramped_hamiltonian(p, ramp, space)
    times = np.linspace(0.0, ramp.duration, max(points, 2))
    psi0 = basis_state(space, k)

    # Lossless: evolve the ket directly
    if p.kappa == 0:
        psi = evolve_ket(hamiltonian, psi0, times)[-1]
        rho_final = DensityMatrix(np.outer(psi.amplitudes, psi.amplitudes.conj()) / psi.norm() ** 2)
    else:
        spec = LindbladSpec(hamiltonian, ((annihilation_op(space), p.kappa),), dim=space.dim)
        series = evolve_master_equation(spec, psi0.projector(), times)
        rho_final = series.states[-1]

    # Project onto the cats of the final Hamiltonian
    cats = numerical_cats(final_params(p, ramp), space)
    populations = np.array([rho_final.population(cat) for cat in cats])
    logger.info("ramp %s t_r=%.3g from |%d>: cat populations %s", ramp.kind.value, ramp.ramp_time, k,
                np.array2string(populations, precision=4))
    return PreparationResult(rho_final=rho_final, populations=populations)


def degeneracy_line_fidelities(g: float, ramp_time: float, space: FockSpace, kerr: float = 1.0) -> np.ndarray:
    """Fidelity of |k> ramped along Delta(t) = G(t)^2 / U with the closed-form ground states.

    The pump follows G(t) = G (1 - exp(-(t / tau)^4)).
    """
    target = ModelParams(delta=kerr * g ** 2, pump=kerr * g, kerr=kerr)
    ramp = RampSpec(RampKind.QUARTIC_EXPONENTIAL, target_pump=target.pump, ramp_time=ramp_time)
    hamiltonian = ramped_hamiltonian(target, ramp, space,
                                     detuning=lambda t: (target.pump * ramp.envelope(t)) ** 2 / kerr)
    times = np.array([0.0, ramp.duration])
    fidelities = np.zeros(3)
    # One ramp per initial Fock level
    for k in range(3):
        psi = evolve_ket(hamiltonian, basis_state(space, k), times)[-1]
        fidelities[k] = fidelity(psi.normalized(), exact_ground_state(g, k, space))
    return fidelities
