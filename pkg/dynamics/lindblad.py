"""Master-equation set-up, time evolution and steady states of the driven lossy oscillator."""

import logging
from typing import Mapping, Optional, Sequence

import numpy as np

from factories.solver_factory import SolverFactory
from fockspace.operators import annihilation_op, creation_op
from spectrum.hamiltonian import build_hamiltonian
from utilities.exceptions import ParameterError
from utilities.functions import trace_distance
from utilities.typehints import (
    DEFAULT_TOLERANCES,
    DensityMatrix,
    FockSpace,
    LindbladSpec,
    ModelParams,
    OperatorMatrix,
    StateVector,
    SteadyStateComparison,
    TimeSeries,
)

logger = logging.getLogger(__name__)

STEADY_METHODS = ("null", "long-time", "both")


# Model Hamiltonian with single-photon loss at rate kappa plus any extra channels
def lindblad_spec(p: ModelParams, space: FockSpace,
                  extra_jumps: Sequence[tuple[OperatorMatrix, float]] = ()) -> LindbladSpec:
    jumps = [(annihilation_op(space), p.kappa)] + list(extra_jumps)
    return LindbladSpec(build_hamiltonian(p, space), tuple(jumps))


# Engineered two-photon jump whose dark states are the exact ground states on the degeneracy line
def dark_state_dissipator(p: ModelParams, space: FockSpace) -> OperatorMatrix:
    # a^2 - g a^dagger with g = G / U
    a = annihilation_op(space)
    return a @ a - creation_op(space) * p.g


def evolve_master_equation(spec: LindbladSpec, rho0: DensityMatrix, times: Sequence[float] | np.ndarray,
                           observables: Optional[Mapping[str, OperatorMatrix | StateVector]] = None,
                           method: str = "adaptive", store_states: bool = True) -> TimeSeries:
    """Integrate d rho / dt = -i[H, rho] + sum_j gamma_j D[L_j] rho and sample at the given times"""
    # Only the two master-equation integrators are valid here
    if method not in ("adaptive", "propagator"):
        raise ParameterError(f"unknown evolution method {method!r}")
    # Pick the integrator from the factory and forward the sampling options
    solver = SolverFactory.get_solver(method, observables=observables, store_states=store_states)
    logger.info("evolving dim %d with %s up to t=%.4g", spec.dim, solver.get_solver_name(), times[-1])
    return solver.solve(spec, rho0, times)


# Run both steady-state solvers and report how far apart they land
def steady_state_comparison(spec: LindbladSpec) -> SteadyStateComparison:
    null_space = SolverFactory.get_solver("null-space").solve(spec)
    long_time = SolverFactory.get_solver("long-time").solve(spec)
    distance = trace_distance(null_space.entries, long_time.entries)
    # A large distance usually means the long-time run has not converged
    if distance > DEFAULT_TOLERANCES.steady_state_agreement:
        logger.warning("steady-state methods disagree: trace distance %.3e", distance)
    return SteadyStateComparison(null_space=null_space, long_time=long_time, trace_distance=distance)


def steady_state(spec: LindbladSpec, method: str = "null") -> DensityMatrix:
    """Steady state from the Liouvillian null vector, long-time propagation, or both cross-checked"""
    if method not in STEADY_METHODS:
        raise ParameterError(f"steady-state method must be one of {STEADY_METHODS}, got {method!r}")
    # "both" cross-checks and returns the null-space answer
    if method == "both":
        return steady_state_comparison(spec).null_space
    solver = SolverFactory.get_solver("null-space" if method == "null" else "long-time")
    return solver.solve(spec)
