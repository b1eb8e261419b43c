import logging
from typing import Callable, Mapping, Optional, Sequence

import numpy as np
from scipy.integrate import DOP853, solve_ivp
from scipy.linalg import expm

from solvers.steady import liouvillian
from utilities import (
    DEFAULT_TOLERANCES,
    DensityMatrix,
    IEvolutionSolver,
    LindbladSpec,
    OperatorMatrix,
    ParameterError,
    StateVector,
    StiffnessError,
    TimeSeries,
    hermitize,
)

logger = logging.getLogger(__name__)

Observable = OperatorMatrix | StateVector


def lindblad_rhs(hamiltonian: np.ndarray, jumps: Sequence[tuple[np.ndarray, np.ndarray]],
                 rho: np.ndarray) -> np.ndarray:
    """-i[H, rho] + sum_j (L_j rho L_j^dag - 1/2 {L_j^dag L_j, rho}) with the rates folded into L_j"""
    drho = -1j * (hamiltonian @ rho - rho @ hamiltonian)
    for jump, jump_dag_jump in jumps:
        drho += jump @ rho @ jump.conj().T - 0.5 * (jump_dag_jump @ rho + rho @ jump_dag_jump)
    return drho


def _weighted_jumps(spec: LindbladSpec) -> list[tuple[np.ndarray, np.ndarray]]:
    jumps = []
    for operator, rate in spec.jumps:
        if rate > 0.0:
            jump = np.sqrt(rate) * np.asarray(operator.entries)
            jumps.append((jump, jump.conj().T @ jump))
    return jumps


def _measure(rho: np.ndarray, observables: Mapping[str, Observable]) -> dict[str, float]:
    values = {"trace": float(np.trace(rho).real), "purity": float(np.real(np.vdot(rho, rho)))}
    for name, observable in observables.items():
        if isinstance(observable, StateVector):
            vector = observable.amplitudes
            values[name] = float(np.real(np.vdot(vector, rho @ vector)))
        else:
            values[name] = float(np.real(np.trace(rho @ observable.entries)))
    return values


def _series(times: np.ndarray, samples: list[np.ndarray], observables: Mapping[str, Observable],
            store_states: bool) -> TimeSeries:
    measured = [_measure(rho, observables) for rho in samples]
    channels = {name: np.array([row[name] for row in measured]) for name in measured[0]}
    states = None
    if store_states:
        states = [DensityMatrix(rho / np.trace(rho).real) for rho in samples]
    return TimeSeries(times, channels, states)


class AdaptiveLindbladSolver(IEvolutionSolver):
    """Embedded 8(5,3) Runge-Kutta stepping of the master equation with dense output"""

    def __init__(self, rtol: float = DEFAULT_TOLERANCES.integrator_rtol,
                 atol: float = DEFAULT_TOLERANCES.integrator_atol,
                 min_step: float = DEFAULT_TOLERANCES.min_step,
                 observables: Optional[Mapping[str, Observable]] = None,
                 store_states: bool = True):
        self.rtol = rtol
        self.atol = atol
        self.min_step = min_step
        self.observables = dict(observables or {})
        self.store_states = store_states

    @staticmethod
    def get_solver_name() -> str:
        return 'Adaptive Lindblad Integrator'

    def solve(self, spec: LindbladSpec, rho0: DensityMatrix, times: Sequence[float] | np.ndarray) -> TimeSeries:
        times = np.asarray(times, dtype=float)
        if times.size == 0 or np.any(np.diff(times) <= 0):
            raise ParameterError("evolution times must be a non-empty strictly increasing sequence")
        dim = spec.dim
        jumps = _weighted_jumps(spec)

        def rhs(t: float, y: np.ndarray) -> np.ndarray:
            rho = y.reshape(dim, dim)
            return lindblad_rhs(spec.hamiltonian_at(t), jumps, rho).reshape(-1)

        samples = [np.array(rho0.entries)]
        if times.size == 1:
            return _series(times, samples, self.observables, self.store_states)

        integrator = DOP853(rhs, times[0], np.array(rho0.entries).reshape(-1), times[-1],
                            rtol=self.rtol, atol=self.atol)
        next_sample = 1
        steps = 0
        while next_sample < times.size:
            message = integrator.step()
            steps += 1
            if integrator.status == "failed":
                raise StiffnessError(f"integrator failed at t={integrator.t:.6g}: {message}")
            if integrator.status == "running" and integrator.step_size < self.min_step:
                raise StiffnessError(
                    f"step size collapsed to {integrator.step_size:.3e} at t={integrator.t:.6g}")

            interpolant = integrator.dense_output()
            while next_sample < times.size and times[next_sample] <= integrator.t:
                samples.append(hermitize(interpolant(times[next_sample]).reshape(dim, dim)))
                next_sample += 1

        logger.debug("adaptive Lindblad run: dim %d, %d steps, t_end %.4g", dim, steps, times[-1])
        return _series(times, samples, self.observables, self.store_states)


class PropagatorLindbladSolver(IEvolutionSolver):
    """Exact exponentiation of a time-independent Liouvillian between sample times"""

    def __init__(self, observables: Optional[Mapping[str, Observable]] = None, store_states: bool = True):
        self.observables = dict(observables or {})
        self.store_states = store_states

    @staticmethod
    def get_solver_name() -> str:
        return 'Liouvillian Propagator'

    def solve(self, spec: LindbladSpec, rho0: DensityMatrix, times: Sequence[float] | np.ndarray) -> TimeSeries:
        if spec.time_dependent:
            raise ParameterError("the propagator method requires a time-independent Hamiltonian")
        times = np.asarray(times, dtype=float)
        if times.size == 0 or np.any(np.diff(times) <= 0):
            raise ParameterError("evolution times must be a non-empty strictly increasing sequence")
        dim = spec.dim
        generator = liouvillian(spec).toarray()

        propagators: dict[float, np.ndarray] = {}
        state = np.array(rho0.entries).reshape(-1)
        samples = [state.reshape(dim, dim)]
        for step in np.diff(times):
            # Uniform grids reuse a single propagator
            key = round(float(step), 12)
            if key not in propagators:
                propagators[key] = expm(generator * step)
            state = propagators[key] @ state
            samples.append(hermitize(state.reshape(dim, dim)))
        return _series(times, samples, self.observables, self.store_states)


def evolve_ket(hamiltonian: Callable[[float], np.ndarray], psi0: StateVector, times: Sequence[float] | np.ndarray,
               rtol: float = DEFAULT_TOLERANCES.integrator_rtol,
               atol: float = DEFAULT_TOLERANCES.integrator_atol) -> list[StateVector]:
    """Schrodinger evolution d|psi>/dt = -i H(t) |psi> sampled at the requested times"""
    times = np.asarray(times, dtype=float)
    solution = solve_ivp(lambda t, y: -1j * (hamiltonian(t) @ y), (times[0], times[-1]),
                         np.array(psi0.amplitudes), method="DOP853", t_eval=times, rtol=rtol, atol=atol)
    if not solution.success:
        raise StiffnessError(f"ket evolution failed: {solution.message}")
    return [StateVector(solution.y[:, i]) for i in range(times.size)]
