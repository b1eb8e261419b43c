import logging

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import eigs, expm_multiply, splu

from utilities import (
    DEFAULT_TOLERANCES,
    DegenerateSteadyState,
    DensityMatrix,
    InvalidDensityMatrix,
    ISteadyStateSolver,
    LindbladSpec,
    hermitize,
    trace_distance,
)

logger = logging.getLogger(__name__)

# Largest Hilbert-space dimension handled by the direct sparse LU path
DIRECT_LIMIT = 80


def liouvillian(spec: LindbladSpec, t: float = 0.0) -> sp.csc_matrix:
    """Vectorized generator acting on row-major vec(rho).

    L = -i (H x I - I x H^T) + sum_j gamma_j (L_j x L_j^* - 1/2 L_j^dag L_j x I - 1/2 I x (L_j^dag L_j)^T)
    """
    dim = spec.dim
    identity = sp.identity(dim, dtype=complex, format="csr")
    h = sp.csr_matrix(spec.hamiltonian_at(t))
    generator = -1j * (sp.kron(h, identity) - sp.kron(identity, h.T))
    for operator, rate in spec.jumps:
        if rate == 0.0:
            continue
        jump = sp.csr_matrix(np.asarray(operator.entries))
        jump_dag_jump = (jump.conj().T @ jump).tocsr()
        generator = generator + rate * (
            sp.kron(jump, jump.conj())
            - 0.5 * sp.kron(jump_dag_jump, identity)
            - 0.5 * sp.kron(identity, jump_dag_jump.T)
        )
    return sp.csc_matrix(generator)


def _as_density(vector: np.ndarray, dim: int) -> DensityMatrix:
    rho = hermitize(vector.reshape(dim, dim))
    trace = np.trace(rho).real
    if abs(trace) < 1e-14:
        raise DegenerateSteadyState("steady-state vector has vanishing trace")
    try:
        return DensityMatrix(rho / trace)
    except InvalidDensityMatrix as error:
        raise DegenerateSteadyState(f"steady-state vector is not a valid state: {error}") from error


class LiouvillianNullSolver(ISteadyStateSolver):
    """Null vector of the Liouvillian with one row replaced by the trace constraint"""

    def __init__(self, direct_limit: int = DIRECT_LIMIT, degeneracy_tol: float = 1e-10):
        self.direct_limit = direct_limit
        self.degeneracy_tol = degeneracy_tol

    @staticmethod
    def get_solver_name() -> str:
        return 'Liouvillian Null-Space Solver'

    def _direct(self, generator: sp.csc_matrix, dim: int) -> np.ndarray:
        # Replace the first equation by Tr rho = 1
        system = generator.tolil()
        system[0, :] = np.eye(dim).reshape(1, -1)
        rhs = np.zeros(dim * dim, dtype=complex)
        rhs[0] = 1.0
        try:
            factor = splu(sp.csc_matrix(system))
        except RuntimeError as error:
            raise DegenerateSteadyState(
                f"trace-constrained Liouvillian is singular; null space has dimension > 1 ({error})") from error
        return factor.solve(rhs)

    def _iterative(self, generator: sp.csc_matrix) -> np.ndarray:
        values, vectors = eigs(generator, k=2, sigma=0, which="LM")
        order = np.argsort(np.abs(values))
        scale = max(1.0, float(abs(generator).max()))
        if abs(values[order[1]]) < self.degeneracy_tol * scale:
            raise DegenerateSteadyState(
                f"Liouvillian has at least two near-zero eigenvalues: {values[order[0]]:.3e}, {values[order[1]]:.3e}")
        return vectors[:, order[0]]

    def solve(self, spec: LindbladSpec) -> DensityMatrix:
        if spec.time_dependent:
            raise DegenerateSteadyState("steady states require a time-independent Hamiltonian")
        if spec.total_rate <= 0.0:
            raise DegenerateSteadyState("without dissipation every Hamiltonian eigenstate is stationary")
        generator = liouvillian(spec)
        if spec.dim <= self.direct_limit:
            vector = self._direct(generator, spec.dim)
        else:
            vector = self._iterative(generator)
        residual = float(np.max(np.abs(generator @ vector)) / max(np.max(np.abs(vector)), 1e-300))
        logger.debug("null-space steady state for dim %d: residual %.3e", spec.dim, residual)
        return _as_density(vector, spec.dim)


class LongTimeSolver(ISteadyStateSolver):
    """Propagate the maximally mixed state with expm_multiply, doubling the horizon until it settles"""

    def __init__(self, tolerance: float = DEFAULT_TOLERANCES.steady_state_agreement, max_doublings: int = 12):
        self.tolerance = tolerance
        self.max_doublings = max_doublings

    @staticmethod
    def get_solver_name() -> str:
        return 'Long-Time Propagation Solver'

    def solve(self, spec: LindbladSpec) -> DensityMatrix:
        if spec.time_dependent:
            raise DegenerateSteadyState("steady states require a time-independent Hamiltonian")
        if spec.total_rate <= 0.0:
            raise DegenerateSteadyState("without dissipation the long-time limit does not settle")
        generator = liouvillian(spec)
        dim = spec.dim
        state = (np.eye(dim, dtype=complex) / dim).reshape(-1)
        horizon = 10.0 / spec.total_rate
        state = expm_multiply(generator * horizon, state)

        for doubling in range(self.max_doublings):
            advanced = expm_multiply(generator * horizon, state)
            change = trace_distance(state.reshape(dim, dim), advanced.reshape(dim, dim))
            logger.debug("long-time horizon %.3g: change %.3e", 2 * horizon, change)
            state = advanced
            if change < 0.1 * self.tolerance:
                return _as_density(state, dim)
            horizon *= 2.0
        raise DegenerateSteadyState(
            f"long-time propagation did not settle after {self.max_doublings} horizon doublings")
