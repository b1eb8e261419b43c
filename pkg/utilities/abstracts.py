# Import the ABC base class and abstractmethod decorator for the solver interfaces
from abc import ABC, abstractmethod

# Import typing utilities for interfaces and optional arguments
from typing import Any, Protocol, Sequence

# Import numpy for time grids
import numpy as np

# Import the domain records every solver consumes or produces
from utilities.typehints import (
    DensityMatrix,
    FockSpace,
    LindbladSpec,
    OperatorMatrix,
    SpectrumResult,
    TimeSeries,
)


# Define an abstract base class for every numerical solver
# Each concrete solver reports its registry name and exposes a single solve entry point
class BaseSolver(ABC):
    """Abstract class for the numerical back-ends"""

    # Name used by the solver factory and in run manifests
    @staticmethod
    @abstractmethod
    def get_solver_name() -> str:
        """Get the name of the solver"""
        pass

    # Run the solver on its problem
    @abstractmethod
    def solve(self, *args: Any, **kwargs: Any) -> Any:
        """Solve the problem and return the result"""
        pass


# Eigensolvers turn a Hamiltonian into a sorted, sector-labelled spectrum
class IEigenSolver(BaseSolver):
    @abstractmethod
    def solve(self, hamiltonian: OperatorMatrix, space: FockSpace) -> SpectrumResult:
        """Diagonalize the Hamiltonian"""
        pass


# Evolution solvers propagate a density matrix under a master equation
class IEvolutionSolver(BaseSolver):
    @abstractmethod
    def solve(self, spec: LindbladSpec, rho0: DensityMatrix, times: Sequence[float] | np.ndarray) -> TimeSeries:
        """Evolve rho0 and sample the state at the requested times"""
        pass


# Steady-state solvers return the stationary density matrix of a master equation
class ISteadyStateSolver(BaseSolver):
    @abstractmethod
    def solve(self, spec: LindbladSpec) -> DensityMatrix:
        """Compute the steady state"""
        pass


# Define a Protocol for structural checks
# A check measures a deviation and raises when it exceeds its tolerance
class ICheck(Protocol):
    # Short identifier used in reports
    name: str

    # Return the measured deviation
    def evaluate(self, subject: Any) -> float:
        pass

    # Raise the check's error type when the deviation exceeds the tolerance
    def verify(self, subject: Any) -> None:
        pass
