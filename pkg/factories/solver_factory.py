from typing import Dict, Type

from solvers import (
    SectorEigenSolver, DenseEigenSolver, AdaptiveLindbladSolver, PropagatorLindbladSolver,
    LiouvillianNullSolver, LongTimeSolver,
)
from utilities import BaseSolver


class SolverFactory:
    solvers: Dict[str, Type[BaseSolver]] = {
        'sector': SectorEigenSolver,
        'dense': DenseEigenSolver,
        'adaptive': AdaptiveLindbladSolver,
        'propagator': PropagatorLindbladSolver,
        'null-space': LiouvillianNullSolver,
        'long-time': LongTimeSolver,
    }

    @staticmethod
    def available() -> Dict[str, str]:
        return {key: solver_class.get_solver_name() for key, solver_class in SolverFactory.solvers.items()}

    @staticmethod
    def get_solver(name: str, **options) -> BaseSolver:
        if name not in SolverFactory.solvers:
            raise ValueError(f"Unknown solver: {name}")
        return SolverFactory.solvers[name](**options)
