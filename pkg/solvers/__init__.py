"""
Numerical back-ends: eigensolvers for the spectrum, master-equation integrators
and steady-state solvers, all registered in the solver factory.
"""

from .eigensolvers import SectorEigenSolver, DenseEigenSolver
from .evolution import AdaptiveLindbladSolver, PropagatorLindbladSolver, lindblad_rhs, evolve_ket
from .steady import LiouvillianNullSolver, LongTimeSolver, liouvillian
