from .solver_factory import SolverFactory
