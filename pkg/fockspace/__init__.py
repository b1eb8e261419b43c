"""
Truncated Fock-space substrate: operators, Gaussian unitaries, Wigner functions and truncation checks.
"""

from .operators import (
    annihilation_op, creation_op, number_op, z3_rotation, sector_indices, sector_projector,
    project_onto_sector, basis_state, coherent_state,
)
from .gaussian import displacement_op, squeeze_op, displaced_squeezed_number_state
from .phasespace import (
    wigner, wigner_grid, integrate_grid, quadrature_marginals, local_maxima, fidelity, trace_distance,
)
from .truncation import default_space, require_photons, check_convergence, ConvergenceReport
