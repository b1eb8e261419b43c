"""
Open-system dynamics: master-equation evolution, steady states, mean-field amplitudes,
adiabatic ramps, the reduced cat model and engineered dissipation.
"""

from .lindblad import (
    lindblad_spec, dark_state_dissipator, evolve_master_equation, steady_state, steady_state_comparison,
)
from .mean_field import (
    mean_field_residual, steady_state_photons, steady_state_phases, mean_field_stationary, steady_state_threshold,
    lossy_squeezing_parameter,
)
from .ramps import (
    cubic_ramp, final_params, ramped_hamiltonian, numerical_cats, adiabatic_prepare, degeneracy_line_fidelities,
)
from .reduced import (
    large_amplitude_transition_matrix, reduced_jump, reduced_cat_dynamics, decay_envelope_rate,
    analytic_cat_populations, cat_decay_time, one_over_e_time,
)
from .dissipation import (
    manifold_indices, engineered_dissipation_op, aligned_cats, superposition_decay, superposition_decay_rate,
    reduced_superposition_decay_time,
)
from utilities.metrics import decay_constant
