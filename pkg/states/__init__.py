"""
Closed-form states: exact dark states, Airy wavefunctions, the Gaussian frame,
squeezed coherent overlaps and three-legged squeezed cats.
"""

from .exact import (
    exact_ground_state, dark_state_residual, normalization_series, normalization_closed_form,
    normalization_report, hermite_functions, fock_wavefunction, default_airy_grid, airy_wavefunctions,
    airy_superpositions,
)
from .gaussian_frame import (
    gaussian_frame_params, frame_params_closed_form, squeezing_ratio, squeezing_parameter, manifold_frequency,
    manifold_frequency_closed_form, absolute_level_energy, bound_level_count, squeezing_asymptotes,
    squeezed_coherent_kets,
)
from .overlaps import (
    overlap_squeezed_coherent, general_gaussian_overlap, number_state_overlaps, overlap_matrices,
    excited_overlap_modulus,
)
from .cats import (
    cat_norms, cat_states, cat_from_legs, legs_from_cats, cat_expansion_residuals, norm_ratio_approximations,
    small_pump_cat_limit,
)
