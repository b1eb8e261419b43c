"""
Semiclassical meta-potential analysis: stationary points, thresholds and the phase diagram.
"""

from .potential import meta_potential, ray_potential, gradient, hessian, stationarity_residual, potential_grid
from .stationary import (
    discriminant, stationary_amplitudes, classify_point, classify_stationary_points, energy_barrier,
)
from .phase import thresholds, classify_phase, count_maxima, count_grid_maxima, phase_diagram, threshold_curves
