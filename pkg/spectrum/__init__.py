"""
Hamiltonian construction and spectral analysis: gaps, level crossings and sweeps.
"""

from .hamiltonian import build_hamiltonian, hamiltonian_terms, undriven_energies, degenerate_pairs
from .analysis import (
    diagonalize_by_sector, spectrum, excitation_gaps, ground_triplet, find_level_crossings, fit_gap_decay,
    spectrum_sweep,
)
