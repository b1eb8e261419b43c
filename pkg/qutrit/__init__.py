"""
Qutrit encoded in the three cat states: ladder-operator transitions, leakage, dephasing,
logical operators and Gell-Mann coordinates.
"""

from .transitions import (
    ladder_action_on_zeta, excited_sector_states, leg_overlaps, transition_table, dephasing_elements,
)
from .logical import cyclic_shift, logical_operators, gell_mann, qutrit_coords, code_space_density, qutrit_trajectory
