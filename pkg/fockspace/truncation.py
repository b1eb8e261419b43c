"""Truncation heuristics and dimension-doubling convergence checks."""

import logging
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from utilities.exceptions import TruncationError
from utilities.typehints import FockSpace

logger = logging.getLogger(__name__)

# Photon-number budget: the mean photon content must stay below dim / SAFETY_FACTOR
SAFETY_FACTOR = 9


def default_space(alpha_sq: float = 0.0, sinh_sq: float = 0.0) -> FockSpace:
    """Default truncation max(60, ceil(9 (|alpha|^2 + sinh^2 r + 10)))"""
    return FockSpace(max(60, int(math.ceil(SAFETY_FACTOR * (alpha_sq + sinh_sq + 10)))))


def require_photons(space: FockSpace, photons: float, what: str) -> None:
    """Raise when a state with this mean photon number does not fit the truncation"""
    if photons > space.dim / SAFETY_FACTOR:
        raise TruncationError(
            f"{what} needs about {photons:.3g} photons but dim={space.dim} allows {space.dim / SAFETY_FACTOR:.3g}; "
            f"use dim >= {int(math.ceil(SAFETY_FACTOR * photons))}")


@dataclass(frozen=True)
class ConvergenceReport:
    """Outcome of one truncation convergence check"""

    # Dimension the quantity was first computed on
    dim: int
    # Enlarged dimension it was recomputed on
    compared_dim: int
    # Largest absolute change between the two
    deviation: float
    # Change below which the truncation counts as converged
    tolerance: float

    # Converged when the change stays under the tolerance
    @property
    def converged(self) -> bool:
        return self.deviation < self.tolerance


def check_convergence(quantity: Callable[[FockSpace], np.ndarray | float], space: FockSpace,
                      tolerance: float, extra: int | None = None) -> ConvergenceReport:
    """Recompute a quantity on an enlarged space and report how far it moved.

    By default the dimension is doubled; pass ``extra`` to add a fixed number of levels instead.
    """
    larger = space.doubled() if extra is None else space.enlarged(extra)
    reference = np.atleast_1d(np.asarray(quantity(space)))
    enlarged = np.atleast_1d(np.asarray(quantity(larger)))
    deviation = float(np.max(np.abs(reference - enlarged)))
    logger.debug("truncation check dim %d -> %d: deviation %.3e", space.dim, larger.dim, deviation)
    return ConvergenceReport(space.dim, larger.dim, deviation, tolerance)
