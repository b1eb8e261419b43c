from typing import Callable, Dict, Optional

import numpy as np

from fockspace.truncation import check_convergence
from utilities import (
    DEFAULT_TOLERANCES,
    ICheck,
    DensityMatrix,
    FockSpace,
    OperatorMatrix,
    StateVector,
    StructureError,
    TruncationError,
)

"""
Structural checks
"""


class HermiticityCheck(ICheck):
    """Check 1: the operator equals its adjoint"""

    name = 'hermiticity'

    def __init__(self, tolerance: float = DEFAULT_TOLERANCES.hermitian):
        self.tolerance = tolerance

    def evaluate(self, subject: OperatorMatrix) -> float:
        entries = subject.entries
        scale = max(1.0, float(np.max(np.abs(entries))))
        return float(np.max(np.abs(entries - entries.conj().T))) / scale

    def verify(self, subject: OperatorMatrix) -> None:
        deviation = self.evaluate(subject)
        if deviation > self.tolerance:
            raise StructureError(f"operator is not Hermitian (relative deviation {deviation:.3e})")


class UnitarityCheck(ICheck):
    """
    Check 2:
    U^dagger U equals the identity on the interior block; the top guard band
    absorbs the truncation error of exponentiated generators.
    """

    name = 'unitarity'

    def __init__(self, tolerance: float = DEFAULT_TOLERANCES.unitary):
        self.tolerance = tolerance

    def evaluate(self, subject: OperatorMatrix) -> float:
        interior = FockSpace(subject.dim).interior
        product = subject.entries.conj().T @ subject.entries
        block = product[:interior, :interior]
        return float(np.max(np.abs(block - np.eye(interior))))

    def verify(self, subject: OperatorMatrix) -> None:
        deviation = self.evaluate(subject)
        if deviation > self.tolerance:
            raise TruncationError(f"operator is not unitary on the interior block (deviation {deviation:.3e})")


class DensityMatrixCheck(ICheck):
    """Check 3: Hermitian, unit trace and positive semidefinite"""

    name = 'density_matrix'

    def evaluate(self, subject: np.ndarray) -> float:
        rho = np.asarray(subject)
        hermitian = float(np.max(np.abs(rho - rho.conj().T)))
        trace = abs(float(np.trace(rho).real) - 1.0)
        negativity = max(0.0, -float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0]))
        return max(hermitian, trace, negativity)

    def verify(self, subject: np.ndarray) -> None:
        # DensityMatrix construction performs the full validation and raises InvalidDensityMatrix
        DensityMatrix(np.asarray(subject))


class SectorSupportCheck(ICheck):
    """Check 4: a state lives in a single n mod 3 sector"""

    name = 'sector_support'

    def __init__(self, sector: int, tolerance: float = 1e-10):
        self.sector = sector
        self.tolerance = tolerance

    def evaluate(self, subject: StateVector) -> float:
        levels = np.arange(subject.dim)
        outside = subject.amplitudes[levels % 3 != self.sector]
        return float(np.linalg.norm(outside))

    def verify(self, subject: StateVector) -> None:
        leak = self.evaluate(subject)
        if leak > self.tolerance:
            raise StructureError(f"state leaks {leak:.3e} outside sector {self.sector}")


class TruncationConvergenceCheck(ICheck):
    """
    Check 5:
    A quantity computed on the working space moves by less than the tolerance
    when the space is enlarged.
    """

    name = 'truncation_convergence'

    def __init__(self, quantity: Callable[[FockSpace], np.ndarray | float], tolerance: float,
                 extra: Optional[int] = None):
        self.quantity = quantity
        self.tolerance = tolerance
        self.extra = extra

    def evaluate(self, subject: FockSpace) -> float:
        return check_convergence(self.quantity, subject, self.tolerance, self.extra).deviation

    def verify(self, subject: FockSpace) -> None:
        deviation = self.evaluate(subject)
        if deviation >= self.tolerance:
            raise TruncationError(f"quantity moved by {deviation:.3e} when enlarging dim={subject.dim}")


check_map: Dict[str, type] = {
    'hermiticity': HermiticityCheck,
    'unitarity': UnitarityCheck,
    'density_matrix': DensityMatrixCheck,
    'sector_support': SectorSupportCheck,
    'truncation_convergence': TruncationConvergenceCheck,
}
