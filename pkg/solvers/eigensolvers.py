import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy.linalg import eigh

from utilities import IEigenSolver, OperatorMatrix, FockSpace, SpectrumResult, StructureError, sector_of

logger = logging.getLogger(__name__)


def _fix_phases(vectors: np.ndarray) -> np.ndarray:
    """Rotate every column so that its largest-magnitude amplitude is real and positive"""
    pivots = np.argmax(np.abs(vectors), axis=0)
    phases = vectors[pivots, np.arange(vectors.shape[1])]
    return vectors * (np.abs(phases) / phases)


def _sort_descending(energies: np.ndarray, sectors: np.ndarray, vectors: np.ndarray) -> SpectrumResult:
    # Highest quasi-energy first, ties broken by sector label
    order = np.lexsort((sectors, -energies))
    return SpectrumResult(energies[order], sectors[order], _fix_phases(vectors[:, order]))


class SectorEigenSolver(IEigenSolver):
    """Diagonalizes the three n mod 3 blocks independently and merges them"""

    def __init__(self, workers: int = 3):
        # Number of threads used for the three blocks
        self.workers = max(1, workers)

    @staticmethod
    def get_solver_name() -> str:
        return 'Sector-Blocked Eigensolver'

    @staticmethod
    def check_structure(hamiltonian: OperatorMatrix) -> None:
        # Any entry coupling different sectors breaks the Z3 symmetry
        levels = np.arange(hamiltonian.dim)
        crossing = (levels[:, None] - levels[None, :]) % 3 != 0
        leak = np.max(np.abs(hamiltonian.entries[crossing]), initial=0.0)
        if leak > 0.0:
            raise StructureError(f"Hamiltonian couples different Z3 sectors (max entry {leak:.3e})")

    def _diagonalize_block(self, entries: np.ndarray, k: int):
        index = np.arange(k, entries.shape[0], 3)
        block = entries[np.ix_(index, index)]
        values, block_vectors = eigh(block)
        vectors = np.zeros((entries.shape[0], index.size), dtype=complex)
        vectors[index, :] = block_vectors
        return values, np.full(index.size, k), vectors

    def solve(self, hamiltonian: OperatorMatrix, space: FockSpace) -> SpectrumResult:
        if hamiltonian.dim != space.dim:
            raise StructureError(f"Hamiltonian dim {hamiltonian.dim} does not match space dim {space.dim}")
        self.check_structure(hamiltonian)
        entries = np.asarray(hamiltonian.entries)

        with ThreadPoolExecutor(max_workers=self.workers) as executor:
            blocks = list(executor.map(lambda k: self._diagonalize_block(entries, k), range(3)))

        energies = np.concatenate([block[0] for block in blocks])
        sectors = np.concatenate([block[1] for block in blocks])
        vectors = np.hstack([block[2] for block in blocks])
        logger.debug("sector-blocked diagonalization of dim %d (block sizes %s)",
                     space.dim, [block[0].size for block in blocks])
        return _sort_descending(energies, sectors, vectors)


class DenseEigenSolver(IEigenSolver):
    """Reference full diagonalization; sectors are labelled by the dominant sector weight"""

    @staticmethod
    def get_solver_name() -> str:
        return 'Dense Eigensolver'

    def solve(self, hamiltonian: OperatorMatrix, space: FockSpace) -> SpectrumResult:
        values, vectors = eigh(np.asarray(hamiltonian.entries))
        weights = np.abs(vectors) ** 2
        labels = sector_of(space.levels())
        sector_weight = np.stack([weights[labels == k].sum(axis=0) for k in range(3)])
        sectors = np.argmax(sector_weight, axis=0)
        return _sort_descending(values, sectors, vectors.astype(complex))
