"""Wigner functions, quadrature marginals and state comparisons."""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Tuple

import numpy as np
from scipy.integrate import trapezoid

from utilities.exceptions import TruncationError
from utilities.functions import trace_distance as _trace_distance
from utilities.typehints import DensityMatrix, StateVector

logger = logging.getLogger(__name__)

# Points evaluated per block of the recursion; bounds the (2, dim, points) work array
CHUNK = 8192
# Grid points must satisfy |alpha|^2 <= SAFE_DISK * dim
SAFE_DISK = 2.0


def wigner_grid(re_extent: float, im_extent: float, points: int) -> np.ndarray:
    """Square grid of complex alpha values, rows indexed by Im alpha"""
    re_axis = np.linspace(-re_extent, re_extent, points)
    im_axis = np.linspace(-im_extent, im_extent, points)
    re, im = np.meshgrid(re_axis, im_axis)
    return re + 1j * im


def _wigner_block(rho: np.ndarray, alpha: np.ndarray) -> np.ndarray:
    # Iterative Laguerre recursion on the displaced-parity matrix elements
    dim = rho.shape[0]
    w_mat = np.zeros((2, dim, alpha.size), dtype=complex)
    w_mat[0, 0] = np.exp(-2.0 * np.abs(alpha) ** 2) / np.pi
    for n in range(1, dim):
        w_mat[0, n] = 2.0 * alpha * w_mat[0, n - 1] / np.sqrt(n)

    field = np.real(rho[0, 0]) * np.real(w_mat[0, 0])
    for n in range(1, dim):
        field += 2.0 * np.real(rho[0, n] * w_mat[0, n])

    for m in range(1, dim):
        w_mat[1, m] = (2.0 * np.conj(alpha) * w_mat[0, m] - np.sqrt(m) * w_mat[0, m - 1]) / np.sqrt(m)
        field += np.real(rho[m, m] * w_mat[1, m])
        for n in range(m + 1, dim):
            w_mat[1, n] = (2.0 * alpha * w_mat[1, n - 1] - np.sqrt(m) * w_mat[0, n - 1]) / np.sqrt(n)
            field += 2.0 * np.real(rho[m, n] * w_mat[1, n])
        w_mat[0] = w_mat[1]
    # Factor 2 converts the quadrature normalization to the alpha plane
    return 2.0 * field


def wigner(rho: DensityMatrix | StateVector, grid: np.ndarray, workers: int = 1) -> np.ndarray:
    """W(alpha) = (2/pi) Tr[rho D(alpha) P D^dagger(alpha)] on arbitrary complex points"""
    if isinstance(rho, StateVector):
        rho = rho.projector()
    points = np.asarray(grid, dtype=complex)
    if np.max(np.abs(points)) ** 2 > SAFE_DISK * rho.dim:
        raise TruncationError(
            f"grid reaches |alpha| = {np.max(np.abs(points)):.3g}, beyond the safe disk "
            f"|alpha|^2 <= {SAFE_DISK * rho.dim:.0f} for dim={rho.dim}")

    flat = points.reshape(-1)
    blocks = [flat[i:i + CHUNK] for i in range(0, flat.size, CHUNK)]
    entries = np.asarray(rho.entries)
    if workers > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(lambda block: _wigner_block(entries, block), blocks))
    else:
        values = [_wigner_block(entries, block) for block in blocks]
    logger.debug("wigner on %d points in %d blocks (dim=%d)", flat.size, len(blocks), rho.dim)
    return np.concatenate(values).reshape(points.shape)


def integrate_grid(field: np.ndarray, grid: np.ndarray) -> float:
    """Integral over a rectangular grid built by wigner_grid"""
    re_axis = grid[0, :].real
    im_axis = grid[:, 0].imag
    return float(trapezoid(trapezoid(field, re_axis, axis=1), im_axis))


def quadrature_marginals(field: np.ndarray, grid: np.ndarray
                         ) -> Tuple[Tuple[np.ndarray, np.ndarray], Tuple[np.ndarray, np.ndarray]]:
    """Position and momentum distributions with x = sqrt2 Re alpha and p = sqrt2 Im alpha"""
    re_axis = grid[0, :].real
    im_axis = grid[:, 0].imag
    # W_xp = W_alpha / 2 and d(Im alpha) = dp / sqrt 2
    position = trapezoid(field, im_axis, axis=0) / np.sqrt(2.0)
    momentum = trapezoid(field, re_axis, axis=1) / np.sqrt(2.0)
    return (np.sqrt(2.0) * re_axis, position), (np.sqrt(2.0) * im_axis, momentum)


def local_maxima(field: np.ndarray, grid: np.ndarray, floor: float = 0.0) -> list[complex]:
    """Strict interior local maxima of a gridded field above a floor"""
    core = field[1:-1, 1:-1]
    is_max = core > floor
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di == 0 and dj == 0:
                continue
            neighbour = field[1 + di:field.shape[0] - 1 + di, 1 + dj:field.shape[1] - 1 + dj]
            is_max &= core > neighbour
    rows, cols = np.nonzero(is_max)
    return [complex(grid[i + 1, j + 1]) for i, j in zip(rows, cols)]


def fidelity(a: StateVector, b: StateVector) -> float:
    """|<a|b>|"""
    return abs(a.inner(b))


def trace_distance(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    return _trace_distance(np.asarray(rho.entries), np.asarray(sigma.entries))
