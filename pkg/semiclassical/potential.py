"""Meta-potential E(alpha) = <alpha|H|alpha> and its derivatives in (Re alpha, Im alpha)."""

import numpy as np

from utilities.typehints import ModelParams


def meta_potential(p: ModelParams, alpha: complex | np.ndarray) -> float | np.ndarray:
    """-Delta |alpha|^2 - U |alpha|^4 + G (alpha^*3 + alpha^3)"""
    alpha = np.asarray(alpha, dtype=complex)
    intensity = np.abs(alpha) ** 2
    value = -p.delta * intensity - p.kerr * intensity ** 2 + 2.0 * p.pump * np.real(alpha ** 3)
    return float(value) if value.ndim == 0 else value


def ray_potential(p: ModelParams, magnitude: float | np.ndarray) -> float | np.ndarray:
    """Potential along a ray of maxima, -|alpha|^2 (U|alpha|^2 - 2G|alpha| + Delta); accepts signed magnitudes"""
    x = np.asarray(magnitude, dtype=float)
    return -x ** 2 * (p.kerr * x ** 2 - 2.0 * p.pump * x + p.delta)


def gradient(p: ModelParams, alpha: complex) -> np.ndarray:
    x, y = alpha.real, alpha.imag
    rho2 = x * x + y * y
    d_x = -2 * p.delta * x - 4 * p.kerr * rho2 * x + 6 * p.pump * (x * x - y * y)
    d_y = -2 * p.delta * y - 4 * p.kerr * rho2 * y - 12 * p.pump * x * y
    return np.array([d_x, d_y])


def hessian(p: ModelParams, alpha: complex) -> np.ndarray:
    x, y = alpha.real, alpha.imag
    rho2 = x * x + y * y
    d_xx = -2 * p.delta - 4 * p.kerr * (rho2 + 2 * x * x) + 12 * p.pump * x
    d_yy = -2 * p.delta - 4 * p.kerr * (rho2 + 2 * y * y) - 12 * p.pump * x
    d_xy = -8 * p.kerr * x * y - 12 * p.pump * y
    return np.array([[d_xx, d_xy], [d_xy, d_yy]])


def stationarity_residual(p: ModelParams, alpha: complex) -> float:
    """|f1| with f1 = 2U|alpha|^2 alpha - 3G alpha^*2 + Delta alpha"""
    value = 2 * p.kerr * abs(alpha) ** 2 * alpha - 3 * p.pump * np.conj(alpha) ** 2 + p.delta * alpha
    return float(abs(value))


def potential_grid(p: ModelParams, extent: float, points: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Meta-potential sampled on a square grid for external contouring"""
    axis = np.linspace(-extent, extent, points)
    re, im = np.meshgrid(axis, axis)
    return axis, axis, meta_potential(p, re + 1j * im)
