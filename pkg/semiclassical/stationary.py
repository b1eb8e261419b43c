"""Stationary points of the meta-potential and their Hessian classification."""

import logging
import math

import numpy as np

from semiclassical.potential import hessian, meta_potential, ray_potential
from utilities.exceptions import NoFiniteStationaryPoint
from utilities.typehints import (
    DEFAULT_TOLERANCES,
    ModelParams,
    PointKind,
    StationaryAmplitudes,
    StationaryPoint,
)

logger = logging.getLogger(__name__)

MAXIMA_PHASES = (0.0, 2 * math.pi / 3, -2 * math.pi / 3)
SHIFTED_PHASES = (math.pi, -math.pi / 3, math.pi / 3)


def discriminant(p: ModelParams) -> float:
    return 9 * p.pump ** 2 - 8 * p.kerr * p.delta


def stationary_amplitudes(p: ModelParams) -> StationaryAmplitudes:
    """|alpha_pm| = (3G +- sqrt(9G^2 - 8 U Delta)) / 4U"""
    disc = discriminant(p)
    if disc < 0:
        raise NoFiniteStationaryPoint(
            f"9G^2 - 8U Delta = {disc:.6g} < 0: only the origin is stationary (Delta={p.delta}, G={p.pump})")
    root = math.sqrt(disc)
    mag_plus = (3 * p.pump + root) / (4 * p.kerr)
    signed_minus = (3 * p.pump - root) / (4 * p.kerr)
    # A negative root is the same ray rotated by pi
    minus_phases = MAXIMA_PHASES if signed_minus >= 0 else SHIFTED_PHASES
    return StationaryAmplitudes(mag_plus, abs(signed_minus), MAXIMA_PHASES, minus_phases, signed_minus)


def classify_point(p: ModelParams, alpha: complex, force_degenerate: bool = False) -> StationaryPoint:
    """Hessian classification with a zero band of 1e-9 U^2"""
    tolerance = DEFAULT_TOLERANCES.hessian_zero * p.kerr ** 2
    eigenvalues = np.linalg.eigvalsh(hessian(p, alpha))
    degenerate = force_degenerate or bool(np.any(np.abs(eigenvalues) <= tolerance))

    if np.all(eigenvalues < -tolerance):
        kind = PointKind.MAXIMUM
    elif np.all(eigenvalues > tolerance):
        kind = PointKind.MINIMUM
    elif eigenvalues[0] < -tolerance and eigenvalues[-1] > tolerance:
        kind = PointKind.SADDLE
    else:
        # Degenerate point: take the kind from the dominant eigenvalue
        dominant = eigenvalues[np.argmax(np.abs(eigenvalues))]
        if abs(dominant) <= tolerance:
            kind = PointKind.SADDLE
        else:
            kind = PointKind.MAXIMUM if dominant < 0 else PointKind.MINIMUM
    return StationaryPoint(complex(alpha), kind, float(meta_potential(p, alpha)), degenerate)


def classify_stationary_points(p: ModelParams) -> list[StationaryPoint]:
    """Origin plus up to six finite stationary points"""
    points = [classify_point(p, 0j)]
    try:
        amplitudes = stationary_amplitudes(p)
    except NoFiniteStationaryPoint:
        return points

    if amplitudes.mag_plus == 0.0:
        return points
    # At the spinodal the two branches coincide and are reported once
    spinodal = math.isclose(amplitudes.mag_plus, amplitudes.mag_minus, rel_tol=1e-12, abs_tol=1e-14)
    points.extend(classify_point(p, alpha, force_degenerate=spinodal) for alpha in amplitudes.plus_points())
    if not spinodal and amplitudes.mag_minus > 0.0:
        points.extend(classify_point(p, alpha) for alpha in amplitudes.minus_points())
    logger.debug("classified %d stationary points for Delta=%g G=%g", len(points), p.delta, p.pump)
    return points


def energy_barrier(p: ModelParams) -> float:
    """|E(alpha_+) - E(alpha_-)| along the ray of the maxima"""
    amplitudes = stationary_amplitudes(p)
    return float(abs(ray_potential(p, amplitudes.mag_plus) - ray_potential(p, amplitudes.signed_minus)))
