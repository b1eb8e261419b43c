"""Thresholds, phase classification and phase-diagram sweeps."""

import logging
import math
from typing import Iterable

import numpy as np

from semiclassical.potential import meta_potential
from semiclassical.stationary import classify_stationary_points, discriminant, energy_barrier, stationary_amplitudes
from utilities.exceptions import NoFiniteStationaryPoint
from utilities.typehints import ModelParams, PhaseRegion, PointKind, Thresholds

logger = logging.getLogger(__name__)

EXPECTED_MAXIMA = {
    PhaseRegion.SINGLE_MAXIMUM: 1,
    PhaseRegion.FOUR_MAXIMA: 4,
    PhaseRegion.THREE_MAXIMA: 3,
}


def thresholds(p: ModelParams) -> Thresholds:
    delta_th = 9 * p.pump ** 2 / (8 * p.kerr)
    g_th = (2 * math.sqrt(2) / 3) * math.sqrt(p.delta * p.kerr) if p.delta >= 0 else 0.0
    return Thresholds(
        delta_th=delta_th,
        g_th=g_th,
        fourfold_delta=p.pump ** 2 / p.kerr,
        zero_squeeze_delta=-9 * p.pump ** 2 / p.kerr,
    )


def count_maxima(p: ModelParams) -> int:
    return sum(point.kind is PointKind.MAXIMUM for point in classify_stationary_points(p))


def classify_phase(p: ModelParams) -> PhaseRegion:
    """Region by detuning relative to Delta_th, cross-checked against the Hessian maxima count"""
    delta_th = thresholds(p).delta_th
    if p.delta > delta_th:
        region = PhaseRegion.SINGLE_MAXIMUM
    elif p.delta > 0:
        region = PhaseRegion.FOUR_MAXIMA
    else:
        region = PhaseRegion.THREE_MAXIMA

    if p.pump > 0:
        counted = count_maxima(p)
        if counted != EXPECTED_MAXIMA[region]:
            logger.warning("phase %s expects %d maxima but %d were classified (Delta=%g, G=%g)",
                           region.value, EXPECTED_MAXIMA[region], counted, p.delta, p.pump)
    return region


def count_grid_maxima(p: ModelParams, points: int = 401) -> int:
    """Brute-force count of strict local maxima on a grid covering |alpha| <= 2|alpha_+| + 1.

    An odd number of points keeps the origin on the grid.
    """
    try:
        scale = stationary_amplitudes(p).mag_plus
    except NoFiniteStationaryPoint:
        scale = 3 * p.pump / (4 * p.kerr)
    radius = 2 * scale + 1
    axis = np.linspace(-radius, radius, points)
    re, im = np.meshgrid(axis, axis)
    field = meta_potential(p, re + 1j * im)

    core = field[1:-1, 1:-1]
    is_max = np.abs(re[1:-1, 1:-1] + 1j * im[1:-1, 1:-1]) <= radius
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di or dj:
                is_max &= core > field[1 + di:points - 1 + di, 1 + dj:points - 1 + dj]
    return int(np.count_nonzero(is_max))


def phase_diagram(g_values: Iterable[float], delta_values: Iterable[float], kerr: float = 1.0) -> list[dict]:
    """One row per (G, Delta) with region, stationary magnitudes, threshold and barrier"""
    rows = []
    for g in g_values:
        for delta in delta_values:
            p = ModelParams(delta=float(delta), pump=float(g), kerr=kerr)
            row = {
                "G": p.pump,
                "Delta": p.delta,
                "region": classify_phase(p).value,
                "alpha_plus": math.nan,
                "alpha_minus": math.nan,
                "delta_th": thresholds(p).delta_th,
                "barrier": math.nan,
            }
            if discriminant(p) >= 0:
                amplitudes = stationary_amplitudes(p)
                row.update(alpha_plus=amplitudes.mag_plus, alpha_minus=amplitudes.mag_minus,
                           barrier=energy_barrier(p))
            rows.append(row)
    return rows


def threshold_curves(g_values: Iterable[float], kerr: float = 1.0) -> list[dict]:
    """Boundary curves Delta_th, Delta = G^2/U and Delta = -9G^2/U"""
    rows = []
    for g in g_values:
        t = thresholds(ModelParams(delta=0.0, pump=float(g), kerr=kerr))
        rows.append({"G": float(g), "delta_th": t.delta_th, "fourfold": t.fourfold_delta,
                     "zero_squeeze": t.zero_squeeze_delta})
    return rows
