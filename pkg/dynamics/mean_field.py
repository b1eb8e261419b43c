"""Mean-field steady states of the lossy oscillator."""

import logging
import math

import numpy as np

from utilities.exceptions import InstabilityError, NoFiniteStationaryPoint
from utilities.typehints import ModelParams

logger = logging.getLogger(__name__)

# Largest residual of the mean-field equation accepted for a returned amplitude
RESIDUAL_TOLERANCE = 1e-9


def mean_field_residual(p: ModelParams, alpha: complex) -> complex:
    """(i Delta + 2i U |alpha|^2 - kappa / 2) alpha - 3i G alpha*^2"""
    return ((1j * p.delta + 2j * p.kerr * abs(alpha) ** 2 - p.kappa / 2) * alpha
            - 3j * p.pump * alpha.conjugate() ** 2)


def steady_state_photons(p: ModelParams) -> float:
    """n_ss on the stable branch, from (Delta + 2U n)^2 + kappa^2 / 4 = 9 G^2 n"""
    root = 9 * p.pump ** 2 * (9 * p.pump ** 2 - 8 * p.delta * p.kerr) - 4 * p.kerr ** 2 * p.kappa ** 2
    if p.pump == 0 or root < 0:
        raise NoFiniteStationaryPoint(f"no finite mean-field steady state at Delta={p.delta}, G={p.pump}, "
                                      f"kappa={p.kappa}")
    photons = (9 * p.pump ** 2 - 4 * p.delta * p.kerr + math.sqrt(root)) / (8 * p.kerr ** 2)
    if photons <= 0:
        raise NoFiniteStationaryPoint(f"mean-field photon number {photons:.3g} is not positive")
    return photons


def steady_state_phases(p: ModelParams, photons: float) -> np.ndarray:
    """phi_ss,k = -(1/3) arctan2(kappa / 2, Delta + 2U n_ss) + 2 pi k / 3"""
    shift = -math.atan2(p.kappa / 2, p.delta + 2 * p.kerr * photons) / 3
    return shift + 2 * np.pi * np.arange(3) / 3


def mean_field_stationary(p: ModelParams) -> list[complex]:
    """The origin followed by the three stable amplitudes, when they exist"""
    try:
        photons = steady_state_photons(p)
    except NoFiniteStationaryPoint:
        logger.debug("mean field below threshold at Delta=%g G=%g kappa=%g", p.delta, p.pump, p.kappa)
        return [0j]

    amplitudes = [0j]
    for phase in steady_state_phases(p, photons):
        alpha = complex(math.sqrt(photons) * np.exp(1j * phase))
        residual = abs(mean_field_residual(p, alpha))
        if residual > RESIDUAL_TOLERANCE * max(1.0, photons ** 1.5):
            raise InstabilityError(f"mean-field amplitude {alpha:.6g} leaves residual {residual:.3e}")
        amplitudes.append(alpha)
    return amplitudes


def steady_state_threshold(p: ModelParams) -> float:
    """G_thr,ss = (2/3) sqrt(U (Delta + sqrt(Delta^2 + kappa^2 / 4))).

    For Delta > 0 this equals (2/3) sqrt(Delta U) sqrt(1 + sqrt(1 + (kappa / 2 Delta)^2)).
    """
    return 2 / 3 * math.sqrt(p.kerr * (p.delta + math.sqrt(p.delta ** 2 + p.kappa ** 2 / 4)))


def lossy_squeezing_parameter(p: ModelParams) -> float:
    """Squeezing r of the quadratic frame evaluated at the lossy steady state.

    tanh 2r = -2 lambda / omega with omega = 4U n_ss + Delta and lambda = U n_ss - 3G sqrt(n_ss).
    """
    photons = steady_state_photons(p)
    omega = 4 * p.kerr * photons + p.delta
    lam = p.kerr * photons - 3 * p.pump * math.sqrt(photons)
    ratio = -2 * lam / omega
    if omega <= 0 or abs(ratio) >= 1:
        raise InstabilityError(f"lossy frame is unstable: omega={omega:.6g}, lambda={lam:.6g}")
    return 0.5 * math.atanh(ratio)
