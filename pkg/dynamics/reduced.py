"""Three-level model of the cat manifold under single-photon loss."""

import logging
import math
from typing import Optional, Sequence

import numpy as np

from dynamics.lindblad import evolve_master_equation
from states.cats import cat_norms
from states.gaussian_frame import squeezing_parameter
from states.overlaps import overlap_squeezed_coherent
from utilities.exceptions import ParameterError
from utilities.metrics import DecayAnalyzer, decay_constant
from utilities.typehints import DensityMatrix, LindbladSpec, ModelParams, OperatorMatrix, StateVector, TimeSeries

logger = logging.getLogger(__name__)

POPULATION_CHANNELS = ("p0", "p1", "p2")


def large_amplitude_transition_matrix() -> np.ndarray:
    """M with d rho_nn / dt = kappa |alpha|^2 (M rho)_n = kappa |alpha|^2 (rho_{n+1,n+1} - rho_nn)"""
    return np.roll(np.eye(3), 1, axis=1) - np.eye(3)


def reduced_jump(p: ModelParams) -> np.ndarray:
    """Cat-basis lowering operator, |C_{k+1}> -> g_k |C_k> with g_k = |alpha| N_{k+1} / N_k"""
    magnitude = squeezing_parameter(p)[0].alpha_mag
    norms = cat_norms(overlap_squeezed_coherent(p))
    # Cyclic: C_0 is lowered into C_2
    jump = np.zeros((3, 3))
    for k in range(3):
        jump[k, (k + 1) % 3] = magnitude * norms[(k + 1) % 3] / norms[k]
    return jump


def reduced_cat_dynamics(p: ModelParams, rho3_0: np.ndarray | DensityMatrix, times: Sequence[float] | np.ndarray,
                         energies: Optional[Sequence[float]] = None) -> TimeSeries:
    """Evolve a 3x3 cat-basis density matrix under H = diag(E_k) and kappa D[A].

    Channels p0, p1, p2 hold the cat populations. Without energies the degenerate limit E_k = 0 is used.
    """
    rho0 = rho3_0 if isinstance(rho3_0, DensityMatrix) else DensityMatrix(rho3_0)
    if rho0.dim != 3:
        raise ParameterError(f"the reduced model acts on 3x3 matrices, got dim {rho0.dim}")
    # Degenerate limit when no energies are given
    levels = np.zeros(3) if energies is None else np.asarray(energies, dtype=float)
    spec = LindbladSpec(OperatorMatrix(np.diag(levels), hermitian=True),
                        ((OperatorMatrix(reduced_jump(p)), p.kappa),))
    observables = {name: StateVector(np.eye(3)[k]) for k, name in enumerate(POPULATION_CHANNELS)}
    return evolve_master_equation(spec, rho0, times, observables=observables, method="propagator")


# Envelope decay rate of the cyclic population exchange
def decay_envelope_rate(kappa: float, alpha_mag: float) -> float:
    """Gamma = (3/2) kappa |alpha|^2"""
    return 1.5 * kappa * alpha_mag ** 2


def analytic_cat_populations(kappa: float, alpha_mag: float, t: float | np.ndarray,
                             n: int) -> float | np.ndarray:
    """rho_nn(t) = 1/3 + (2/3) exp(-Gamma t) cos(sqrt(3)/2 kappa |alpha|^2 t + 2 pi n / 3), starting in C_0"""
    if kappa < 0 or alpha_mag < 0:
        raise ParameterError("kappa and |alpha| must be non-negative")
    rate = kappa * alpha_mag ** 2
    t = np.asarray(t, dtype=float)
    values = 1 / 3 + 2 / 3 * np.exp(-1.5 * rate * t) * np.cos(math.sqrt(3) / 2 * rate * t + 2 * math.pi * n / 3)
    return float(values) if values.ndim == 0 else values


def cat_decay_time(kappa: float, alpha_mag: float) -> float:
    """1/e time of rho_00 - 1/3 for the cyclic decay, x / Gamma"""
    return decay_constant() / decay_envelope_rate(kappa, alpha_mag)


def one_over_e_time(series: TimeSeries, channel: str, baseline: float = 0.0) -> float:
    """First time the channel's distance from the baseline falls by the factor e"""
    return DecayAnalyzer(series).one_over_e_time(channel, baseline)
