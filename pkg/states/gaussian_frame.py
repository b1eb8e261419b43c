"""Quadratic fluctuations around the stationary amplitudes: frequencies, squeezing and level ladder."""

import logging
import math

from fockspace.gaussian import displaced_squeezed_number_state
from semiclassical.potential import ray_potential
from semiclassical.phase import thresholds
from semiclassical.stationary import discriminant, energy_barrier, stationary_amplitudes
from utilities.exceptions import InstabilityError, ParameterError
from utilities.functions import wrap_phase
from utilities.typehints import FockSpace, FrameParams, GaussianParams, ManifoldSpectrum, ModelParams, StateVector

logger = logging.getLogger(__name__)

BRANCHES = ("+", "-")


# Signed stationary amplitude of the requested branch
def _branch_amplitude(p: ModelParams, branch: str) -> float:
    if branch not in BRANCHES:
        raise ParameterError(f"branch must be '+' or '-', got {branch!r}")
    amplitudes = stationary_amplitudes(p)
    return amplitudes.mag_plus if branch == "+" else amplitudes.signed_minus


def gaussian_frame_params(p: ModelParams, branch: str = "+") -> FrameParams:
    """omega = 4U|alpha|^2 + Delta, lambda = U|alpha| (|alpha| - 3G/U) on the chosen branch"""
    amplitude = _branch_amplitude(p, branch)
    omega = 4 * p.kerr * amplitude ** 2 + p.delta
    lam = p.kerr * amplitude ** 2 - 3 * p.pump * amplitude
    return FrameParams(omega=omega, lam=lam, stable=omega > 2 * abs(lam), amplitude=amplitude)


def frame_params_closed_form(p: ModelParams, branch: str = "+") -> tuple[float, float]:
    """omega and lambda written directly in (G, Delta, U)"""
    if branch not in BRANCHES:
        raise ParameterError(f"branch must be '+' or '-', got {branch!r}")
    # The two branches differ only in the sign of the root
    sign = 1 if branch == "+" else -1
    shifted = 3 * p.pump * (3 * p.pump + sign * math.sqrt(discriminant(p)))
    return -p.delta + shifted / (2 * p.kerr), -p.delta / 2 - shifted / (8 * p.kerr)


def squeezing_ratio(p: ModelParams) -> float:
    """tanh 2r = -2 lambda / omega = (3G|alpha| + Delta) / (6G|alpha| - Delta)"""
    frame = gaussian_frame_params(p, "+")
    if not frame.stable:
        raise InstabilityError(f"the '+' frame is unstable: omega={frame.omega:.6g}, lambda={frame.lam:.6g}")
    return -2 * frame.lam / frame.omega


def squeezing_parameter(p: ModelParams) -> tuple[GaussianParams, GaussianParams, GaussianParams]:
    """Displacement and squeezing of the three squeezed coherent states"""
    ratio = squeezing_ratio(p)
    if abs(ratio) >= 1:
        raise InstabilityError(f"|tanh 2r| = {abs(ratio):.6g} >= 1")
    r = 0.5 * math.atanh(ratio)
    # All three states share |alpha| and r, and sit 2 pi / 3 apart
    magnitude = stationary_amplitudes(p).mag_plus
    return tuple(
        GaussianParams(alpha_mag=magnitude, phi=wrap_phase(2 * math.pi * k / 3), r=r,
                       theta=wrap_phase(-math.pi / 3 * (2 * (k + 1) + 1)))
        for k in range(3)
    )


def manifold_frequency(p: ModelParams) -> ManifoldSpectrum:
    """Omega = sqrt(omega^2 - 4 lambda^2) with E_n = -[Omega n + (Omega - omega) / 2]"""
    frame = gaussian_frame_params(p, "+")
    if not frame.stable:
        raise InstabilityError(f"the '+' frame is unstable: omega={frame.omega:.6g}, lambda={frame.lam:.6g}")
    omega_big = math.sqrt(frame.omega ** 2 - 4 * frame.lam ** 2)
    # Ladder is measured from the potential at the maximum
    offset = float(ray_potential(p, frame.amplitude))
    return ManifoldSpectrum(Omega=omega_big, omega=frame.omega, offset=offset)


def manifold_frequency_closed_form(p: ModelParams) -> float:
    """Omega = sqrt(12 |alpha|^4 U^2 - 3 Delta^2)"""
    magnitude = stationary_amplitudes(p).mag_plus
    value = 12 * magnitude ** 4 * p.kerr ** 2 - 3 * p.delta ** 2
    if value < 0:
        raise InstabilityError("the quadratic frame has no real level spacing")
    return math.sqrt(value)


# Energy of ladder level n on the absolute scale
def absolute_level_energy(p: ModelParams, n: int) -> float:
    return float(manifold_frequency(p).absolute_level(n))


def bound_level_count(p: ModelParams) -> int:
    """Number of ladder levels below the barrier, |E(alpha_+) - E(alpha_-)| / Omega"""
    return int(energy_barrier(p) // manifold_frequency(p).Omega)


def squeezing_asymptotes(p: ModelParams) -> dict[str, float]:
    """Leading-order forms of r for Delta -> -inf, G -> G_th+ and G -> inf"""
    t = thresholds(p)
    # Limits outside their regime stay NaN
    result = {"large_pump": math.log(3) / 4, "negative_detuning": math.nan, "near_threshold": math.nan}
    if p.delta < 0:
        result["negative_detuning"] = math.log(9 * t.delta_th / abs(p.delta)) / 8
    if p.delta > 0 and p.pump > t.g_th:
        result["near_threshold"] = -math.log(p.pump - t.g_th) / 8
    return result


def squeezed_coherent_kets(p: ModelParams, space: FockSpace, n: int = 0) -> tuple[StateVector, ...]:
    """D(alpha_k) S(xi_k) |n> for k = 0, 1, 2"""
    return tuple(displaced_squeezed_number_state(space, g.alpha, g.r, g.theta, n) for g in squeezing_parameter(p))
