"""Exact dark states of a^2 - g a^dagger: Fock series, special-function norms and Airy wavefunctions."""

import logging
import math
from typing import Optional

import numpy as np
from scipy.integrate import simpson, trapezoid
from scipy.special import airye, gammaln, hyp1f1, ive

from fockspace.operators import annihilation_op
from utilities.exceptions import ParameterError, QuadratureError, TruncationError
from utilities.typehints import AiryPair, FockSpace, NormalizationReport, StateVector

logger = logging.getLogger(__name__)

# Mass allowed beyond the truncation
TAIL_TOLERANCE = 1e-12
# Series terms below this fraction of the running sum end the summation
SERIES_CUTOFF = 1e-16


def _series_coefficients(g: float, k: int, dim: int) -> tuple[np.ndarray, float]:
    """Unnormalized recurrence solution seeded with c_k = 1, plus the first coefficient beyond dim"""
    coefficients = np.zeros(dim)
    coefficients[k] = 1.0
    n = k + 3
    previous = 1.0
    while True:
        # sqrt(n (n - 1)) c_n = g sqrt(n - 2) c_{n-3}
        current = g * math.sqrt(n - 2) / math.sqrt(n * (n - 1)) * previous
        if n >= dim:
            return coefficients, current
        coefficients[n] = current
        previous = current
        n += 3


def exact_ground_state(g: float, k: int, space: FockSpace) -> StateVector:
    """Dark-state series seeded at |k>, normalized inside the truncation.

    For k = 0, 1 the state is annihilated by a^2 - g a^dagger; k = 2 is only the asymptotic third member.
    """
    if g < 0:
        raise ParameterError(f"g must be non-negative, got {g}")
    if k not in (0, 1, 2):
        raise ParameterError(f"seed level must be 0, 1 or 2, got {k}")
    coefficients, beyond = _series_coefficients(g, k, space.dim)
    norm_sq = float(np.sum(coefficients ** 2))
    tail = beyond ** 2 / norm_sq
    if tail > TAIL_TOLERANCE:
        raise TruncationError(f"dark-state series for g={g}, k={k} leaves mass {tail:.3e} beyond dim={space.dim}")
    return StateVector(coefficients / math.sqrt(norm_sq))


def dark_state_residual(state: StateVector, g: float) -> float:
    """||(a^2 - g a^dagger)|psi>||"""
    space = FockSpace(state.dim)
    a = annihilation_op(space).entries
    operator = a @ a - g * a.conj().T
    return float(np.linalg.norm(operator @ state.amplitudes))


def _log_term(g: float, k: int, n: int) -> float:
    # log of the squared coefficient of |3n + k> in the closed-form series
    log_g = 2 * n * math.log(g) if n else 0.0
    if k == 0:
        return log_g + gammaln(n + 1 / 3) - n * math.log(3) - gammaln(n + 1) - gammaln(n + 2 / 3)
    if k == 1:
        return log_g + gammaln(n + 2 / 3) - n * math.log(3) - gammaln(n + 1) - gammaln(n + 4 / 3)
    return log_g + 2 * (n * math.log(3) + gammaln(n + 1)) - gammaln(3 * n + 3)


def normalization_series(g: float, k: int, max_terms: int = 10000) -> float:
    """Sum of the squared closed-form coefficients, i.e. M_k^{-2}"""
    if k not in (0, 1, 2):
        raise ParameterError(f"sector must be 0, 1 or 2, got {k}")
    total = 0.0
    for n in range(max_terms):
        if g == 0.0 and n > 0:
            break
        term = math.exp(_log_term(g, k, n))
        total += term
        if n > g * g and term < SERIES_CUTOFF * total:
            break
    return total


def normalization_closed_form(g: float, k: int) -> float:
    """Special-function value of M_k^{-2}: modified Bessel forms for k = 0, 1 and the confluent form for k = 2"""
    if k == 2:
        return 0.5 * float(hyp1f1(4 / 3, 5 / 3, g * g / 3))
    if k not in (0, 1):
        raise ParameterError(f"sector must be 0, 1 or 2, got {k}")
    if g == 0.0:
        # g -> 0 limit of the Bessel forms
        return math.exp(gammaln(1 / 3) - gammaln(2 / 3)) if k == 0 else math.exp(gammaln(2 / 3) - gammaln(4 / 3))
    x = g * g / 6
    sign = -1 if k == 0 else 1
    # e^x I_nu(x) = e^{2x} ive(nu, x)
    bessel = math.exp(2 * x) * float(ive(sign / 6, x))
    return 3 ** (sign / 6) * math.sqrt(math.pi) * g ** (-sign / 3) * bessel


def normalization_report(g: float, k: int) -> NormalizationReport:
    series = normalization_series(g, k)
    closed = normalization_closed_form(g, k)
    deviation = abs(series - closed) / abs(series)
    if deviation > 1e-6:
        logger.warning("closed-form normalization for k=%d disagrees with the series at g=%g (rel. dev. %.3e)",
                       k, g, deviation)
    return NormalizationReport(series=series, closed_form=closed, relative_deviation=deviation)


def hermite_functions(n_max: int, x: np.ndarray) -> np.ndarray:
    """Position wavefunctions of |0>..|n_max - 1> by the stable three-term recursion"""
    x = np.asarray(x, dtype=float)
    psi = np.zeros((n_max, x.size))
    psi[0] = math.pi ** -0.25 * np.exp(-x ** 2 / 2)
    if n_max > 1:
        psi[1] = math.sqrt(2.0) * x * psi[0]
    for n in range(1, n_max - 1):
        psi[n + 1] = math.sqrt(2 / (n + 1)) * x * psi[n] - math.sqrt(n / (n + 1)) * psi[n - 1]
    return psi


def fock_wavefunction(state: StateVector, x: np.ndarray) -> np.ndarray:
    """<x|psi> with x = (a + a^dagger) / sqrt(2)"""
    return state.amplitudes @ hermite_functions(state.dim, x)


def default_airy_grid(g: float, points: int = 8001) -> np.ndarray:
    g_t = g / math.sqrt(2)
    return np.linspace(-g_t - 10.0, 8.0 * g_t + 12.0, points)


def _fourth_order_derivatives(values: np.ndarray, step: float) -> tuple[np.ndarray, np.ndarray]:
    # Central five-point stencils on the interior points
    first = (-values[4:] + 8 * values[3:-1] - 8 * values[1:-3] + values[:-4]) / (12 * step)
    second = (-values[4:] + 16 * values[3:-1] - 30 * values[2:-2] + 16 * values[1:-3] - values[:-4]) / (12 * step ** 2)
    return first, second


def _normalize_on_grid(field: np.ndarray, x: np.ndarray, label: str) -> np.ndarray:
    density = field ** 2
    by_simpson = simpson(density, x=x)
    by_trapezoid = trapezoid(density, x=x)
    if abs(by_simpson - by_trapezoid) > 1e-6 * by_simpson:
        raise QuadratureError(f"{label}: grid too coarse (Simpson {by_simpson:.10g} vs trapezoid {by_trapezoid:.10g})")
    if max(density[0], density[-1]) > 1e-12 * density.max():
        raise QuadratureError(f"{label}: grid too narrow, the wavefunction has not decayed at the edges")
    return field / math.sqrt(by_simpson)


def airy_wavefunctions(g: float, x: Optional[np.ndarray] = None) -> AiryPair:
    """phi_A, phi_B ~ exp(-(x + g~)^2 / 2) Ai/Bi[(4 g~)^{1/3} (x + g~/4)], g~ = g / sqrt(2)"""
    if g <= 0:
        raise ParameterError(f"Airy wavefunctions need g > 0, got {g}")
    x = default_airy_grid(g) if x is None else np.asarray(x, dtype=float)
    step = float(x[1] - x[0])
    if not np.allclose(np.diff(x), step):
        raise QuadratureError("Airy wavefunctions need a uniform grid")

    g_t = g / math.sqrt(2)
    z = (4 * g_t) ** (1 / 3) * (x + g_t / 4)
    e_ai, _, e_bi, _ = airye(z)
    # Undo the exponential scaling of airye inside the Gaussian envelope
    growth = (2 / 3) * np.maximum(z, 0.0) ** 1.5
    gaussian = -0.5 * (x + g_t) ** 2
    phi_a = _normalize_on_grid(np.exp(gaussian - growth) * e_ai, x, "phi_A")
    phi_b = _normalize_on_grid(np.exp(gaussian + growth) * e_bi, x, "phi_B")

    residual = 0.0
    for field in (phi_a, phi_b):
        first, second = _fourth_order_derivatives(field, step)
        inner = x[2:-2]
        terms = (second, 2 * (inner + g_t) * first, (inner ** 2 - 2 * g_t * inner + 1) * field[2:-2])
        scale = float(np.max(sum(np.abs(term) for term in terms)))
        residual = max(residual, float(np.max(np.abs(sum(terms)))) / scale)
    if residual > 1e-6:
        raise QuadratureError(f"dark-state equation residual {residual:.3e} exceeds 1e-6; refine the grid")

    overlap = float(simpson(phi_a * phi_b, x=x))
    logger.debug("Airy pair for g=%g: <A|B>=%.8f, residual %.2e", g, overlap, residual)
    return AiryPair(x=x, phi_a=phi_a, phi_b=phi_b, overlap=overlap, ode_residual=residual)


def airy_superpositions(pair: AiryPair) -> tuple[np.ndarray, np.ndarray]:
    """N_+ (phi_A + phi_B) and N_- (-phi_A + phi_B), N_pm = [2 (1 +- <A|B>)]^{-1/2}"""
    plus = (pair.phi_a + pair.phi_b) / math.sqrt(2 * (1 + pair.overlap))
    minus = (pair.phi_b - pair.phi_a) / math.sqrt(2 * (1 - pair.overlap))
    return plus, minus
