"""State-selective dissipation and the decay of cat superpositions."""

import logging
from typing import Optional

import numpy as np

from dynamics.lindblad import evolve_master_equation
from dynamics.reduced import reduced_cat_dynamics
from fockspace.operators import annihilation_op
from spectrum.analysis import spectrum as compute_spectrum
from states.cats import cat_states
from utilities.exceptions import ManifoldIdentificationError, NoCrossing
from utilities.metrics import DecayAnalyzer
from utilities.typehints import (
    DensityMatrix,
    FockSpace,
    LindbladSpec,
    ModelParams,
    OperatorMatrix,
    SpectrumResult,
    StateVector,
    TimeSeries,
)

logger = logging.getLogger(__name__)

# Required ratio between the inter-triplet gap and the intra-triplet spread
SEPARATION_RATIO = 10.0
# Excited manifolds kept on top of the ground triplet in superposition-decay runs
EXCITED_MANIFOLDS = 5
SAMPLES = 401
MAX_HORIZON_DOUBLINGS = 14


def _triplet(s: SpectrumResult, manifold: int) -> np.ndarray:
    indices = np.arange(3 * manifold, 3 * manifold + 3)
    if indices[-1] >= s.energies.size:
        raise ManifoldIdentificationError(f"spectrum has no manifold {manifold}")
    if set(int(k) for k in s.sectors[indices]) != {0, 1, 2}:
        raise ManifoldIdentificationError(f"manifold {manifold} does not hold one level per sector: "
                                          f"{s.sectors[indices]}")
    return indices


def manifold_indices(s: SpectrumResult) -> tuple[np.ndarray, np.ndarray]:
    """Level indices of the ground and first excited triplets, checked for separation"""
    ground, excited = _triplet(s, 0), _triplet(s, 1)
    spread = max(np.ptp(s.energies[ground]), np.ptp(s.energies[excited]))
    gap = s.energies[ground].min() - s.energies[excited].max()
    if gap <= SEPARATION_RATIO * spread:
        raise ManifoldIdentificationError(
            f"triplet gap {gap:.3e} is not {SEPARATION_RATIO:g} times the spread {spread:.3e}")
    return ground, excited


def engineered_dissipation_op(p: ModelParams, space: FockSpace,
                              spectrum: Optional[SpectrumResult] = None) -> OperatorMatrix:
    """Pi_G a Pi_E, the jump that returns excited-triplet population to the ground triplet.

    The rate kappa_e is attached when the operator is placed in a LindbladSpec.
    """
    s = spectrum if spectrum is not None else compute_spectrum(p, space)
    ground, excited = manifold_indices(s)
    vectors_g = s.vectors[:, ground]
    vectors_e = s.vectors[:, excited]
    projector_g = vectors_g @ vectors_g.conj().T
    projector_e = vectors_e @ vectors_e.conj().T
    return OperatorMatrix(projector_g @ annihilation_op(space).entries @ projector_e)


def aligned_cats(p: ModelParams, space: FockSpace, s: SpectrumResult) -> tuple[StateVector, ...]:
    """Numerical sector-top eigenstates rephased onto the squeezed cats"""
    analytic = cat_states(p, space).cats
    aligned = []
    for k in range(3):
        numerical = s.top_of_sector(k)
        overlap = numerical.inner(analytic[k])
        aligned.append(numerical * (overlap / abs(overlap)))
    return tuple(aligned)


def _decay_time(run, baseline: float, horizon: float,
                doublings: int = MAX_HORIZON_DOUBLINGS) -> tuple[float, TimeSeries]:
    # Double the horizon until the population crosses its 1/e level, then refine the grid around it
    for _ in range(doublings):
        series = run(np.linspace(0.0, horizon, SAMPLES))
        try:
            crossing = DecayAnalyzer(series).one_over_e_time("population", baseline)
        except NoCrossing:
            horizon *= 2.0
            continue
        if crossing < 20 * horizon / (SAMPLES - 1):
            series = run(np.linspace(0.0, 4 * crossing, SAMPLES))
            crossing = DecayAnalyzer(series).one_over_e_time("population", baseline)
        return crossing, series
    raise NoCrossing(f"population never reached its 1/e level within t <= {horizon:.3g}")


def superposition_decay(p: ModelParams, space: FockSpace,
                        manifolds: int = EXCITED_MANIFOLDS) -> tuple[float, TimeSeries]:
    """1/e time of <zeta_0|rho|zeta_0> for the cat superposition, with the sampled run.

    The evolution is restricted to the ground triplet plus the given number of excited triplets.
    Loss acts at rate kappa; the state-selective jump is added when kappa_e > 0.
    """
    s = compute_spectrum(p, space)
    kept = 3 * (1 + manifolds)
    basis = s.vectors[:, :kept]
    cats = aligned_cats(p, space, s)
    leg = sum(cat.amplitudes for cat in cats) / np.sqrt(3)

    jumps = [(OperatorMatrix(basis.conj().T @ annihilation_op(space).entries @ basis), p.kappa)]
    if p.kappa_e > 0:
        engineered = engineered_dissipation_op(p, space, s).entries
        jumps.append((OperatorMatrix(basis.conj().T @ engineered @ basis), p.kappa_e))
    spec = LindbladSpec(OperatorMatrix(np.diag(s.energies[:kept]), hermitian=True), tuple(jumps))

    initial = StateVector(basis.conj().T @ leg)
    rho0 = DensityMatrix(np.outer(initial.amplitudes, initial.amplitudes.conj()) / initial.norm() ** 2)
    observables = {"population": initial.normalized()}

    def run(times: np.ndarray) -> TimeSeries:
        return evolve_master_equation(spec, rho0, times, observables=observables, method="propagator",
                                      store_states=False)

    total = p.kappa + p.kappa_e
    crossing, series = _decay_time(run, 1 / 3, 1.0 / total)
    logger.info("superposition 1/e time at G=%g Delta=%g kappa=%g kappa_e=%g: %.4g",
                p.pump, p.delta, p.kappa, p.kappa_e, crossing)
    return crossing, series


def superposition_decay_rate(p: ModelParams, space: FockSpace, manifolds: int = EXCITED_MANIFOLDS) -> float:
    """Inverse 1/e time of the cat-superposition population"""
    return 1.0 / superposition_decay(p, space, manifolds)[0]


def reduced_superposition_decay_time(p: ModelParams, space: FockSpace) -> float:
    """1/e time of the uniform-coherence state in the three-level model with exact sector-top energies"""
    s = compute_spectrum(p, space)
    energies = [s.top_energy(k) for k in range(3)]
    uniform = np.full(3, 1 / np.sqrt(3))
    rho0 = np.outer(uniform, uniform)

    def run(times: np.ndarray) -> TimeSeries:
        series = reduced_cat_dynamics(p, rho0, times, energies)
        population = np.array([float(np.real(uniform @ rho.entries @ uniform)) for rho in series.states])
        return TimeSeries(series.times, {"population": population})

    # The uniform superposition is nearly dark under the cyclic jump, so its lifetime can be very long
    crossing, _ = _decay_time(run, 1 / 3, 1.0 / p.kappa, doublings=3 * MAX_HORIZON_DOUBLINGS)
    return crossing
