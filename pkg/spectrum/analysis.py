"""Gap extraction, level-crossing search and sweeps over the numerical spectrum."""

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import brentq
from scipy.stats import linregress

from factories.solver_factory import SolverFactory
from spectrum.hamiltonian import build_hamiltonian
from utilities.exceptions import NonPositiveGap, ParameterError
from utilities.typehints import FockSpace, GapFit, ModelParams, OperatorMatrix, SpectrumResult

logger = logging.getLogger(__name__)

SECTOR_PAIRS = ((0, 1), (0, 2), (1, 2))


def diagonalize_by_sector(hamiltonian: OperatorMatrix, space: FockSpace, solver: str = "sector") -> SpectrumResult:
    """Spectrum of a Hamiltonian with the registered eigensolver, levels labelled by n mod 3 sector"""
    if solver not in ("sector", "dense"):
        raise ParameterError(f"eigensolver must be 'sector' or 'dense', got {solver!r}")
    return SolverFactory.get_solver(solver).solve(hamiltonian, space)


def spectrum(p: ModelParams, space: FockSpace) -> SpectrumResult:
    """Sector-blocked spectrum of the model Hamiltonian"""
    return diagonalize_by_sector(build_hamiltonian(p, space), space)


def excitation_gaps(s: SpectrumResult) -> np.ndarray:
    """delta_n = E_0 - E_n, nonnegative with the descending convention"""
    return s.energies[0] - s.energies


def ground_triplet(s: SpectrumResult) -> dict:
    """Sectors, energy spread and gap above the three highest quasi-energies"""
    top = s.energies[:3]
    return {
        "sectors": tuple(int(k) for k in s.sectors[:3]),
        "spread": float(top.max() - top.min()),
        "gap_above": float(s.energies[0] - s.energies[3]),
    }


def _sector_gap(p: ModelParams, space: FockSpace, pump: float, pair: tuple[int, int]) -> float:
    result = spectrum(p.with_changes(pump=pump), space)
    return result.top_energy(pair[0]) - result.top_energy(pair[1])


def _is_ground_crossing(p: ModelParams, space: FockSpace, pump: float, pair: tuple[int, int]) -> bool:
    # Both crossing sectors must hold the two highest levels
    result = spectrum(p.with_changes(pump=pump), space)
    return set(int(k) for k in result.sectors[:2]) == set(pair)


def find_level_crossings(p: ModelParams, g_range: tuple[float, float], space: FockSpace,
                         points: int = 81) -> list[float]:
    """Pump values where the ground level changes sector.

    Sign changes of the pairwise sector-top differences are located on a scan and refined with brentq.
    """
    if p.delta <= 0:
        logger.warning("crossing scan requires a positive detuning, got Delta=%g", p.delta)
        return []
    g_lo, g_hi = g_range
    if not g_lo < g_hi:
        raise ParameterError(f"invalid pump range {g_range}")

    scan = np.linspace(g_lo, g_hi, points)
    tops = np.array([[spectrum(p.with_changes(pump=g), space).top_energy(k) for k in range(3)] for g in scan])

    roots = []
    for pair in SECTOR_PAIRS:
        difference = tops[:, pair[0]] - tops[:, pair[1]]
        for i in np.flatnonzero(np.sign(difference[:-1]) * np.sign(difference[1:]) < 0):
            root = brentq(lambda g: _sector_gap(p, space, g, pair), scan[i], scan[i + 1], xtol=1e-10)
            if _is_ground_crossing(p, space, root, pair):
                roots.append(float(root))
        # Exact zeros on the scan grid
        for i in np.flatnonzero(difference == 0.0):
            if _is_ground_crossing(p, space, scan[i], pair):
                roots.append(float(scan[i]))

    roots.sort()
    unique = [g for i, g in enumerate(roots) if i == 0 or g - roots[i - 1] > 1e-8]
    logger.info("found %d level crossings for Delta=%g on [%g, %g]", len(unique), p.delta, g_lo, g_hi)
    return unique


def fit_gap_decay(g_values: Sequence[float], gaps: Sequence[float]) -> GapFit:
    """Least-squares fit of log(gap) against the pump"""
    g_values = np.asarray(g_values, dtype=float)
    gaps = np.asarray(gaps, dtype=float)
    if np.any(gaps <= 0):
        raise NonPositiveGap(f"gap decay fit needs positive gaps, got minimum {gaps.min():.3e}")
    log_gaps = np.log(gaps)
    if np.ptp(log_gaps) == 0.0:
        # A constant series is fitted exactly by a flat line
        return GapFit(rate=0.0, intercept=float(log_gaps[0]), r_squared=1.0)
    fit = linregress(g_values, log_gaps)
    return GapFit(rate=float(fit.slope), intercept=float(fit.intercept), r_squared=float(fit.rvalue ** 2))


def spectrum_sweep(base: ModelParams, variable: str, values: Iterable[float], space: FockSpace,
                   levels: int = 6, workers: int = 1) -> list[dict]:
    """Rows (value, level, sector, E, delta) for the lowest levels over a parameter sweep"""
    if variable not in ("pump", "delta"):
        raise ParameterError(f"sweep variable must be 'pump' or 'delta', got {variable!r}")
    values = [float(v) for v in values]

    def run(value: float) -> list[dict]:
        result = spectrum(base.with_changes(**{variable: value}), space)
        gaps = excitation_gaps(result)
        return [{variable: value, "level": n, "sector": int(result.sectors[n]),
                 "energy": float(result.energies[n]), "gap": float(gaps[n])}
                for n in range(min(levels, result.energies.size))]

    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        return list(itertools.chain.from_iterable(executor.map(run, values)))
