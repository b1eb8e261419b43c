# Import the ABC helpers for the controller interface
from abc import ABC, abstractmethod
# Import thread pools for parameter sweeps
from concurrent.futures import ThreadPoolExecutor
# Import logging for run milestones
import logging
# Import math helpers
import math
# Import time module with alias
import time as time_module
# Import typing hints
from typing import Callable, Dict, Iterable, List, Sequence

# Import numpy for array handling
import numpy as np

# Import the dynamics entry points
from dynamics import (
    adiabatic_prepare, analytic_cat_populations, cat_decay_time, cubic_ramp, dark_state_dissipator,
    evolve_master_equation, lindblad_spec, lossy_squeezing_parameter, mean_field_stationary, numerical_cats,
    one_over_e_time, reduced_cat_dynamics, reduced_superposition_decay_time, steady_state, steady_state_comparison,
    steady_state_threshold, superposition_decay,
)
# Import the Fock-space helpers
from fockspace import default_space, fidelity, local_maxima, number_op, wigner, wigner_grid
# Import the qutrit coordinates for trajectory export
from qutrit import qutrit_trajectory
# Import the semiclassical analysis
from semiclassical import (
    classify_phase, classify_stationary_points, count_maxima, phase_diagram, potential_grid, threshold_curves,
    thresholds,
)
# Import the spectrum analysis
from spectrum import excitation_gaps, find_level_crossings, ground_triplet, spectrum, spectrum_sweep
# Import the closed-form states
from states import (
    airy_wavefunctions, cat_states, exact_ground_state, gaussian_frame_params, manifold_frequency,
    normalization_report, overlap_squeezed_coherent, squeezed_coherent_kets, squeezing_parameter,
)
# Import the solver registry for back-end names
from factories.solver_factory import SolverFactory
# Import the shared error types and records
from utilities.exceptions import ConfigurationError, NoFiniteStationaryPoint, NumericalError
from utilities.typehints import FockSpace, ModelParams, RampKind, RampSpec
# Import utility functions
from utilities.functions import format_elapsed_time
# Import the run records
from .models import CommandResult, RunConfig

logger = logging.getLogger(__name__)

# Default number of levels per sweep point in spectrum tables
DEFAULT_LEVELS = 6
# Default ramp time for adiabatic preparation, in 1/U
DEFAULT_RAMP_TIME = 10.0


# Estimate the photon content of the stationary state, zero below threshold
def _photons(p: ModelParams) -> float:
    try:
        params = squeezing_parameter(p)[0]
        return params.alpha_mag ** 2 + math.sinh(params.r) ** 2
    except NumericalError:
        return 0.0


# Pick the Fock space: the configured dimension, or a default sized for the largest amplitude in the run
def resolve_space(config: RunConfig, params: Iterable[ModelParams]) -> FockSpace:
    if config.dim is not None:
        return FockSpace(config.dim)
    photons = max((_photons(p) for p in params), default=0.0)
    space = default_space(photons)
    logger.debug("default truncation dim=%d for %.3g photons", space.dim, photons)
    return space


# Map a function over sweep values in a worker pool, keeping the axis order
def parallel_map(function: Callable, values: Sequence, threads: int) -> List:
    with ThreadPoolExecutor(max_workers=max(1, threads)) as executor:
        return list(executor.map(function, values))


# Flatten a gridded field into (re, im, value...) rows
def grid_rows(grid: np.ndarray, fields: Dict[str, np.ndarray]) -> List[Dict[str, float]]:
    rows = []
    flat = grid.reshape(-1)
    columns = {name: field.reshape(-1) for name, field in fields.items()}
    for index, alpha in enumerate(flat):
        row = {"re": float(alpha.real), "im": float(alpha.imag)}
        row.update({name: float(values[index]) for name, values in columns.items()})
        rows.append(row)
    return rows


# Base class for the command controllers
class CommandController(ABC):
    # Command handled by the controller
    command: str = ""

    # Run the command and time it
    def execute(self, config: RunConfig) -> CommandResult:
        start_time = time_module.perf_counter()
        result = self.run(config)
        result.time = int((time_module.perf_counter() - start_time) * 1000)
        logger.info("%s finished in %s", self.command, format_elapsed_time(result.time))
        return result

    @abstractmethod
    def run(self, config: RunConfig) -> CommandResult:
        pass


# Controller for the semiclassical phase diagram
class PhaseDiagramController(CommandController):
    command = "phase-diagram"

    def run(self, config: RunConfig) -> CommandResult:
        p = config.params
        result = CommandResult(self.command)
        pump_sweep, delta_sweep = config.sweep_for("pump"), config.sweep_for("delta")

        if pump_sweep is None and delta_sweep is None:
            # Single-point query
            t = thresholds(p)
            result.summary = {"region": classify_phase(p).value, "maxima": count_maxima(p),
                              "delta_th": t.delta_th, "g_th": t.g_th}
            result.tables["stationary"] = [
                {"re": point.amplitude.real, "im": point.amplitude.imag, "magnitude": abs(point.amplitude),
                 "kind": point.kind.value, "energy": point.energy, "degenerate": point.degenerate}
                for point in classify_stationary_points(p)
            ]
        else:
            g_values = pump_sweep.values() if pump_sweep else [p.pump]
            delta_values = delta_sweep.values() if delta_sweep else [p.delta]
            rows = phase_diagram(g_values, delta_values, kerr=p.kerr)
            result.tables["phase_diagram"] = rows
            result.tables["thresholds"] = threshold_curves(g_values, kerr=p.kerr)
            regions = [row["region"] for row in rows]
            result.summary = {"points": len(rows)}
            result.summary.update({region: regions.count(region) for region in sorted(set(regions))})

        if config.grid is not None:
            re_axis, im_axis, field = potential_grid(p, config.grid.re_extent, config.grid.points)
            grid = re_axis[np.newaxis, :] + 1j * im_axis[:, np.newaxis]
            result.tables["potential"] = grid_rows(grid, {"potential": field})
        return result


# Controller for quasi-energy spectra
class SpectrumController(CommandController):
    command = "spectrum"

    def run(self, config: RunConfig) -> CommandResult:
        p = config.params
        levels = int(config.options.get("levels") or DEFAULT_LEVELS)
        sweeps = [sweep for sweep in config.sweeps if sweep.variable in ("pump", "delta")]
        if len(sweeps) != len(config.sweeps) or len(sweeps) > 1:
            raise ConfigurationError("spectrum sweeps exactly one of pump or delta")
        result = CommandResult(self.command, solver_name=SolverFactory.available()["sector"])

        if sweeps:
            sweep = sweeps[0]
            points = [p.with_changes(**{sweep.variable: float(v)}) for v in sweep.values()]
            space = resolve_space(config, points)
            result.tables["levels"] = spectrum_sweep(p, sweep.variable, sweep.values(), space,
                                                     levels=levels, workers=config.threads)
            if config.options.get("crossings"):
                if sweep.variable != "pump":
                    raise ConfigurationError("the crossing search scans the pump; sweep pump:FROM:TO:N")
                crossings = find_level_crossings(p, (sweep.start, sweep.stop), space,
                                                 points=max(sweep.points, 21))
                result.tables["crossings"] = [
                    {"index": m, "G": g, "predicted": math.sqrt(m * max(p.delta, 0.0) * p.kerr)}
                    for m, g in enumerate(crossings, start=1)
                ]
                result.summary["crossings"] = len(crossings)
        else:
            space = resolve_space(config, [p])
            s = spectrum(p, space)
            gaps = excitation_gaps(s)
            result.tables["levels"] = [
                {"level": n, "sector": int(s.sectors[n]), "energy": float(s.energies[n]),
                 "gap": float(gaps[n])}
                for n in range(min(levels, s.energies.size))
            ]
            result.summary.update(ground_triplet(s))
        result.summary["dim"] = space.dim
        return result


# Controller for closed-form and numerical states
class StatesController(CommandController):
    command = "states"
    kinds = ("cats", "exact", "overlap", "squeezing", "airy")

    def run(self, config: RunConfig) -> CommandResult:
        kind = config.options.get("kind") or "cats"
        if kind not in self.kinds:
            raise ConfigurationError(f"unknown state kind '{kind}', choose from {', '.join(self.kinds)}")
        result = CommandResult(self.command)
        getattr(self, f"_{kind}")(config, result)
        return result

    # Add Wigner functions of the given states on the configured grid
    @staticmethod
    def _wigner(config: RunConfig, result: CommandResult, states: Dict[str, object]) -> None:
        if config.grid is None:
            return
        grid = wigner_grid(config.grid.re_extent, config.grid.im_extent, config.grid.points)
        fields = {name: wigner(state, grid, workers=config.threads) for name, state in states.items()}
        result.tables["wigner"] = grid_rows(grid, fields)

    def _exact(self, config: RunConfig, result: CommandResult) -> None:
        p = config.params
        space = FockSpace(config.dim) if config.dim else default_space(p.g ** 2)
        states = {f"phi{k}": exact_ground_state(p.g, k, space) for k in range(3)}
        result.tables["amplitudes"] = [
            {"n": n, **{name: float(state.amplitudes[n].real) for name, state in states.items()}}
            for n in range(space.dim)
        ]
        for k in range(3):
            report = normalization_report(p.g, k)
            result.summary[f"norm{k}_series"] = report.series
            result.summary[f"norm{k}_closed_form"] = report.closed_form
            result.summary[f"norm{k}_agrees"] = report.agrees
        # Compare with the numerically exact sector tops on the degeneracy line
        exact_line = ModelParams(delta=p.pump ** 2 / p.kerr, pump=p.pump, kerr=p.kerr)
        s = spectrum(exact_line, space)
        for k in range(3):
            result.summary[f"fidelity{k}"] = fidelity(states[f"phi{k}"], s.top_of_sector(k))
        result.summary["dim"] = space.dim
        self._wigner(config, result, states)

    def _cats(self, config: RunConfig, result: CommandResult) -> None:
        p = config.params
        space = resolve_space(config, [p])
        basis = cat_states(p, space)
        numerical = spectrum(p, space)
        result.tables["amplitudes"] = [
            {"n": n, **{f"{part}{k}": float(getattr(basis.cats[k].amplitudes[n], part))
                        for k in range(3) for part in ("real", "imag")}}
            for n in range(space.dim)
        ]
        result.summary.update({"A": basis.overlap.A, "Theta": basis.overlap.Theta, "dim": space.dim})
        for k in range(3):
            result.summary[f"N{k}"] = float(basis.norms[k])
            result.summary[f"N{k}_numeric"] = float(basis.numeric_norms[k])
            result.summary[f"fidelity{k}"] = fidelity(basis.cats[k], numerical.top_of_sector(k))
        self._wigner(config, result, {f"C{k}": basis.cats[k] for k in range(3)})

    def _overlap(self, config: RunConfig, result: CommandResult) -> None:
        p = config.params
        sweep = config.sweep_for("pump")
        values = sweep.values() if sweep else [p.pump]
        points = [p.with_changes(pump=float(g)) for g in values]
        space = resolve_space(config, points)

        def run(point: ModelParams) -> Dict[str, float]:
            row = {"G": point.pump, "A": math.nan, "Theta": math.nan, "numeric_abs": math.nan,
                   "numeric_phase": math.nan}
            try:
                overlap = overlap_squeezed_coherent(point)
                legs = squeezed_coherent_kets(point, space)
            except NumericalError as error:
                logger.warning("overlap undefined at G=%g: %s", point.pump, error)
                return row
            numeric = legs[0].inner(legs[1])
            row.update(A=overlap.A, Theta=overlap.Theta, numeric_abs=abs(numeric),
                       numeric_phase=float(np.angle(numeric)))
            return row

        result.tables["overlap"] = parallel_map(run, points, config.threads)
        result.summary["dim"] = space.dim

    def _squeezing(self, config: RunConfig, result: CommandResult) -> None:
        p = config.params
        sweep = config.sweep_for("delta")
        values = sweep.values() if sweep else [p.delta]
        rows = []
        for delta in values:
            point = p.with_changes(delta=float(delta))
            row = {"Delta": point.delta, "r": math.nan, "omega": math.nan, "lambda": math.nan, "Omega": math.nan}
            try:
                frame = gaussian_frame_params(point)
                row.update(r=squeezing_parameter(point)[0].r, omega=frame.omega, **{"lambda": frame.lam},
                           Omega=manifold_frequency(point).Omega)
            except NumericalError as error:
                logger.debug("no stable frame at Delta=%g: %s", point.delta, error)
            rows.append(row)
        result.tables["squeezing"] = rows

    def _airy(self, config: RunConfig, result: CommandResult) -> None:
        pair = airy_wavefunctions(config.params.g)
        result.tables["airy"] = [{"x": float(x), "phi_a": float(a), "phi_b": float(b)}
                                 for x, a, b in zip(pair.x, pair.phi_a, pair.phi_b)]
        result.summary.update({"overlap": pair.overlap, "ode_residual": pair.ode_residual})


# Controller for time evolution runs
class EvolveController(CommandController):
    command = "evolve"
    modes = ("prepare", "cat-decay", "superposition", "reduced")

    def run(self, config: RunConfig) -> CommandResult:
        mode = config.options.get("mode") or "prepare"
        if mode not in self.modes:
            raise ConfigurationError(f"unknown evolve mode '{mode}', choose from {', '.join(self.modes)}")
        result = CommandResult(self.command, solver_name=SolverFactory.available()["adaptive"])
        getattr(self, "_" + mode.replace("-", "_"))(config, result)
        return result

    @staticmethod
    def _sector(config: RunConfig) -> int:
        sector = int(config.options.get("sector") or 0)
        if sector not in (0, 1, 2):
            raise ConfigurationError(f"sector must be 0, 1 or 2, got {sector}")
        return sector

    @staticmethod
    def _ramp(p: ModelParams, config: RunConfig, ramp_time: float) -> RampSpec:
        kind = config.options.get("ramp_kind") or "cubic"
        if kind == "cubic":
            return cubic_ramp(p, ramp_time)
        if kind == "quartic":
            return RampSpec(RampKind.QUARTIC_EXPONENTIAL, target_pump=p.pump, ramp_time=ramp_time,
                            also_ramp_detuning=p.delta != 0, target_detuning=p.delta)
        raise ConfigurationError(f"unknown ramp kind '{kind}', choose cubic or quartic")

    def _prepare(self, config: RunConfig, result: CommandResult) -> None:
        p = config.params
        k = self._sector(config)
        ramp_time = float(config.options.get("ramp_time") or DEFAULT_RAMP_TIME)
        sweep = next((s for s in config.sweeps if s.variable in ("ramp-time", "kappa")), None)
        space = resolve_space(config, [p])
        if sweep is None:
            outcome = adiabatic_prepare(p, k, self._ramp(p, config, ramp_time), space)
            result.tables["populations"] = [{"cat": j, "population": float(outcome.populations[j])}
                                            for j in range(3)]
            result.summary.update({f"population{j}": float(outcome.populations[j]) for j in range(3)})
            result.summary["purity"] = outcome.rho_final.purity()
        else:
            def run(value: float) -> Dict[str, float]:
                if sweep.variable == "kappa":
                    point, t_r = p.with_changes(kappa=float(value)), ramp_time
                else:
                    point, t_r = p, float(value)
                outcome = adiabatic_prepare(point, k, self._ramp(point, config, t_r), space)
                return {sweep.variable: float(value), **{f"p{j}": float(outcome.populations[j]) for j in range(3)}}

            result.tables["populations"] = parallel_map(run, list(sweep.values()), config.threads)
        result.summary["dim"] = space.dim

    def _cat_decay(self, config: RunConfig, result: CommandResult) -> None:
        p = config.params
        k = self._sector(config)
        space = resolve_space(config, [p])
        magnitude = squeezing_parameter(p)[0].alpha_mag
        rate = 1.5 * p.kappa * magnitude ** 2
        t_max = float(config.options.get("t_max") or (3.0 / rate if rate > 0 else 10.0))
        times = np.linspace(0.0, t_max, int(config.options.get("points") or 201))

        cats = numerical_cats(p, space)
        observables = {f"p{j}": cats[j] for j in range(3)}
        extra = ()
        if config.options.get("dark_dissipation") and p.kappa_e > 0:
            extra = ((dark_state_dissipator(p, space), p.kappa_e),)
        series = evolve_master_equation(lindblad_spec(p, space, extra), cats[k].projector(), times,
                                        observables=observables)
        rows = []
        deviation = 0.0
        for i, t in enumerate(series.times):
            row = {"t": float(t), "trace": float(series.channel("trace")[i]),
                   "purity": float(series.channel("purity")[i])}
            for j in range(3):
                simulated = float(series.channel(f"p{j}")[i])
                # Labels relative to the initial cat
                analytic = analytic_cat_populations(p.kappa, magnitude, t, (j - k) % 3)
                row[f"p{j}"] = simulated
                row[f"p{j}_analytic"] = analytic
                deviation = max(deviation, abs(simulated - analytic))
            rows.append(row)
        result.tables["populations"] = rows
        result.tables["qutrit"] = qutrit_trajectory(series, cats)
        result.summary.update({"max_analytic_deviation": deviation, "dim": space.dim})
        if p.kappa > 0:
            result.summary["t_1e_predicted"] = cat_decay_time(p.kappa, magnitude)
            try:
                result.summary["t_1e"] = one_over_e_time(series, f"p{k}", baseline=1 / 3)
            except NumericalError as error:
                logger.warning("no 1/e crossing within the run: %s", error)

    def _superposition(self, config: RunConfig, result: CommandResult) -> None:
        p = config.params
        if p.kappa <= 0:
            raise ConfigurationError("superposition decay needs --kappa > 0")
        space = resolve_space(config, [p])
        t_1e, series = superposition_decay(p, space)
        result.tables["population"] = [{"t": float(t), "population": float(v)}
                                       for t, v in zip(series.times, series.channel("population"))]
        result.summary.update({"t_1e": t_1e, "rate": 1.0 / t_1e, "dim": space.dim})
        if config.options.get("compare_reduced"):
            result.summary["t_1e_reduced"] = reduced_superposition_decay_time(p, space)

    def _reduced(self, config: RunConfig, result: CommandResult) -> None:
        p = config.params
        k = self._sector(config)
        space = resolve_space(config, [p])
        magnitude = squeezing_parameter(p)[0].alpha_mag
        rate = 1.5 * p.kappa * magnitude ** 2
        t_max = float(config.options.get("t_max") or (3.0 / rate if rate > 0 else 10.0))
        times = np.linspace(0.0, t_max, int(config.options.get("points") or 201))
        s = spectrum(p, space)
        rho0 = np.zeros((3, 3))
        rho0[k, k] = 1.0
        series = reduced_cat_dynamics(p, rho0, times, [s.top_energy(j) for j in range(3)])
        result.tables["populations"] = [
            {"t": float(t), **{f"p{j}": float(series.channel(f"p{j}")[i]) for j in range(3)},
             **{f"p{j}_analytic": analytic_cat_populations(p.kappa, magnitude, t, (j - k) % 3) for j in range(3)}}
            for i, t in enumerate(series.times)
        ]
        result.summary["dim"] = space.dim


# Controller for steady states
class SteadyController(CommandController):
    command = "steady"
    methods = ("null", "long-time", "both")

    def run(self, config: RunConfig) -> CommandResult:
        p = config.params
        method = config.options.get("method") or "null"
        if method not in self.methods:
            raise ConfigurationError(f"unknown steady-state method '{method}'")
        if p.kappa <= 0 and config.sweep_for("kappa") is None:
            raise ConfigurationError("steady states need --kappa > 0")
        result = CommandResult(self.command, solver_name=SolverFactory.available()["null-space"])
        space = resolve_space(config, [p])

        markers = mean_field_stationary(p)
        result.tables["mean_field"] = [{"re": a.real, "im": a.imag, "magnitude": abs(a)} for a in markers]
        result.summary["G_thr_ss"] = steady_state_threshold(p)
        try:
            result.summary["r_lossy"] = lossy_squeezing_parameter(p)
        except (NoFiniteStationaryPoint, NumericalError) as error:
            logger.debug("no lossy squeezing parameter: %s", error)

        sweep = config.sweep_for("kappa")
        if sweep is not None:
            def run(kappa: float) -> Dict[str, float]:
                point = p.with_changes(kappa=float(kappa))
                rho = steady_state(lindblad_spec(point, space), method="null")
                return {"kappa": float(kappa), "photons": float(rho.expectation(number_op(space)).real),
                        "purity": rho.purity()}

            result.tables["steady"] = parallel_map(run, list(sweep.values()), config.threads)
            result.summary["dim"] = space.dim
            return result

        spec = lindblad_spec(p, space)
        if method == "both":
            comparison = steady_state_comparison(spec)
            rho = comparison.null_space
            result.summary["trace_distance"] = comparison.trace_distance
        else:
            rho = steady_state(spec, method=method)
        result.summary.update({"photons": float(rho.expectation(number_op(space)).real),
                               "purity": rho.purity(), "dim": space.dim})

        if config.grid is not None:
            grid = wigner_grid(config.grid.re_extent, config.grid.im_extent, config.grid.points)
            field = wigner(rho, grid, workers=config.threads)
            result.tables["wigner"] = grid_rows(grid, {"W": field})
            result.tables["maxima"] = [
                {"re": peak.real, "im": peak.imag, "W": float(field[np.unravel_index(
                    np.argmin(np.abs(grid - peak)), grid.shape)])}
                for peak in local_maxima(field, grid)
            ]
        return result


# Registry of command controllers
CONTROLLERS: Dict[str, type] = {
    controller.command: controller
    for controller in (PhaseDiagramController, SpectrumController, StatesController, EvolveController,
                       SteadyController)
}
