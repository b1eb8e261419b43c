import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from dynamics import evolve_master_equation, lindblad_spec, steady_state, steady_state_comparison
from factories.solver_factory import SolverFactory
from fockspace import annihilation_op, basis_state
from solvers import (
    AdaptiveLindbladSolver, LiouvillianNullSolver, LongTimeSolver, PropagatorLindbladSolver, evolve_ket,
    lindblad_rhs, liouvillian,
)
from spectrum import build_hamiltonian
from utilities import (
    DecayAnalyzer, DegenerateSteadyState, FockSpace, LindbladSpec, ModelParams, NoCrossing, ParameterError,
    TimeSeries,
)

LOSSY = ModelParams(delta=0.5, pump=0.3, kappa=0.2)


@pytest.fixture
def lossy_spec() -> LindbladSpec:
    return lindblad_spec(LOSSY, FockSpace(10))


def time_dependent(spec: LindbladSpec) -> LindbladSpec:
    h = spec.hamiltonian_at(0.0)
    return LindbladSpec(lambda t: (1.0 + 0.1 * t) * h, spec.jumps, dim=spec.dim)


class TestSolverFactory:
    def test_registry(self):
        available = SolverFactory.available()
        assert set(available) == {"sector", "dense", "adaptive", "propagator", "null-space", "long-time"}
        assert available["propagator"] == "Liouvillian Propagator"
        assert available["null-space"] == "Liouvillian Null-Space Solver"

    def test_options_are_forwarded(self):
        solver = SolverFactory.get_solver("adaptive", rtol=1e-6)
        assert isinstance(solver, AdaptiveLindbladSolver)
        assert solver.rtol == 1e-6

    def test_unknown_solver(self):
        with pytest.raises(ValueError, match="Unknown solver"):
            SolverFactory.get_solver("monte-carlo")


class TestLiouvillian:
    def test_vectorized_generator_matches_rhs(self, lossy_spec):
        rng = np.random.default_rng(3)
        m = rng.normal(size=(10, 10)) + 1j * rng.normal(size=(10, 10))
        rho = m @ m.conj().T
        rho /= np.trace(rho)
        jump = math.sqrt(LOSSY.kappa) * annihilation_op(FockSpace(10)).entries
        expected = lindblad_rhs(lossy_spec.hamiltonian_at(0.0), [(jump, jump.conj().T @ jump)], rho)
        assert_allclose(liouvillian(lossy_spec) @ rho.reshape(-1), expected.reshape(-1), atol=1e-12)

    def test_trace_is_preserved(self, lossy_spec):
        generator = liouvillian(lossy_spec).toarray()
        trace_row = np.eye(10).reshape(-1)
        assert np.max(np.abs(trace_row @ generator)) < 1e-12


class TestEvolution:
    def test_propagator_and_adaptive_agree(self, lossy_spec):
        rho0 = basis_state(FockSpace(10), 0).projector()
        times = np.linspace(0.0, 2.0, 11)
        adaptive = AdaptiveLindbladSolver().solve(lossy_spec, rho0, times)
        exact = PropagatorLindbladSolver().solve(lossy_spec, rho0, times)
        for left, right in zip(adaptive.states, exact.states):
            assert np.max(np.abs(left.entries - right.entries)) < 1e-6
        assert_allclose(adaptive.channel("trace"), 1.0, atol=1e-8)
        assert_allclose(exact.channel("trace"), 1.0, atol=1e-12)

    def test_long_adaptive_run_keeps_a_valid_state(self, lossy_spec):
        rho0 = basis_state(FockSpace(10), 3).projector()
        times = np.linspace(0.0, 40.0, 41)
        adaptive = AdaptiveLindbladSolver().solve(lossy_spec, rho0, times)
        exact = PropagatorLindbladSolver().solve(lossy_spec, rho0, times)
        assert_allclose(adaptive.channel("trace"), 1.0, atol=1e-8)
        for state in adaptive.states:
            entries = state.entries
            assert np.max(np.abs(entries - entries.conj().T)) < 1e-8
            assert np.linalg.eigvalsh(entries)[0] > -1e-8
        assert np.max(np.abs(adaptive.states[-1].entries - exact.states[-1].entries)) < 1e-6

    def test_observables_become_channels(self, lossy_spec):
        space = FockSpace(10)
        vacuum = basis_state(space, 0)
        series = evolve_master_equation(lossy_spec, vacuum.projector(), [0.0, 0.5, 1.0],
                                        observables={"vacuum": vacuum}, method="propagator", store_states=False)
        assert series.states is None
        assert series.channel("vacuum")[0] == pytest.approx(1.0)
        assert series.channel("vacuum")[-1] < 1.0
        assert series.channel("purity")[0] == pytest.approx(1.0)

    def test_unknown_method(self, lossy_spec):
        with pytest.raises(ParameterError):
            evolve_master_equation(lossy_spec, basis_state(FockSpace(10), 0).projector(), [0.0, 1.0],
                                   method="euler")

    def test_propagator_rejects_time_dependence(self, lossy_spec):
        with pytest.raises(ParameterError):
            PropagatorLindbladSolver().solve(time_dependent(lossy_spec), basis_state(FockSpace(10), 0).projector(),
                                             [0.0, 1.0])

    def test_times_must_increase(self, lossy_spec):
        with pytest.raises(ParameterError):
            AdaptiveLindbladSolver().solve(lossy_spec, basis_state(FockSpace(10), 0).projector(), [0.0, 1.0, 1.0])

    def test_ket_evolution_of_an_eigenstate(self):
        h = build_hamiltonian(ModelParams(delta=0.7, pump=0.0), FockSpace(12)).entries
        psi = evolve_ket(lambda t: h, basis_state(FockSpace(12), 2), [0.0, 0.5, 1.0])
        assert psi[-1].amplitudes[2] == pytest.approx(np.exp(-1j * h[2, 2].real), abs=1e-7)


class TestSteadyStateSolvers:
    def test_methods_agree(self):
        spec = lindblad_spec(ModelParams(delta=0.5, pump=0.5, kappa=0.5), FockSpace(20))
        comparison = steady_state_comparison(spec)
        assert comparison.trace_distance < 1e-6
        assert comparison.null_space.purity() <= 1.0 + 1e-12

    def test_steady_state_is_stationary(self, lossy_spec):
        rho = steady_state(lossy_spec).entries
        generator = liouvillian(lossy_spec)
        assert np.max(np.abs(generator @ rho.reshape(-1))) < 1e-10

    @pytest.mark.parametrize("solver", [LiouvillianNullSolver, LongTimeSolver])
    def test_undamped_model_is_degenerate(self, solver):
        spec = lindblad_spec(ModelParams(delta=0.5, pump=0.3), FockSpace(10))
        with pytest.raises(DegenerateSteadyState):
            solver().solve(spec)

    @pytest.mark.parametrize("solver", [LiouvillianNullSolver, LongTimeSolver])
    def test_time_dependent_model_is_rejected(self, solver, lossy_spec):
        with pytest.raises(DegenerateSteadyState):
            solver().solve(time_dependent(lossy_spec))

    def test_unknown_method(self, lossy_spec):
        with pytest.raises(ParameterError):
            steady_state(lossy_spec, method="arnoldi")


class TestDecayAnalyzer:
    def test_exponential_decay_time(self):
        times = np.linspace(0.0, 3.0, 301)
        analyzer = DecayAnalyzer(TimeSeries(times, {"p": np.exp(-times)}))
        assert analyzer.one_over_e_time("p") == pytest.approx(1.0, abs=1e-4)
        assert analyzer.decay_rate("p") == pytest.approx(1.0, abs=1e-4)

    def test_decay_towards_a_baseline(self):
        times = np.linspace(0.0, 4.0, 401)
        analyzer = DecayAnalyzer(TimeSeries(times, {"p": 1 / 3 + (2 / 3) * np.exp(-0.5 * times)}))
        assert analyzer.one_over_e_time("p", baseline=1 / 3) == pytest.approx(2.0, abs=1e-3)

    def test_flat_channel_never_crosses(self):
        times = np.linspace(0.0, 1.0, 5)
        with pytest.raises(NoCrossing):
            DecayAnalyzer(TimeSeries(times, {"p": np.ones(5)})).one_over_e_time("p")

    def test_times_must_increase(self):
        with pytest.raises(ParameterError):
            TimeSeries(np.array([0.0, 1.0, 0.5]), {})
