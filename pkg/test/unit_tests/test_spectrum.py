import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from fockspace import check_convergence, fidelity
from solvers import DenseEigenSolver, SectorEigenSolver
from spectrum import (
    build_hamiltonian, degenerate_pairs, diagonalize_by_sector, excitation_gaps, find_level_crossings, fit_gap_decay,
    ground_triplet, spectrum, spectrum_sweep, undriven_energies,
)
from states import absolute_level_energy, exact_ground_state
from utilities import FockSpace, ModelParams, NonPositiveGap, OperatorMatrix, ParameterError, StructureError


class TestHamiltonian:
    def test_hamiltonian_is_real_symmetric(self):
        h = build_hamiltonian(ModelParams(delta=0.3, pump=1.7), FockSpace(40)).entries
        assert np.max(np.abs(h - h.T)) == 0.0
        assert np.max(np.abs(h.imag)) == 0.0

    def test_undriven_spectrum_matches_diagonal(self):
        p = ModelParams(delta=0.7, pump=0.0)
        space = FockSpace(30)
        assert_allclose(np.sort(spectrum(p, space).energies), np.sort(undriven_energies(p, space)), atol=1e-10)

    def test_undriven_degeneracies(self):
        p = ModelParams(delta=-4.0, pump=0.0)
        space = FockSpace(10)
        assert degenerate_pairs(p, space, tolerance=1e-12) == [(0, 5), (1, 4), (2, 3)]
        energies = undriven_energies(p, space)
        assert [energies[n] for n in (0, 1, 2)] == [0.0, 4.0, 6.0]


class TestEigenSolvers:
    def test_sector_and_dense_solvers_agree(self, four_maxima_point):
        space = FockSpace(60)
        h = build_hamiltonian(four_maxima_point, space)
        blocked = SectorEigenSolver().solve(h, space)
        dense = DenseEigenSolver().solve(h, space)
        assert_allclose(blocked.energies, dense.energies, atol=1e-9)
        assert list(blocked.sectors[:3]) == list(dense.sectors[:3])

    def test_energies_are_descending(self, four_maxima_point):
        result = spectrum(four_maxima_point, FockSpace(60))
        assert np.all(np.diff(result.energies) <= 0)
        assert excitation_gaps(result)[0] == 0.0
        assert np.all(excitation_gaps(result) >= 0)

    def test_sector_labels_match_support(self, four_maxima_point):
        result = spectrum(four_maxima_point, FockSpace(45))
        for k in range(3):
            weights = np.abs(result.top_of_sector(k).amplitudes) ** 2
            assert weights[np.arange(45) % 3 != k].sum() == 0.0

    def test_structure_violation_is_rejected(self):
        entries = np.zeros((6, 6))
        entries[0, 1] = entries[1, 0] = 1.0
        with pytest.raises(StructureError):
            SectorEigenSolver.check_structure(OperatorMatrix(entries, hermitian=True))

    def test_dimension_mismatch_is_rejected(self):
        h = build_hamiltonian(ModelParams(delta=0.0, pump=1.0), FockSpace(12))
        with pytest.raises(StructureError):
            SectorEigenSolver().solve(h, FockSpace(15))

    def test_solver_names(self):
        assert SectorEigenSolver.get_solver_name() == "Sector-Blocked Eigensolver"
        assert DenseEigenSolver.get_solver_name() == "Dense Eigensolver"

    def test_registered_solver_choice(self):
        space = FockSpace(30)
        h = build_hamiltonian(ModelParams(delta=-1.0, pump=1.2), space)
        assert_allclose(diagonalize_by_sector(h, space, "dense").energies,
                        diagonalize_by_sector(h, space).energies, atol=1e-9)
        with pytest.raises(ParameterError):
            diagonalize_by_sector(h, space, "lanczos")


class TestDegeneracyLine:
    @pytest.mark.parametrize("pump", [1.0, 2.0, 4.0])
    def test_exact_twofold_degeneracy(self, pump):
        p = ModelParams(delta=pump ** 2, pump=pump)
        space = FockSpace(150)
        result = spectrum(p, space)
        assert abs(result.energies[0] - result.energies[1]) < 1e-9
        assert set(result.sectors[:2]) == {0, 1}
        assert result.energies[0] == pytest.approx(pump ** 2, abs=1e-9)
        for k in (0, 1):
            assert fidelity(result.top_of_sector(k), exact_ground_state(pump, k, space)) > 1 - 1e-8

    @pytest.mark.parametrize("pump", [0.5, 1.3, 3.0])
    def test_frame_prediction_on_degeneracy_line(self, pump):
        p = ModelParams(delta=pump ** 2, pump=pump)
        assert absolute_level_energy(p, 0) == pytest.approx(pump ** 2, abs=1e-12 * max(1.0, pump ** 2))


class TestApproximateSpectrum:
    def test_triplet_mean_matches_frame_ground_energy(self):
        p = ModelParams(delta=2.0, pump=2.0)
        result = spectrum(p, FockSpace(120))
        mean = float(np.mean(result.energies[:3]))
        predicted = absolute_level_energy(p, 0)
        assert abs(mean - predicted) < 0.05 * abs(predicted)

    def test_ground_triplet_spans_all_sectors(self):
        result = spectrum(ModelParams(delta=-3.0, pump=2.0), FockSpace(90))
        triplet = ground_triplet(result)
        assert sorted(triplet["sectors"]) == [0, 1, 2]
        assert triplet["spread"] < triplet["gap_above"]

    def test_eigenvalues_converge_with_dimension(self, four_maxima_point):
        report = check_convergence(lambda space: spectrum(four_maxima_point, space).energies[:6],
                                   FockSpace(90), 1e-8, extra=30)
        assert report.compared_dim == 120
        assert report.converged


class TestCrossings:
    def test_first_crossing_at_root_of_detuning(self):
        p = ModelParams(delta=2.0, pump=1.0)
        crossings = find_level_crossings(p, (1.2, 1.6), FockSpace(60))
        assert any(abs(g - math.sqrt(2.0)) < 1e-3 for g in crossings)

    def test_no_crossings_for_negative_detuning(self):
        assert find_level_crossings(ModelParams(delta=-1.0, pump=1.0), (0.5, 2.0), FockSpace(30)) == []

    def test_invalid_range(self):
        with pytest.raises(ParameterError):
            find_level_crossings(ModelParams(delta=1.0, pump=1.0), (2.0, 1.0), FockSpace(30))


class TestGapFit:
    def test_exponential_series_is_recovered(self):
        g = np.linspace(1.0, 3.0, 9)
        fit = fit_gap_decay(g, np.exp(1.0 - 2.0 * g))
        assert fit.rate == pytest.approx(-2.0)
        assert fit.intercept == pytest.approx(1.0)
        assert fit.r_squared == pytest.approx(1.0)

    def test_zero_gap_is_rejected(self):
        with pytest.raises(NonPositiveGap):
            fit_gap_decay([1.0, 2.0], [0.1, 0.0])


class TestSweep:
    def test_row_layout(self):
        rows = spectrum_sweep(ModelParams(delta=1.0, pump=0.0), "pump", [0.0, 0.5, 1.0], FockSpace(30),
                              levels=4, workers=2)
        assert len(rows) == 12
        assert [row["pump"] for row in rows[:4]] == [0.0] * 4
        assert rows[0]["gap"] == 0.0

    def test_unknown_variable(self):
        with pytest.raises(ParameterError):
            spectrum_sweep(ModelParams(delta=1.0, pump=1.0), "kappa", [0.1], FockSpace(30))
