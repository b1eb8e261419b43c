import numpy as np
import pytest
from scipy.integrate import trapezoid
from numpy.testing import assert_allclose

from conditioning import SectorSupportCheck, UnitarityCheck
from fockspace import (
    annihilation_op, basis_state, check_convergence, coherent_state, creation_op, default_space,
    displaced_squeezed_number_state, fidelity, integrate_grid, local_maxima, number_op, project_onto_sector,
    quadrature_marginals, require_photons, sector_indices, squeeze_op, trace_distance, wigner, wigner_grid,
    z3_rotation,
)
from spectrum import build_hamiltonian
from utilities import (
    DensityMatrix, DimensionMismatch, FockSpace, InvalidDensityMatrix, ModelParams, ParameterError, TruncationError,
)


class TestOperators:
    def test_commutator_is_identity_below_the_edge(self):
        space = FockSpace(30)
        a, adag = annihilation_op(space).entries, creation_op(space).entries
        commutator = a @ adag - adag @ a
        assert_allclose(commutator[:-1, :-1], np.eye(29), atol=1e-12)

    def test_number_operator_counts_levels(self):
        space = FockSpace(10)
        assert number_op(space).expectation(basis_state(space, 7)) == pytest.approx(7.0)

    def test_hamiltonian_commutes_with_z3_rotation(self):
        space = FockSpace(60)
        h = build_hamiltonian(ModelParams(delta=1.3, pump=0.7), space).entries
        z = z3_rotation(space).entries
        assert np.max(np.abs(h @ z - z @ h)) == 0.0

    def test_sector_indices(self):
        assert list(sector_indices(FockSpace(10), 1)) == [1, 4, 7]
        with pytest.raises(ParameterError):
            sector_indices(FockSpace(10), 3)

    def test_projection_lands_in_sector(self):
        space = FockSpace(40)
        projected = project_onto_sector(coherent_state(space, 1.2), 2)
        SectorSupportCheck(2).verify(projected)

    def test_coherent_state_mean_amplitude(self):
        space = FockSpace(40)
        alpha = 1.0 + 0.5j
        state = coherent_state(space, alpha)
        assert state.norm() == pytest.approx(1.0)
        assert annihilation_op(space).expectation(state) == pytest.approx(alpha, abs=1e-10)

    def test_basis_state_out_of_range(self):
        with pytest.raises(ParameterError):
            basis_state(FockSpace(5), 5)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            basis_state(FockSpace(5), 0).inner(basis_state(FockSpace(6), 0))


class TestGaussianUnitaries:
    def test_squeeze_operator_is_unitary_on_interior(self):
        UnitarityCheck().verify(squeeze_op(FockSpace(60), 0.4, 0.3))

    def test_displaced_squeezed_photon_number(self):
        space = FockSpace(60)
        state = displaced_squeezed_number_state(space, 1.0, 0.3, 0.0)
        photons = number_op(space).expectation(state).real
        assert photons == pytest.approx(1.0 + np.sinh(0.3) ** 2, abs=1e-8)

    def test_photon_budget_is_enforced(self):
        with pytest.raises(TruncationError):
            require_photons(FockSpace(60), 20.0, "test state")

    def test_default_space(self):
        assert default_space().dim == 90
        assert default_space(20.0, 0.5).dim == 275


class TestPhaseSpace:
    def test_vacuum_wigner_peak_and_normalization(self):
        space = FockSpace(20)
        grid = wigner_grid(4.0, 4.0, 201)
        field = wigner(basis_state(space, 0), grid)
        center = field[100, 100]
        assert center == pytest.approx(2 / np.pi, rel=1e-12)
        assert integrate_grid(field, grid) == pytest.approx(1.0, abs=1e-4)

    def test_wigner_workers_give_identical_fields(self):
        space = FockSpace(30)
        state = coherent_state(space, 0.8 - 0.4j)
        grid = wigner_grid(3.0, 3.0, 101)
        assert_allclose(wigner(state, grid, workers=3), wigner(state, grid), atol=1e-14)

    def test_fock_one_wigner_is_negative_at_origin(self):
        field = wigner(basis_state(FockSpace(20), 1), np.array([[0j]]))
        assert field[0, 0] == pytest.approx(-2 / np.pi)

    def test_grid_beyond_safe_disk(self):
        with pytest.raises(TruncationError):
            wigner(basis_state(FockSpace(8), 0), wigner_grid(5.0, 5.0, 11))

    def test_coherent_state_maximum_and_marginals(self):
        space = FockSpace(30)
        alpha = 1.0 + 0.5j
        grid = wigner_grid(3.0, 3.0, 121)
        field = wigner(coherent_state(space, alpha), grid)
        peaks = local_maxima(field, grid, floor=1e-6)
        assert len(peaks) == 1
        assert abs(peaks[0] - alpha) < 0.05
        (x, position), (p, momentum) = quadrature_marginals(field, grid)
        assert trapezoid(position, x) == pytest.approx(1.0, abs=1e-4)
        assert trapezoid(momentum, p) == pytest.approx(1.0, abs=1e-4)

    def test_fidelity_and_trace_distance(self):
        space = FockSpace(10)
        zero, one = basis_state(space, 0), basis_state(space, 1)
        assert fidelity(zero, one) == 0.0
        assert trace_distance(zero.projector(), one.projector()) == pytest.approx(1.0)
        assert trace_distance(zero.projector(), zero.projector()) == pytest.approx(0.0, abs=1e-14)


class TestTruncation:
    def test_convergence_report(self):
        report = check_convergence(lambda space: coherent_state(space, 1.0).amplitudes[:5].real, FockSpace(30), 1e-10)
        assert report.compared_dim == 60
        assert report.converged

    def test_invalid_density_matrix(self):
        with pytest.raises(InvalidDensityMatrix):
            DensityMatrix(np.diag([0.7, 0.7]))
        with pytest.raises(InvalidDensityMatrix):
            DensityMatrix(np.diag([1.2, -0.2]))
