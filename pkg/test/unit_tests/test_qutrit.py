import warnings

import numpy as np
import pytest
from numpy.testing import assert_allclose

from fockspace import basis_state
from qutrit import (
    code_space_density, cyclic_shift, dephasing_elements, excited_sector_states, gell_mann, ladder_action_on_zeta,
    leg_overlaps, logical_operators, qutrit_coords, transition_table,
)
from states import cat_states, excited_overlap_modulus, overlap_squeezed_coherent, squeezed_coherent_kets
from utilities import DensityMatrix, FockSpace, ModelParams, ParameterError, WeakSeparationWarning


class TestLadderAction:
    def test_two_term_decomposition(self, four_maxima_point, space_for):
        action = ladder_action_on_zeta(four_maxima_point, space_for(four_maxima_point))
        assert action["residual"] < 1e-8
        assert_allclose(np.abs(action["adag_leak"]) ** 2 - np.abs(action["a_leak"]) ** 2, np.ones(3), atol=1e-12)

    def test_no_annihilation_leakage_without_squeezing(self, space_for):
        p = ModelParams(delta=-9.0, pump=1.0)
        action = ladder_action_on_zeta(p, space_for(p))
        assert np.max(np.abs(action["a_leak"])) == pytest.approx(0.0, abs=1e-12)

    def test_excited_states_are_sector_orthogonal(self, four_maxima_point, space_for):
        space = space_for(four_maxima_point)
        excited = excited_sector_states(four_maxima_point, space)
        cats = cat_states(four_maxima_point, space).cats
        for k in range(3):
            assert excited[k].norm() == pytest.approx(1.0, abs=1e-12)
            for l in range(3):
                if k != l:
                    assert abs(cats[k].inner(excited[l])) == 0.0


class TestLegOverlaps:
    def test_vacuum_overlap_matches_cat_overlap(self, four_maxima_point):
        overlaps = leg_overlaps(four_maxima_point, 0, 1)
        assert overlaps["s00"] == pytest.approx(overlap_squeezed_coherent(four_maxima_point).complex_value, abs=1e-8)
        assert leg_overlaps(four_maxima_point, 2, 2)["s00"] == pytest.approx(1.0)

    def test_one_photon_overlaps_match_fock_space(self, four_maxima_point, space_for):
        space = space_for(four_maxima_point)
        vacua = squeezed_coherent_kets(four_maxima_point, space)
        singles = squeezed_coherent_kets(four_maxima_point, space, n=1)
        overlaps = leg_overlaps(four_maxima_point, 0, 1)
        assert overlaps["s01"] == pytest.approx(vacua[0].inner(singles[1]), abs=1e-6)
        assert overlaps["s10"] == pytest.approx(singles[0].inner(vacua[1]), abs=1e-6)
        assert overlaps["s11"] == pytest.approx(singles[0].inner(singles[1]), abs=1e-6)
        assert abs(overlaps["s01"]) == pytest.approx(excited_overlap_modulus(four_maxima_point), abs=1e-8)

    def test_invalid_leg_index(self, four_maxima_point):
        with pytest.raises(ParameterError):
            leg_overlaps(four_maxima_point, 0, 3)


class TestTransitionTable:
    @pytest.mark.parametrize("g, delta", [(2.2, 1.5), (2.0, -3.0)])
    def test_closed_form_matches_fock_space(self, g, delta, space_for):
        p = ModelParams(delta=delta, pump=g)
        comparison = transition_table(p, space_for(p))
        assert comparison.max_deviation < 1e-6
        numerical = comparison.numerical
        assert np.max(np.abs(numerical.adag_elems - numerical.a_elems.conj().T)) < 1e-10
        assert_allclose(np.abs(numerical.leak_a), np.abs(comparison.closed_form.leak_a), atol=1e-6)
        assert_allclose(np.abs(numerical.leak_adag), np.abs(comparison.closed_form.leak_adag), atol=1e-6)

    def test_annihilation_lowers_the_cat_index(self, four_maxima_point, space_for):
        a_elems = transition_table(four_maxima_point, space_for(four_maxima_point)).numerical.a_elems
        forbidden = 1 - cyclic_shift()
        assert np.max(np.abs(a_elems * forbidden)) == 0.0
        assert np.all(np.abs(a_elems[cyclic_shift() == 1]) > 1.0)

    def test_dephasing_is_diagonal(self, four_maxima_point, space_for):
        elements = dephasing_elements(four_maxima_point, space_for(four_maxima_point))
        assert elements["offdiag_max"] == 0.0
        assert_allclose(elements["diag"], elements["diag_numerical"], atol=1e-6)


class TestLogicalOperators:
    def test_cyclic_shift_layout(self):
        shift = cyclic_shift()
        assert [shift[(k - 1) % 3, k] for k in range(3)] == [1.0, 1.0, 1.0]
        assert_allclose(np.linalg.matrix_power(shift, 3), np.eye(3))

    def test_well_separated_cats_give_a_shift(self, negative_detuning_point, space_for):
        with warnings.catch_warnings():
            warnings.simplefilter("error", WeakSeparationWarning)
            operators = logical_operators(negative_detuning_point, space_for(negative_detuning_point))
        assert_allclose(operators["X_L"], cyclic_shift(), atol=1e-3)
        assert_allclose(np.diag(operators["Z_L"]), np.exp(2j * np.pi * np.arange(3) / 3))

    def test_weak_separation_warns(self, space_for):
        p = ModelParams(delta=0.0, pump=1.0)
        with pytest.warns(WeakSeparationWarning):
            logical_operators(p, space_for(p))


class TestGellMann:
    def test_orthogonality(self):
        matrices = gell_mann()
        assert len(matrices) == 8
        for i, first in enumerate(matrices):
            assert_allclose(first, first.conj().T)
            assert np.trace(first) == pytest.approx(0.0)
            for j, second in enumerate(matrices):
                assert np.trace(first @ second) == pytest.approx(2.0 if i == j else 0.0, abs=1e-12)

    def test_pure_cat_coordinates(self):
        coords = qutrit_coords(np.diag([1.0, 0.0, 0.0]))
        assert (coords.x, coords.y, coords.z) == pytest.approx((1.0, 1 / np.sqrt(3), 0.0))

    def test_equal_superposition_coordinates(self):
        ket = np.array([1.0, 1.0, 0.0]) / np.sqrt(2)
        coords = qutrit_coords(np.outer(ket, ket))
        assert (coords.x, coords.y, coords.z) == pytest.approx((0.0, 1 / np.sqrt(3), 1.0))

    def test_norm_bound(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            m = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
            rho = m @ m.conj().T
            coords = qutrit_coords(rho / np.trace(rho))
            assert coords.x ** 2 + coords.y ** 2 <= 4 / 3 + 1e-9
            assert coords.z >= 0


class TestCodeSpace:
    def test_projection_onto_fock_code(self):
        space = FockSpace(8)
        basis = [basis_state(space, n) for n in range(3)]
        rho = DensityMatrix(np.diag([0.5, 0.25, 0, 0, 0, 0.25, 0, 0]).astype(complex))
        assert_allclose(code_space_density(rho, basis), np.diag([2 / 3, 1 / 3, 0.0]))

    def test_state_outside_code_space(self):
        space = FockSpace(8)
        basis = [basis_state(space, n) for n in range(3)]
        with pytest.raises(ValueError):
            code_space_density(basis_state(space, 5).projector(), basis)
