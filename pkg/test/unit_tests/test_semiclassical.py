import math

import numpy as np
import pytest

from semiclassical import (
    classify_phase, classify_stationary_points, count_grid_maxima, count_maxima, energy_barrier, gradient,
    meta_potential, phase_diagram, potential_grid, ray_potential, stationarity_residual, stationary_amplitudes,
    threshold_curves, thresholds,
)
from utilities import ModelParams, NoFiniteStationaryPoint, PhaseRegion, PointKind


class TestMetaPotential:
    def test_ray_potential_matches_real_axis(self):
        p = ModelParams(delta=0.4, pump=1.1)
        for x in (0.3, 1.0, 2.5):
            assert meta_potential(p, x) == pytest.approx(float(ray_potential(p, x)))

    def test_threefold_symmetry(self):
        p = ModelParams(delta=-0.7, pump=0.9)
        alpha = 1.3 + 0.4j
        rotated = alpha * np.exp(2j * np.pi / 3)
        assert meta_potential(p, rotated) == pytest.approx(meta_potential(p, alpha), rel=1e-12)

    def test_gradient_vanishes_at_stationary_points(self):
        p = ModelParams(delta=0.5, pump=1.0)
        for point in classify_stationary_points(p):
            assert np.max(np.abs(gradient(p, point.amplitude))) < 1e-10
            assert stationarity_residual(p, point.amplitude) < 1e-10

    def test_potential_grid_shape(self):
        re_axis, im_axis, field = potential_grid(ModelParams(delta=0.0, pump=1.0), 2.0, 21)
        assert field.shape == (21, 21)
        assert re_axis[0] == -2.0 and im_axis[-1] == 2.0


class TestStationaryPoints:
    def test_amplitude_formula(self):
        p = ModelParams(delta=0.5, pump=1.0)
        amplitudes = stationary_amplitudes(p)
        root = math.sqrt(9 - 4)
        assert amplitudes.mag_plus == pytest.approx((3 + root) / 4)
        assert amplitudes.mag_minus == pytest.approx((3 - root) / 4)

    def test_no_finite_point_beyond_threshold(self):
        with pytest.raises(NoFiniteStationaryPoint):
            stationary_amplitudes(ModelParams(delta=2.0, pump=1.0))

    def test_barrier_is_positive(self):
        assert energy_barrier(ModelParams(delta=0.5, pump=1.0)) > 0

    def test_degeneracy_line_places_maximum_at_g(self):
        # On Delta = G^2 / U the outer amplitude equals G / U and the potential there vanishes
        p = ModelParams(delta=4.0, pump=2.0)
        amplitudes = stationary_amplitudes(p)
        assert amplitudes.mag_plus == pytest.approx(2.0)
        assert float(ray_potential(p, amplitudes.mag_plus)) == pytest.approx(0.0, abs=1e-12)


class TestPhaseDiagram:
    @pytest.mark.parametrize("delta, region, maxima", [
        (2.0, PhaseRegion.SINGLE_MAXIMUM, 1),
        (0.5, PhaseRegion.FOUR_MAXIMA, 4),
        (-1.0, PhaseRegion.THREE_MAXIMA, 3),
    ])
    def test_regions_and_maxima(self, delta, region, maxima):
        p = ModelParams(delta=delta, pump=1.0)
        assert classify_phase(p) is region
        assert count_maxima(p) == maxima

    @pytest.mark.parametrize("delta", [0.5, -1.0])
    def test_grid_count_agrees_with_hessian(self, delta):
        p = ModelParams(delta=delta, pump=1.0)
        assert count_grid_maxima(p) == count_maxima(p)

    def test_origin_kind_follows_detuning(self):
        origin = classify_stationary_points(ModelParams(delta=-1.0, pump=1.0))[0]
        assert origin.kind is PointKind.MINIMUM
        origin = classify_stationary_points(ModelParams(delta=1.0, pump=1.0))[0]
        assert origin.kind is PointKind.MAXIMUM

    def test_thresholds(self):
        t = thresholds(ModelParams(delta=2.0, pump=1.0))
        assert t.delta_th == pytest.approx(9 / 8)
        assert t.g_th == pytest.approx(4 / 3)
        assert t.fourfold_delta == pytest.approx(1.0)
        assert t.zero_squeeze_delta == pytest.approx(-9.0)

    def test_phase_diagram_rows(self):
        rows = phase_diagram([0.5, 1.0], [-1.0, 0.5, 2.0])
        assert len(rows) == 6
        regions = {(row["G"], row["Delta"]): row["region"] for row in rows}
        assert regions[(1.0, 2.0)] == "SingleMaximum"
        assert regions[(1.0, 0.5)] == "FourMaxima"
        assert regions[(0.5, -1.0)] == "ThreeMaxima"
        assert math.isnan(next(row for row in rows if row["Delta"] == 2.0)["alpha_plus"])

    def test_threshold_curves(self):
        rows = threshold_curves([0.0, 2.0])
        assert rows[1] == {"G": 2.0, "delta_th": 4.5, "fourfold": 4.0, "zero_squeeze": -36.0}
