import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from whichway import (ApertureSet, BesselBeam, ConvergenceError,
                      GaussianBeam, GridSpec, IntensityPattern,
                      PEAK_SINGLE_SLIT, PlaneWave, QuadratureSpec,
                      SlitGeometry, fraunhofer_amplitude, fringe_period,
                      half_fringe_angle, oracle_pattern, sample_pattern,
                      single_slit_aperture, single_slit_intensity,
                      standard_two_slit, two_slit_apertures, washout_pattern,
                      visibility_fringe_local, ModelKind)
from whichway.oracle import _amplitude_fixed

REF_GEOM = SlitGeometry(0.63e-6, 2e-6, 12e-6, 0.1)
LAM_D = REF_GEOM.wavelength_m * REF_GEOM.screen_distance_m
LOBE = LAM_D / REF_GEOM.slit_width_m


def closed_form_interval(beam_free_x, lo, hi, geom):
    """Exact integral of exp(-i 2 pi x xi / (lambda D)) over [lo, hi]."""
    x = np.atleast_1d(np.asarray(beam_free_x, dtype=float))
    q = 2 * math.pi * x / (geom.wavelength_m * geom.screen_distance_m)
    width = hi - lo
    center = 0.5 * (lo + hi)
    u = 0.5 * q * width
    sinc = np.where(np.abs(u) < 1e-8, 1.0 - u * u / 6.0,
                    np.sin(np.where(u == 0, 1.0, u))
                    / np.where(u == 0, 1.0, u))
    return width * sinc * np.exp(-1j * q * center)


class TestApertureSet:
    def test_canonical_two_slit_bounds(self):
        apertures = two_slit_apertures(REF_GEOM)
        (a_lo, a_hi), (b_lo, b_hi) = apertures.intervals
        assert a_lo == pytest.approx(-7e-6)
        assert a_hi == pytest.approx(-5e-6)
        assert b_lo == pytest.approx(+5e-6)
        assert b_hi == pytest.approx(+7e-6)
        assert apertures.phases_rad == (0.0, 0.0)

    def test_single_slit_selection(self):
        ap_a = single_slit_aperture(REF_GEOM, "a")
        ap_b = single_slit_aperture(REF_GEOM, "b")
        assert ap_a.intervals[0][0] < 0 < ap_b.intervals[0][0]
        with pytest.raises(ValueError):
            single_slit_aperture(REF_GEOM, "c")

    def test_rejects_overlap(self):
        with pytest.raises(ValueError):
            ApertureSet(intervals=((0.0, 2.0), (1.0, 3.0)),
                        phases_rad=(0.0, 0.0))

    def test_rejects_inverted_interval(self):
        with pytest.raises(ValueError):
            ApertureSet(intervals=((2.0, 1.0),), phases_rad=(0.0,))

    def test_rejects_phase_length_mismatch(self):
        with pytest.raises(ValueError):
            ApertureSet(intervals=((0.0, 1.0),), phases_rad=(0.0, 0.0))

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            ApertureSet(intervals=(), phases_rad=())


class TestQuadratureSpec:
    def test_rejects_bad_values(self):
        with pytest.raises(ValueError):
            QuadratureSpec(nodes_per_interval=4)
        with pytest.raises(ValueError):
            QuadratureSpec(relative_tolerance=0.0)
        with pytest.raises(ValueError):
            QuadratureSpec(relative_tolerance=1.5)
        with pytest.raises(ValueError):
            QuadratureSpec(max_refinements=0)


class TestFraunhoferAmplitude:
    def test_single_aperture_matches_envelope_shape(self):
        grid = np.linspace(-LOBE, LOBE, 4001)
        amp = fraunhofer_amplitude(PlaneWave(), single_slit_aperture(
            REF_GEOM, "a"), REF_GEOM, grid)
        intensity = np.abs(amp) ** 2
        intensity /= intensity.max()
        reference = single_slit_intensity(REF_GEOM, grid, 0.0)
        reference /= reference.max()
        assert np.max(np.abs(intensity - reference)) < 1e-9
        keep = reference > 1e-3
        rel = np.abs(intensity[keep] / reference[keep] - 1.0)
        assert np.max(rel) < 1e-9

    def test_single_aperture_complex_value(self):
        # full complex check including the carrier phase of the offset slit
        x = np.linspace(-0.02, 0.02, 257)
        aperture = single_slit_aperture(REF_GEOM, "b")
        amp = fraunhofer_amplitude(PlaneWave(), aperture, REF_GEOM, x)
        lo, hi = aperture.intervals[0]
        expected = closed_form_interval(x, lo, hi, REF_GEOM)
        assert np.max(np.abs(amp - expected)) < 1e-12 * (hi - lo)

    def test_two_apertures_match_product_form(self):
        grid = np.linspace(-LOBE, LOBE, 4001)
        amp = fraunhofer_amplitude(PlaneWave(), two_slit_apertures(REF_GEOM),
                                   REF_GEOM, grid)
        intensity = np.abs(amp) ** 2
        intensity /= intensity.max()
        reference = standard_two_slit(REF_GEOM, grid)
        reference /= reference.max()
        assert np.max(np.abs(intensity - reference)) < 1e-9

    def test_center_amplitude_is_total_open_width(self):
        amp = fraunhofer_amplitude(PlaneWave(), two_slit_apertures(REF_GEOM),
                                   REF_GEOM, 0.0)
        assert isinstance(amp, complex)
        assert amp.real == pytest.approx(2 * REF_GEOM.slit_width_m,
                                         rel=1e-12)
        assert abs(amp.imag) < 1e-20

    def test_linearity_over_apertures(self):
        x = np.linspace(-0.03, 0.03, 101)
        both = fraunhofer_amplitude(PlaneWave(), two_slit_apertures(REF_GEOM),
                                    REF_GEOM, x)
        only_a = fraunhofer_amplitude(
            PlaneWave(), single_slit_aperture(REF_GEOM, "a"), REF_GEOM, x)
        only_b = fraunhofer_amplitude(
            PlaneWave(), single_slit_aperture(REF_GEOM, "b"), REF_GEOM, x)
        assert np.max(np.abs(both - (only_a + only_b))) < 1e-18

    @pytest.mark.parametrize("beam", [
        PlaneWave(),
        GaussianBeam(waist_m=4e-6, center_m=0.0),
        BesselBeam(radial_wavenumber_per_m=3e5, center_m=0.0),
    ])
    def test_parity(self, beam):
        x = np.linspace(0.001, 0.03, 37)
        plus = fraunhofer_amplitude(beam, two_slit_apertures(REF_GEOM),
                                    REF_GEOM, x)
        minus = fraunhofer_amplitude(beam, two_slit_apertures(REF_GEOM),
                                     REF_GEOM, -x)
        assert np.max(np.abs(np.abs(plus) - np.abs(minus))) < 1e-12 \
            * np.max(np.abs(plus))

    def test_quadrature_exactness_rule(self):
        # n >= 10 + 4 len |x| / (lambda D) integrates the kernel to 1e-12
        aperture = single_slit_aperture(REF_GEOM, "a")
        lo, hi = aperture.intervals[0]
        for x_max in (0.005, 0.02, 0.05):
            x = np.linspace(-x_max, x_max, 41)
            needed = 10 + int(math.ceil(4 * (hi - lo) * x_max / LAM_D))
            approx = _amplitude_fixed(PlaneWave(), aperture, REF_GEOM, x,
                                      needed)
            exact = closed_form_interval(x, lo, hi, REF_GEOM)
            rel = np.max(np.abs(approx - exact)) / np.max(np.abs(exact))
            assert rel < 1e-12

    def test_convergence_error(self):
        # ~3000 oscillations across each slit need far more nodes than the
        # refinement cap allows
        with pytest.raises(ConvergenceError) as excinfo:
            fraunhofer_amplitude(PlaneWave(), two_slit_apertures(REF_GEOM),
                                 REF_GEOM, np.array([0.0, 100.0]))
        err = excinfo.value
        assert err.last_estimate is not None
        assert err.previous_estimate is not None
        assert err.worst_x_m == pytest.approx(100.0)
        assert "100" in str(err)

    def test_rejects_non_finite_x(self):
        with pytest.raises(ValueError):
            fraunhofer_amplitude(PlaneWave(), two_slit_apertures(REF_GEOM),
                                 REF_GEOM, float("nan"))

    def test_deterministic(self):
        x = np.linspace(-0.01, 0.01, 64)
        first = fraunhofer_amplitude(PlaneWave(), two_slit_apertures(
            REF_GEOM), REF_GEOM, x)
        second = fraunhofer_amplitude(PlaneWave(), two_slit_apertures(
            REF_GEOM), REF_GEOM, x)
        assert np.array_equal(first, second)


class TestOraclePattern:
    def test_peak_normalized_with_scale_in_meta(self):
        grid = GridSpec(-LOBE, LOBE, 1001)
        pattern = oracle_pattern(PlaneWave(), two_slit_apertures(REF_GEOM),
                                 REF_GEOM, grid)
        assert pattern.intensity.max() == pytest.approx(1.0, rel=1e-15)
        assert pattern.normalization == PEAK_SINGLE_SLIT
        assert pattern.meta["unit_scale"] == 1.0
        assert pattern.meta["peak_abs"] > 0.0
        assert pattern.meta["model"] == "oracle"

    def test_low_visibility_for_focused_gaussian(self):
        grid = GridSpec(REF_GEOM.slit_a_center_m - 1.2 * LOBE,
                        REF_GEOM.slit_a_center_m + 1.2 * LOBE, 4001)
        beam = GaussianBeam(waist_m=3e-6, center_m=REF_GEOM.slit_a_center_m)
        pattern = oracle_pattern(beam, two_slit_apertures(REF_GEOM),
                                 REF_GEOM, grid)
        assert visibility_fringe_local(pattern, REF_GEOM) < 0.05


class TestWashout:
    @staticmethod
    def make_base(grid):
        x = grid.x()
        shift_scale = REF_GEOM.screen_distance_m

        def base(tilt):
            shifted = GridSpec(grid.x_min_m - shift_scale * tilt,
                               grid.x_max_m - shift_scale * tilt, grid.points)
            pattern = sample_pattern(ModelKind.STANDARD_TWO_SLIT, REF_GEOM,
                                     shifted)
            return IntensityPattern(x, pattern.intensity,
                                    pattern.normalization, dict(pattern.meta))

        return base

    def test_zero_spread_is_identity(self):
        grid = GridSpec(-LOBE, LOBE, 2001)
        base = self.make_base(grid)
        washed = washout_pattern(base, 0.0, 101)
        assert np.array_equal(washed.intensity, base(0.0).intensity)

    def test_full_half_fringe_angle_blurs(self):
        grid = GridSpec(-LOBE, LOBE, 4001)
        phi = half_fringe_angle(REF_GEOM)
        washed = washout_pattern(self.make_base(grid), phi, 101)
        assert visibility_fringe_local(washed, REF_GEOM) < 0.02

    def test_tenth_of_half_fringe_angle_keeps_contrast(self):
        grid = GridSpec(-LOBE, LOBE, 4001)
        phi = half_fringe_angle(REF_GEOM)
        washed = washout_pattern(self.make_base(grid), phi / 10, 101)
        assert visibility_fringe_local(washed, REF_GEOM) >= 0.98

    def test_meta_records_spread(self):
        grid = GridSpec(-LOBE, LOBE, 1001)
        washed = washout_pattern(self.make_base(grid), 1e-3, 11)
        assert washed.meta["washout_theta_rad"] == 1e-3
        assert washed.meta["washout_tilts"] == 11

    def test_rejects_bad_arguments(self):
        grid = GridSpec(-LOBE, LOBE, 101)
        base = self.make_base(grid)
        with pytest.raises(ValueError):
            washout_pattern(base, -1e-3, 11)
        with pytest.raises(ValueError):
            washout_pattern(base, 1e-3, 10)  # even count
        with pytest.raises(ValueError):
            washout_pattern(base, 1e-3, 0)

    def test_rejects_generator_changing_grid(self):
        grid = GridSpec(-LOBE, LOBE, 101)

        def bad(tilt):
            shifted = GridSpec(-LOBE + tilt, LOBE + tilt, 101)
            return sample_pattern(ModelKind.STANDARD_TWO_SLIT, REF_GEOM,
                                  shifted)

        with pytest.raises(ValueError):
            washout_pattern(bad, 1e-3, 3)
