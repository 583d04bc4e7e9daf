import math

import numpy as np
import pytest

from biphoton_convert import closed_forms as cf
from biphoton_convert.conversion import apply_conversion, flat_channel, phase_matched_channel
from biphoton_convert.correlation import (
    CorrelationTrace, DetectorParams, FourierSum, check_uniform, delay_grid, fwhm, g2_detector_averaged_numeric,
    g2_trace, g2_two_time_numeric, peak_position, peak_width,
)
from biphoton_convert.errors import NoPeakError, QuadratureError
from biphoton_convert.spectral_core import Jsa, gaussian_jsa, make_frequency_grid

from conftest import GAUSS_FWHM, TWO_PI


@pytest.fixture
def converted(fig2_params, fig4_shift):
    jsa = gaussian_jsa(fig2_params)
    return apply_conversion(jsa, flat_channel(1.0, fig4_shift))


def test_detector_validation():
    with pytest.raises(ValueError):
        DetectorParams(0.0)
    with pytest.raises(ValueError):
        DetectorParams(1.0, 8)


def test_trace_validation():
    with pytest.raises(ValueError):
        CorrelationTrace([0, 1, 3], [1, 1, 1], "x", "1")
    with pytest.raises(ValueError):
        CorrelationTrace([0, 1, 2], [1, -0.5, 1], "x", "1")
    t = CorrelationTrace([0, 1, 2], [1, -1e-15, 2], "x", "per_ps")
    assert t.values[1] == 0.0
    assert t.normalized().values.max() == 1.0 and t.normalized().units == "1"
    check_uniform([0.0])


def test_two_time_peak_value(fig2_params, converted):
    # maximum 2 sigma_p sigma_minus T^2 / pi at tau = tau0, t = (tau0 - tau)/2
    value = g2_two_time_numeric(converted, 0.0, fig2_params.tau0, fig2_params.tau0)
    assert value == pytest.approx(2 * fig2_params.sigma_p * fig2_params.sigma_minus / math.pi, rel=1e-10)


def test_two_time_matches_flat_closed_form(fig2_params, converted):
    rng = np.random.default_rng(1)
    tau = fig2_params.tau0 + rng.uniform(-0.5, 0.5, 30)
    t = rng.uniform(-1.0, 1.0, 30)
    numeric = g2_two_time_numeric(converted, t, tau, fig2_params.tau0)
    closed = cf.g2_two_time_closed(fig2_params, 1.0, t, tau)
    np.testing.assert_allclose(numeric, closed, rtol=1e-8, atol=1e-12 * closed.max())


def test_two_time_scales_with_t0_squared(fig2_params):
    jsa = gaussian_jsa(fig2_params)
    full = g2_two_time_numeric(apply_conversion(jsa, flat_channel(1.0, 3.0)), 0.1, 0.3, 0.2)
    half = g2_two_time_numeric(apply_conversion(jsa, flat_channel(0.5, 3.0)), 0.1, 0.3, 0.2)
    assert half == pytest.approx(0.25 * full, rel=1e-12)
    assert g2_two_time_numeric(apply_conversion(jsa, flat_channel(0.0)), 0.1, 0.3, 0.2) == 0.0


@pytest.mark.parametrize("t_res", [100.0, 1.0, 1e-4])
def test_averaged_matches_erf_form(fig2_params, converted, t_res):
    tau = fig2_params.tau0 + np.linspace(-0.6, 0.6, 13)
    numeric = g2_detector_averaged_numeric(converted, tau, fig2_params.tau0, DetectorParams(t_res))
    closed = cf.g2_averaged_closed(fig2_params, 1.0, tau, t_res, cf.EXACT)
    np.testing.assert_allclose(numeric, closed, rtol=1e-6)


def test_averaged_scalar_input(fig2_params, converted):
    v = g2_detector_averaged_numeric(converted, 0.2, 0.2, DetectorParams(100.0))
    assert isinstance(v, float)
    assert v == pytest.approx(fig2_params.sigma_minus / math.sqrt(TWO_PI), rel=1e-6)


def test_quadrature_failure_is_reported():
    # a white-noise spectrum gives a time-domain rate far too rough for a 16-node rule
    rng = np.random.default_rng(0)
    grid = make_frequency_grid(100.0, 90.0, 5.0, 64)
    jsa = Jsa(grid, rng.normal(size=(64, 64)) + 1j * rng.normal(size=(64, 64)))
    with pytest.warns(UserWarning, match="alias period"):
        with pytest.raises(QuadratureError, match="quad_order doubled"):
            FourierSum(jsa).averaged(np.array([0.0]), 1e4, 16)


def test_fwhm_and_peak_of_trace(fig2_params, converted):
    det = DetectorParams(100.0)
    tau = delay_grid(-0.6, 1.0, 161)
    trace = g2_trace(converted, tau, fig2_params.tau0, det)
    assert trace.kind == "detector_averaged" and trace.units == "per_ps"
    assert fwhm(trace) == pytest.approx(GAUSS_FWHM / fig2_params.sigma_minus, rel=1e-3)
    assert peak_position(trace) == pytest.approx(0.2, abs=1e-6)


def test_peak_width_errors():
    x = np.linspace(0, 1, 11)
    with pytest.raises(NoPeakError):
        peak_width(x, x)
    with pytest.raises(NoPeakError):
        peak_width(x[:2], [1.0, 2.0])
    with pytest.raises(NoPeakError):
        peak_width(x, 1.0 + 0.1 * np.sin(np.pi * x))


def test_peak_width_warns_on_double_peak():
    x = np.linspace(-5, 5, 201)
    y = np.exp(-(x - 1) ** 2) + 0.95 * np.exp(-(x + 1) ** 2)
    with pytest.warns(UserWarning, match="local maximum"):
        peak_width(x, y)


def test_omega_invariance_is_exact(fig2_params):
    jsa = gaussian_jsa(fig2_params)
    det = DetectorParams(100.0)
    tau = delay_grid(-0.4, 0.8, 25)
    a = g2_trace(apply_conversion(jsa, flat_channel(1.0, 0.0)), tau, 0.2, det).values
    b = g2_trace(apply_conversion(jsa, flat_channel(1.0, TWO_PI * 120)), tau, 0.2, det).values
    np.testing.assert_allclose(a, b, rtol=1e-12)


def test_phase_matched_two_time_shape(fig2_params):
    # shape of the phase-matched two-time correlation, up to a constant
    jsa = gaussian_jsa(fig2_params)
    beta = fig2_params.sigma_minus
    shift = TWO_PI * 1.95
    rng = np.random.default_rng(3)
    tau = 0.2 + rng.uniform(-0.4, 0.4, 20)
    t = -0.5 * (tau - 0.2) + rng.uniform(-0.3, 0.3, 20)
    for offset in (0.0, -shift):
        conv = apply_conversion(jsa, phase_matched_channel(fig2_params, 1.0, shift, beta, offset))
        ratio = g2_two_time_numeric(conv, t, tau, 0.2) / cf.g2_two_time_closed(fig2_params, 1.0, t, tau, beta, shift)
        assert np.ptp(ratio) < 1e-6 * ratio.mean()
