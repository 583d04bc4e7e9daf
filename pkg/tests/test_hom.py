import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from biphoton_convert import closed_forms as cf
from biphoton_convert.conversion import flat_channel, phase_matched_channel
from biphoton_convert.errors import ShallowDipError, SupportMismatchError
from biphoton_convert.hom import (
    BETA, OMEGA, HomScan, HomSum, default_hom_scan, hom_coincidence_numeric, hom_fwhm, hom_grid,
    hom_trace, visibility_sweep,
)
from biphoton_convert.spectral_core import GaussianSourceParams, default_grid, gaussian_jsa, jsa_norm

from conftest import GAUSS_FWHM, TWO_PI


def run(params, channel, n=512):
    jsa = gaussian_jsa(params, hom_grid(params, channel, n))
    return jsa, hom_trace(jsa, channel, params, default_hom_scan(params, channel))


def test_fig4a_dip(fig2_params, fig4_shift):
    _, res = run(fig2_params, flat_channel(1.0, fig4_shift))
    assert res.visibility == pytest.approx(math.exp(-0.00125), abs=1e-6)
    step = res.trace.step
    assert abs(res.dip_position + 0.2) < step
    assert hom_fwhm(res) == pytest.approx(GAUSS_FWHM / fig2_params.sigma_minus, rel=1e-2)


def test_matched_frequencies_give_full_visibility(fig2_params):
    _, res = run(fig2_params, flat_channel(1.0, fig2_params.delta))
    assert res.visibility == pytest.approx(1.0, abs=1e-4)
    at_dip = hom_coincidence_numeric(gaussian_jsa(fig2_params, hom_grid(fig2_params, flat_channel(1, fig2_params.delta))),
                                     flat_channel(1.0, fig2_params.delta), fig2_params, -fig2_params.tau0)
    assert isinstance(at_dip, float) and abs(at_dip) < 1e-12


def test_one_sigma_detuning(fig2_params):
    _, res = run(fig2_params, flat_channel(1.0, fig2_params.delta + fig2_params.sigma_minus))
    assert res.visibility == pytest.approx(math.exp(-0.5), abs=1e-3)


def test_flat_trace_matches_closed_form(fig2_params, fig4_shift):
    ch = flat_channel(0.7, fig4_shift)
    _, res = run(fig2_params, ch)
    closed = cf.hom_rate_closed(fig2_params, 0.7, res.trace.delays, fig4_shift)
    np.testing.assert_allclose(res.trace.values, closed, rtol=1e-4)


def test_baseline_and_symmetry(fig2_params, fig4_shift):
    ch = flat_channel(0.8, fig4_shift)
    jsa, res = run(fig2_params, ch)
    assert res.baseline == pytest.approx(0.64 * jsa_norm(jsa) / (8 * math.pi**2), rel=1e-6)
    v = res.trace.values
    np.testing.assert_allclose(v, v[::-1], rtol=1e-6)


def test_visibility_depends_only_on_detuning(fig2_params):
    vals = []
    for delta in (TWO_PI * 1.0, TWO_PI * 2.0, TWO_PI * 3.5):
        p = GaussianSourceParams(fig2_params.omega_p, fig2_params.sigma_p, delta, fig2_params.sigma_minus, 0.2)
        vals.append(run(p, flat_channel(1.0, delta - TWO_PI * 0.4))[1].visibility)
    assert max(vals) - min(vals) < 1e-6


@settings(max_examples=12, deadline=None)
@given(detune=st.floats(-3.0, 3.0), t0=st.floats(0.1, 1.0), tau0=st.floats(-0.5, 0.5))
def test_visibility_bounded(detune, t0, tau0):
    p = GaussianSourceParams(TWO_PI * 400, TWO_PI * 0.1, TWO_PI * 2, TWO_PI * 1, tau0)
    _, res = run(p, flat_channel(t0, p.delta + detune * p.sigma_minus), n=256)
    assert 0.0 <= res.visibility <= 1.0 + 1e-9


def test_phase_matched_matches_closed_form_at_unconverted_peak(fig2_params, fig4_shift):
    beta = 2 * fig2_params.sigma_minus
    ch = phase_matched_channel(fig2_params, 1.0, fig4_shift, beta, offset=-fig4_shift)
    _, res = run(fig2_params, ch)
    closed = cf.hom_rate_closed(fig2_params, 1.0, res.trace.delays, fig4_shift, beta)
    np.testing.assert_allclose(res.trace.values, closed, rtol=1e-6)
    assert res.visibility == pytest.approx(cf.hom_visibility_closed(fig2_params, fig4_shift, beta), rel=1e-6)


def test_wide_phase_matching_recovers_flat_width(fig2_params, fig4_shift):
    ch = phase_matched_channel(fig2_params, 1.0, fig4_shift, 1e6 * fig2_params.sigma_minus)
    _, res = run(fig2_params, ch)
    assert hom_fwhm(res) == pytest.approx(GAUSS_FWHM / fig2_params.sigma_minus, rel=1e-2)


def test_shallow_dip_raises(fig2_params):
    detune = math.sqrt(-2 * math.log(0.01)) * fig2_params.sigma_minus  # visibility 0.01
    _, res = run(fig2_params, flat_channel(1.0, fig2_params.delta + detune))
    assert res.visibility == pytest.approx(0.01, rel=1e-3)
    with pytest.raises(ShallowDipError):
        hom_fwhm(res)


def test_support_mismatch(fig2_params):
    ch = flat_channel(1.0, fig2_params.delta + 20 * fig2_params.sigma_minus)
    jsa = gaussian_jsa(fig2_params, default_grid(fig2_params, 128))
    with pytest.raises(SupportMismatchError):
        HomSum(jsa, ch, fig2_params)


def test_truncated_scan_warns(fig2_params, fig4_shift):
    ch = flat_channel(1.0, fig4_shift)
    jsa = gaussian_jsa(fig2_params, hom_grid(fig2_params, ch))
    with pytest.warns(UserWarning):
        hom_trace(jsa, ch, fig2_params, HomScan(np.linspace(-0.5, 0.1, 61), 0.2))


def test_omega_sweep(fig2_params):
    omegas = fig2_params.delta + np.linspace(-3, 3, 13) * fig2_params.sigma_minus
    points = visibility_sweep(fig2_params, flat_channel(), OMEGA, omegas, n=256)
    assert [p.value for p in points] == list(omegas)
    vis = np.array([p.visibility for p in points])
    np.testing.assert_allclose(vis, np.exp(-((omegas - fig2_params.delta) ** 2) / (2 * fig2_params.sigma_minus**2)),
                               atol=1e-3)
    assert int(np.argmax(vis)) == 6
    # the +/-3 sigma ends are too shallow for a width; recorded, not raised
    assert points[0].error and "ShallowDipError" in points[0].error
    assert points[6].error is None and points[6].fwhm > 0


def test_beta_sweep_is_monotone(fig2_params, fig4_shift):
    ch = phase_matched_channel(fig2_params, 1.0, fig4_shift, fig2_params.sigma_minus, offset=-fig4_shift)
    betas = fig2_params.sigma_minus * np.geomspace(0.5, 20, 8)
    vis = [p.visibility for p in visibility_sweep(fig2_params, ch, BETA, betas, n=256)]
    assert np.all(np.diff(vis) >= 0)


def test_sweep_needs_values(fig2_params):
    with pytest.raises(ValueError):
        visibility_sweep(fig2_params, flat_channel(), OMEGA, [])
