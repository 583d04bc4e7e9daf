import math

import numpy as np
import pytest

from biphoton_convert.conversion import (
    ConversionChannel, apply_conversion, conversion_amplitude, flat_channel, phase_matched_channel,
    vacuum_coupling,
)
from biphoton_convert.spectral_core import default_grid, gaussian_jsa, jsa_norm


def test_channel_validation(fig2_params):
    with pytest.raises(ValueError):
        flat_channel(1.5)
    with pytest.raises(ValueError):
        ConversionChannel("lorentzian")
    with pytest.raises(ValueError):
        ConversionChannel("gaussian", 1.0, 0.0, None, 10.0)
    with pytest.raises(ValueError):
        ConversionChannel("gaussian", 1.0, 0.0, 1.0, None)


def test_flat_amplitude_shapes():
    ch = flat_channel(0.5, 3.0)
    assert conversion_amplitude(ch, 1.0) == 0.5
    assert conversion_amplitude(ch, np.zeros((2, 3))).shape == (2, 3)


def test_phase_matched_amplitude(fig2_params):
    ch = phase_matched_channel(fig2_params, 0.8, 10.0, 2.0)
    peak = fig2_params.omega_i0 + 10.0
    assert ch.omega_i0 == pytest.approx(peak)
    assert conversion_amplitude(ch, peak) == pytest.approx(0.8)
    assert conversion_amplitude(ch, peak + 2.0) == pytest.approx(0.8 * math.exp(-0.5))
    assert phase_matched_channel(fig2_params, 1, 10.0, 2.0, offset=-10.0).omega_i0 == pytest.approx(
        fig2_params.omega_i0
    )


def test_vacuum_coupling_conserves_probability():
    ch = flat_channel(0.6)
    assert vacuum_coupling(ch, 0.0) ** 2 + conversion_amplitude(ch, 0.0) ** 2 == pytest.approx(1.0)


def test_flat_conversion_translates_and_scales(fig2_params):
    jsa = gaussian_jsa(fig2_params, default_grid(fig2_params, 128))
    out = apply_conversion(jsa, flat_channel(0.5, 7.0))
    assert out.grid.center_i == pytest.approx(jsa.grid.center_i + 7.0)
    assert out.grid.center_s == jsa.grid.center_s
    np.testing.assert_array_equal(out.values, 0.5 * jsa.values)
    assert jsa_norm(out) == pytest.approx(0.25 * jsa_norm(jsa))
    assert out.meta["channel"].omega_shift == 7.0


def test_zero_shift_keeps_grid(fig2_params):
    jsa = gaussian_jsa(fig2_params, default_grid(fig2_params, 64))
    assert apply_conversion(jsa, flat_channel()).grid == jsa.grid


def test_phase_matched_conversion_filters_idler(fig2_params):
    jsa = gaussian_jsa(fig2_params, default_grid(fig2_params, 128))
    ch = phase_matched_channel(fig2_params, 1.0, 5.0, fig2_params.sigma_minus)
    out = apply_conversion(jsa, ch)
    expected = jsa.values * conversion_amplitude(ch, out.grid.axis_i)[None, :]
    np.testing.assert_allclose(out.values, expected)
    assert jsa_norm(out) < jsa_norm(jsa)


def test_transparent_channel_limit(fig2_params):
    jsa = gaussian_jsa(fig2_params, default_grid(fig2_params, 128))
    wide = apply_conversion(jsa, phase_matched_channel(fig2_params, 1.0, 5.0, 1e6 * fig2_params.sigma_minus))
    flat = apply_conversion(jsa, flat_channel(1.0, 5.0))
    np.testing.assert_allclose(wide.values, flat.values, rtol=1e-9)
