"""One-command reproductions of the reference correlation and HOM figures.

All parameters live in ``FIGURE_PARAMS``. Values in THz and ps; entries
marked "filler" are not printed with the figure and do not affect the
plotted quantity (the flat-channel results are independent of the pump
frequency, and of Omega except through Omega - Delta).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import closed_forms as cf
from .conversion import apply_conversion, flat_channel, phase_matched_channel
from .correlation import DetectorParams, delay_grid, fwhm, g2_trace
from .hom import (
    BETA, HomScan, dip_rate_width, hom_fwhm, hom_grid, hom_trace, visibility_sweep,
)
from .spectral_core import GaussianSourceParams, default_grid, gaussian_jsa, thz_to_rad_per_ps

FIGURE_PARAMS = {
    "fig2": dict(sigma_minus_thz=1.0, sigma_p_thz=0.1, tau0_ps=0.2, t_resolution_ps=100.0,
                 delta_thz=2.0, omega_shift_thz=1.95, omega_p_thz=400.0,
                 filler=("delta_thz", "omega_shift_thz", "omega_p_thz")),
    "fig4a": dict(sigma_minus_thz=1.0, tau0_ps=0.2, delta_thz=2.0, delta_minus_omega_thz=0.05,
                  sigma_p_thz=0.1, omega_p_thz=400.0, filler=("sigma_p_thz", "omega_p_thz")),
    "fig4b": dict(sigma_minus_thz=1.0, delta_thz=2.0, omega_span_sigma=3.0, points=61,
                  sigma_p_thz=0.1, tau0_ps=0.2, omega_p_thz=400.0,
                  filler=("sigma_p_thz", "tau0_ps", "omega_p_thz")),
    "fig5": dict(sigma_minus_thz=1.0, sigma_p_thz=0.1, delta_thz=2.0, delta_minus_omega_thz=0.05,
                 beta_min_sigma=0.5, beta_max_sigma=20.0, points=25, t_resolution_ps=100.0,
                 tau0_ps=0.2, omega_p_thz=400.0, claimed_visibility=0.96, claimed_fwhm_ratio=1.5,
                 filler=("tau0_ps", "omega_p_thz", "t_resolution_ps")),
}

FIGURE_IDS = ("fig2", "fig4a", "fig4b", "fig5a", "fig5b")


@dataclass
class FigureData:
    name: str
    header: list
    columns: list
    xlabel: str
    ylabel: str
    labels: list
    summary: list = field(default_factory=list)
    params: dict = field(default_factory=dict)


def _source(p):
    return GaussianSourceParams(
        omega_p=thz_to_rad_per_ps(p["omega_p_thz"]),
        sigma_p=thz_to_rad_per_ps(p["sigma_p_thz"]),
        delta=thz_to_rad_per_ps(p["delta_thz"]),
        sigma_minus=thz_to_rad_per_ps(p["sigma_minus_thz"]),
        tau0=p["tau0_ps"],
    )


def _shift(p):
    return thz_to_rad_per_ps(p["delta_thz"] - p["delta_minus_omega_thz"])


def fig2(n=512, quad_order=64) -> FigureData:
    p = FIGURE_PARAMS["fig2"]
    params = _source(p)
    det = DetectorParams(p["t_resolution_ps"], quad_order)
    taus = delay_grid(-1.0, 1.2, 221)
    jsa = gaussian_jsa(params, default_grid(params, n))
    converted = g2_trace(apply_conversion(jsa, flat_channel(1.0, thz_to_rad_per_ps(p["omega_shift_thz"]))),
                         taus, params.tau0, det)
    original = g2_trace(jsa, taus, 0.0, det)
    w_c, w_o = fwhm(converted), fwhm(original)
    ref = 2.0 * math.sqrt(2.0 * math.log(2.0)) / params.sigma_minus
    return FigureData(
        "fig2", ["tau_ps", "g2_converted_norm", "g2_original_norm"],
        [taus, converted.normalized().values, original.normalized().values],
        "tau (ps)", "normalized g2", ["converted idler + signal", "original pair"],
        [f"fwhm_converted_ps={w_c:.6f}", f"fwhm_original_ps={w_o:.6f}", f"fwhm_gaussian_ps={ref:.6f}"],
        p,
    )


def fig4a(n=512) -> FigureData:
    p = FIGURE_PARAMS["fig4a"]
    params = _source(p)
    channel = flat_channel(1.0, _shift(p))
    # reference dip: no path delay and the idler matched to the signal
    ref_params = replace(params, tau0=0.0)
    ref_channel = flat_channel(1.0, params.delta)
    half = 7.0 / params.sigma_minus
    delays = np.linspace(-0.2 - half, -0.2 + half, 281)
    scan = HomScan(delays, params.tau0)
    conv = hom_trace(gaussian_jsa(params, hom_grid(params, channel, n)), channel, params, scan)
    orig = hom_trace(gaussian_jsa(ref_params, hom_grid(ref_params, ref_channel, n)), ref_channel, ref_params,
                     HomScan(delays, 0.0))
    return FigureData(
        "fig4a", ["tau_t_ps", "rate_converted_norm", "rate_reference_norm"],
        [delays, conv.trace.values / conv.baseline, orig.trace.values / orig.baseline],
        "tau_T (ps)", "normalized R_c", ["converted idler + signal", "reference pair"],
        [f"visibility={conv.visibility:.9f}", f"visibility_closed={cf.hom_visibility_closed(params, channel.omega_shift):.9f}",
         f"dip_position_ps={conv.dip_position:.6f}", f"fwhm_ps={hom_fwhm(conv):.6f}"],
        p,
    )


def fig4b(n=512) -> FigureData:
    p = FIGURE_PARAMS["fig4b"]
    params = _source(p)
    sm = params.sigma_minus
    omegas = params.delta + np.linspace(-p["omega_span_sigma"], p["omega_span_sigma"], p["points"]) * sm
    points = visibility_sweep(params, flat_channel(), "omega", omegas, n=n)
    vis = np.array([pt.visibility for pt in points])
    closed = np.array([cf.hom_visibility_closed(params, w) for w in omegas])
    best = omegas[int(np.nanargmax(vis))]
    return FigureData(
        "fig4b", ["omega_thz", "visibility_numeric", "visibility_closed"],
        [omegas / (2 * math.pi), vis, closed],
        "Omega / 2 pi (THz)", "visibility", ["numeric", "closed form"],
        [f"max_abs_error={np.nanmax(np.abs(vis - closed)):.3e}", f"argmax_omega_thz={best / (2 * math.pi):.6f}"],
        p,
    )


def fig5_setup():
    p = FIGURE_PARAMS["fig5"]
    params = _source(p)
    shift = _shift(p)
    # phase-matching peak at the unconverted idler frequency
    template = phase_matched_channel(params, 1.0, shift, params.sigma_minus, offset=-shift)
    betas = params.sigma_minus * np.geomspace(p["beta_min_sigma"], p["beta_max_sigma"], p["points"])
    return p, params, template, betas


def fig5a(n=512) -> FigureData:
    p, params, template, betas = fig5_setup()
    sm = params.sigma_minus
    points = visibility_sweep(params, template, BETA, betas, n=n)
    vis = np.array([pt.visibility for pt in points])
    closed = np.array([cf.hom_visibility_closed(params, template.omega_shift, b) for b in betas])
    limit = cf.hom_visibility_closed(params, template.omega_shift)
    at2 = visibility_sweep(params, template, BETA, [2.0 * sm], n=n)[0]
    v28 = cf.hom_visibility_closed(params, template.omega_shift, 2.0 * sm)
    return FigureData(
        "fig5a", ["beta_over_sigma_minus", "visibility_numeric", "visibility_closed", "visibility_limit"],
        [betas / sm, vis, closed, np.full(betas.shape, limit)],
        "beta / sigma_minus", "visibility", ["numeric", "closed form", "large-beta limit"],
        [f"beta=2sigma_minus visibility_numeric={at2.visibility:.6f}",
         f"beta=2sigma_minus visibility_closed={v28:.6f}",
         f"beta=2sigma_minus visibility_claimed={p['claimed_visibility']:.2f}",
         f"claim_agrees={abs(at2.visibility - p['claimed_visibility']) < 1e-2}",
         f"large_beta_limit={limit:.9f}",
         f"monotone={bool(np.all(np.diff(vis) >= -1e-9))}"],
        p,
    )


def _g2_width(params, channel, det, n):
    rate = dip_rate_width(params, channel)
    taus = params.tau0 + np.linspace(-6.0, 6.0, 241) / rate
    jsa = gaussian_jsa(params, default_grid(params, n))
    return fwhm(g2_trace(apply_conversion(jsa, channel), taus, params.tau0, det))


def fig5b(n=512, quad_order=64) -> FigureData:
    p, params, template, betas = fig5_setup()
    sm = params.sigma_minus
    det = DetectorParams(p["t_resolution_ps"], quad_order)
    points = visibility_sweep(params, template, BETA, betas, n=n)
    hom_w = np.array([pt.fwhm for pt in points])
    g2_w = np.array([_g2_width(params, replace(template, beta=b), det, n) for b in betas])
    limit = 2.0 * math.sqrt(2.0 * math.log(2.0)) / sm
    at2 = visibility_sweep(params, template, BETA, [2.0 * sm], n=n)[0]
    return FigureData(
        "fig5b", ["beta_over_sigma_minus", "fwhm_hom_ps", "fwhm_g2_ps", "fwhm_limit_ps"],
        [betas / sm, hom_w, g2_w, np.full(betas.shape, limit)],
        "beta / sigma_minus", "FWHM (ps)", ["HOM dip", "g2", "large-beta limit"],
        [f"beta=2sigma_minus fwhm_ratio={at2.fwhm / limit:.6f}",
         f"beta=2sigma_minus fwhm_ratio_claimed={p['claimed_fwhm_ratio']:.2f}"],
        p,
    )


def make_figure(figure_id, n=512, quad_order=64) -> FigureData:
    if figure_id == "fig2":
        return fig2(n, quad_order)
    if figure_id == "fig4a":
        return fig4a(n)
    if figure_id == "fig4b":
        return fig4b(n)
    if figure_id == "fig5a":
        return fig5a(n)
    if figure_id == "fig5b":
        return fig5b(n, quad_order)
    raise ValueError(f"unknown figure {figure_id!r}; expected one of {FIGURE_IDS}")
