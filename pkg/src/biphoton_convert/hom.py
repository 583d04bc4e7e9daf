"""Hong-Ou-Mandel interference of the converted idler with the delayed signal.

The coincidence rate after the 50:50 beam splitter, integrated over all
detection times, is

    R_c(tau_T) = (1/8 pi^2) [ sum |f'(w2, w1)|^2
                 - sum f'*(w2, w1) g(w1, w2) e^{-i (w1 - w2)(tau_T + tau0)} ] dw^2

where ``f'(w2, w1) = T(w1) f(w2, w1 - Omega)`` is the converted amplitude
(signal ``w2``, converted idler ``w1``) and ``g(w1, w2) = T(w2) f(w1, w2 - Omega)``
is the same amplitude with the two photons exchanged. Both terms share one
grid pass so the visibility inherits no relative discretisation error.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from ._parallel import ordered_map
from .conversion import ConversionChannel, apply_conversion, conversion_amplitude
from .correlation import HOM_RATE, CorrelationTrace, _parabolic_vertex, check_uniform, peak_width
from .errors import BiphotonError, NumericalError, ShallowDipError, SupportMismatchError
from .spectral_core import GaussianSourceParams, Jsa, default_grid, gaussian_amplitude, gaussian_jsa

SUPPORT_FACTOR = 4.0
IMAG_RTOL = 1e-10


@dataclass(frozen=True, eq=False)
class HomScan:
    tau_t_grid: np.ndarray
    tau0: float

    def __post_init__(self):
        grid = np.asarray(self.tau_t_grid, dtype=float)
        check_uniform(grid)
        object.__setattr__(self, "tau_t_grid", grid)


@dataclass(frozen=True, eq=False)
class HomResult:
    trace: CorrelationTrace
    baseline: float
    visibility: float
    dip_position: float
    dip_value: float
    meta: dict = field(default_factory=dict)


def hom_grid(params: GaussianSourceParams, channel: ConversionChannel, n=512, half_width_factor=6.0):
    """Grid wide enough for both the direct and the exchanged amplitude."""
    return default_grid(params, n, half_width_factor, extra=abs(channel.omega_shift - params.delta))


def dip_rate_width(params: GaussianSourceParams, channel: ConversionChannel) -> float:
    """Gaussian rate (1/ps) of the dip in tau_T, used only to size default scans."""
    s = params.sigma_minus
    if channel.is_flat:
        return s
    b = channel.beta
    return s * b / math.sqrt(2.0 * b * b + s * s)


def default_hom_scan(params, channel, steps=281, span=7.0) -> HomScan:
    """Odd-length scan centred on the expected dip so that ``-tau0`` is a sample."""
    half = span / dip_rate_width(params, channel)
    centre = -params.tau0
    return HomScan(np.linspace(centre - half, centre + half, steps), params.tau0)


class HomSum:
    """Both HOM terms reduced to a 1-D sum over the frequency difference index."""

    def __init__(self, jsa: Jsa, channel: ConversionChannel, params: GaussianSourceParams):
        converted = apply_conversion(jsa, channel)
        grid = converted.grid
        scale = params.spectral_scale
        # exchanged amplitude peaks at signal-axis value w_i0 + Omega and idler-axis value w_s0
        offset = max(
            abs(grid.center_s - (params.omega_i0 + channel.omega_shift)),
            abs(grid.center_i - params.omega_s0),
        )
        if grid.half_width - offset < SUPPORT_FACTOR * scale:
            raise SupportMismatchError(
                f"grid half-width {grid.half_width:.6g} rad/ps cannot hold the exchanged amplitude "
                f"(offset {offset:.6g} rad/ps); need at least {offset + SUPPORT_FACTOR * scale:.6g}"
            )
        n = grid.n
        dw = grid.spacing
        ws, wi = grid.mesh()
        direct = converted.values
        exchanged = conversion_amplitude(channel, ws) * gaussian_amplitude(params, wi, ws - channel.omega_shift)
        integrand = np.conj(direct) * exchanged
        # sum over anti-diagonals of constant k - j, i.e. constant w1 - w2
        j = np.arange(n)
        diff_index = (j[np.newaxis, :] - j[:, np.newaxis] + (n - 1)).ravel()
        flat = integrand.ravel()
        d_re = np.bincount(diff_index, weights=flat.real, minlength=2 * n - 1)
        d_im = np.bincount(diff_index, weights=flat.imag, minlength=2 * n - 1)
        self._diag = (d_re + 1j * d_im) * dw**2
        self._freq = (grid.center_i - grid.center_s) + (np.arange(2 * n - 1) - (n - 1.0)) * dw
        self.direct_norm = float(np.sum(np.abs(direct) ** 2) * dw**2)
        self.tau0 = params.tau0
        self.grid = grid

    def cross(self, tau_t) -> np.ndarray:
        delay = np.atleast_1d(np.asarray(tau_t, float)) + self.tau0
        return np.exp(-1j * np.outer(delay, self._freq)) @ self._diag

    def rate(self, tau_t) -> np.ndarray:
        cross = self.cross(tau_t)
        if self.direct_norm > 0 and np.max(np.abs(cross.imag)) > IMAG_RTOL * self.direct_norm:
            raise NumericalError(
                f"imaginary residue {np.max(np.abs(cross.imag)):.3g} of the HOM bracket exceeds "
                f"{IMAG_RTOL:g} of the baseline {self.direct_norm:.6g}"
            )
        return (self.direct_norm - cross.real) / (8.0 * np.pi**2)


def hom_coincidence_numeric(jsa: Jsa, channel: ConversionChannel, params: GaussianSourceParams, tau_t):
    """Coincidence rate at tunable delay(s) ``tau_t``; float for scalar input."""
    values = HomSum(jsa, channel, params).rate(tau_t)
    return float(values[0]) if np.ndim(tau_t) == 0 else values


def hom_trace(jsa: Jsa, channel: ConversionChannel, params: GaussianSourceParams, scan: HomScan) -> HomResult:
    delays = scan.tau_t_grid
    if delays.size < 5:
        raise ValueError("a HOM scan needs at least five delays")
    if scan.tau0 != params.tau0:
        params = replace(params, tau0=scan.tau0)
    need = 5.0 / params.sigma_minus
    if delays[0] > -scan.tau0 - need or delays[-1] < -scan.tau0 + need:
        warnings.warn("HOM scan spans less than +/-5/sigma_minus around -tau0; dip may be truncated", stacklevel=2)
    values = HomSum(jsa, channel, params).rate(delays)
    trace = CorrelationTrace(
        delays, values, HOM_RATE, "arb",
        {"engine": "numeric", "tau0": scan.tau0, "channel": channel, "grid": jsa.grid},
    )
    values = trace.values
    n = values.size
    k = max(1, int(round(0.1 * n)))
    baseline = float(np.mean(np.concatenate([values[:k], values[-k:]])))
    i_min = int(np.argmin(values))
    if i_min < 0.2 * n or i_min >= 0.8 * n:
        warnings.warn("HOM minimum lies in the outer 20% of the scan; dip may be truncated", stacklevel=2)
    position, dip_value = _parabolic_vertex(delays, values, i_min)
    dip_value = max(dip_value, 0.0)
    visibility = (baseline - dip_value) / baseline if baseline > 0 else 0.0
    return HomResult(trace, baseline, visibility, position, dip_value)


def hom_fwhm(result: HomResult) -> float:
    """FWHM of the dip depth ``baseline - R_c``."""
    if result.visibility <= 0.05:
        raise ShallowDipError(f"visibility {result.visibility:.4g} is too shallow for a width")
    return peak_width(result.trace.delays, result.baseline - result.trace.values)


@dataclass(frozen=True)
class SweepPoint:
    value: float
    visibility: float
    fwhm: float
    dip_position: float
    error: str | None = None


OMEGA = "omega"
BETA = "beta"


def channel_for(template: ConversionChannel, variable: str, value: float) -> ConversionChannel:
    """Swept channel. Sweeping Omega keeps the phase-matching peak at its absolute frequency."""
    if variable == OMEGA:
        return replace(template, omega_shift=value)
    if variable == BETA:
        return replace(template, beta=value)
    raise ValueError(f"unknown sweep variable {variable!r}")


def visibility_sweep(params, channel_template, variable, values, n=512, half_width_factor=6.0, steps=281):
    """Dip visibility and width for each swept value, in input order.

    Each point gets its own grid (wide enough for its Omega - Delta) and its
    own scan. Failures are recorded on the point rather than raised.
    """
    values = list(values)
    if not values:
        raise ValueError("sweep needs at least one value")

    def point(value):
        try:
            channel = channel_for(channel_template, variable, value)
            jsa = gaussian_jsa(params, hom_grid(params, channel, n, half_width_factor))
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                result = hom_trace(jsa, channel, params, default_hom_scan(params, channel, steps))
        except (BiphotonError, ValueError) as exc:
            return SweepPoint(value, math.nan, math.nan, math.nan, f"{type(exc).__name__}: {exc}")
        try:
            width = hom_fwhm(result)
            error = None
        except BiphotonError as exc:
            width, error = math.nan, f"{type(exc).__name__}: {exc}"
        return SweepPoint(value, result.visibility, width, result.dip_position, error)

    return ordered_map(point, values)
