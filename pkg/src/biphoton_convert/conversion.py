"""Frequency-conversion channel acting on the idler photon.

The converted amplitude is ``f'(w_s, w1) = T(w1) * f(w_s, w1 - Omega)``: the
idler axis of the grid is relabelled by ``Omega`` and weighted by the
conversion amplitude evaluated at the converted frequency ``w1``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spectral_core import GaussianSourceParams, Jsa

FLAT = "flat"
GAUSSIAN_PHASE_MATCHED = "gaussian"


@dataclass(frozen=True)
class ConversionChannel:
    """Conversion amplitude T(w, Omega).

    ``omega_shift`` is signed; negative values describe down-conversion.
    ``beta`` and ``omega_i0`` are used only by the phase-matched kind, where
    ``omega_i0`` is the (post-conversion) frequency of maximum conversion.
    """

    kind: str = FLAT
    t0: float = 1.0
    omega_shift: float = 0.0
    beta: float | None = None
    omega_i0: float | None = None

    def __post_init__(self):
        if self.kind not in (FLAT, GAUSSIAN_PHASE_MATCHED):
            raise ValueError(f"unknown channel kind {self.kind!r}")
        if not 0.0 <= self.t0 <= 1.0:
            raise ValueError(f"t0 must lie in [0, 1], got {self.t0!r}")
        if self.kind == GAUSSIAN_PHASE_MATCHED:
            if self.beta is None or not self.beta > 0:
                raise ValueError(f"phase-matched channel needs beta > 0, got {self.beta!r}")
            if self.omega_i0 is None:
                raise ValueError("phase-matched channel needs omega_i0")

    @property
    def is_flat(self) -> bool:
        return self.kind == FLAT


def flat_channel(t0=1.0, omega_shift=0.0) -> ConversionChannel:
    return ConversionChannel(FLAT, t0, omega_shift)


def phase_matched_channel(params: GaussianSourceParams, t0, omega_shift, beta, offset=0.0) -> ConversionChannel:
    """Gaussian phase-matched channel whose peak sits ``offset`` from the converted idler centre.

    ``offset=0`` centres the window on the converted photon. ``offset=-omega_shift``
    puts it at the unconverted idler frequency, which is the convention under
    which the closed-form phase-matched results hold.
    """
    return ConversionChannel(
        GAUSSIAN_PHASE_MATCHED, t0, omega_shift, beta, params.omega_i0 + omega_shift + offset
    )


def conversion_amplitude(channel: ConversionChannel, omega):
    """T at the converted frequency ``omega``; a scalar or an array shaped like ``omega``."""
    if channel.is_flat:
        if np.ndim(omega):
            return np.full(np.shape(omega), channel.t0)
        return channel.t0
    return channel.t0 * np.exp(-((omega - channel.omega_i0) ** 2) / (2.0 * channel.beta**2))


def vacuum_coupling(channel: ConversionChannel, omega):
    """Amplitude coupling the converted mode to vacuum noise, sqrt(1 - T^2)."""
    t = conversion_amplitude(channel, omega)
    return np.sqrt(1.0 - np.square(t))


def apply_conversion(jsa: Jsa, channel: ConversionChannel) -> Jsa:
    grid = jsa.grid.translated(d_i=channel.omega_shift) if channel.omega_shift else jsa.grid
    if channel.is_flat:
        values = channel.t0 * jsa.values
    else:
        values = jsa.values * conversion_amplitude(channel, grid.axis_i)[np.newaxis, :]
    meta = dict(jsa.meta)
    meta["channel"] = channel
    return Jsa(grid, values, label=f"{jsa.label}|converted", meta=meta)
