"""Frequency grids and the biphoton joint spectral amplitude (JSA).

Units throughout the package: angular frequency in rad/ps, time in ps.
The JSA is indexed ``values[j, k] = f(omega_s[j], omega_i[k])`` with the
signal photon on the first axis and the idler photon on the second.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

TWO_PI = 2.0 * np.pi


def thz_to_rad_per_ps(f_thz):
    """Ordinary frequency in THz to angular frequency in rad/ps."""
    return TWO_PI * f_thz


def rad_per_ps_to_thz(omega):
    return omega / TWO_PI


@dataclass(frozen=True)
class FrequencyGrid2D:
    """Uniform square grid over (omega_s, omega_i).

    Both axes share ``n`` and ``half_width``; axis ``k`` runs from
    ``center_k - half_width`` to ``center_k + half_width`` inclusive.
    """

    center_s: float
    center_i: float
    half_width: float
    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 8 or self.n % 2:
            raise ValueError(f"n must be an even integer >= 8, got {self.n!r}")
        if not self.half_width > 0:
            raise ValueError(f"half_width must be positive, got {self.half_width!r}")

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / (self.n - 1)

    @property
    def axis_s(self) -> np.ndarray:
        return np.linspace(self.center_s - self.half_width, self.center_s + self.half_width, self.n)

    @property
    def axis_i(self) -> np.ndarray:
        return np.linspace(self.center_i - self.half_width, self.center_i + self.half_width, self.n)

    @property
    def alias_period(self) -> float:
        """Period in time of any discrete Fourier sum taken on this grid."""
        return TWO_PI / self.spacing

    def mesh(self):
        return np.meshgrid(self.axis_s, self.axis_i, indexing="ij")

    def translated(self, d_s=0.0, d_i=0.0) -> "FrequencyGrid2D":
        return FrequencyGrid2D(self.center_s + d_s, self.center_i + d_i, self.half_width, self.n)


def make_frequency_grid(center_s, center_i, half_width, n) -> FrequencyGrid2D:
    return FrequencyGrid2D(float(center_s), float(center_i), float(half_width), int(n))


@dataclass(frozen=True)
class GaussianSourceParams:
    """Physical parameters of the Gaussian photon-pair source.

    Attributes:
        omega_p: pump central angular frequency (rad/ps).
        sigma_p: pump bandwidth (rad/ps).
        delta: the offset in the ``(omega_s - omega_i - delta)`` exponent of
            the JSA, so the signal sits ``delta`` above the idler (rad/ps).
        sigma_minus: pair (difference-frequency) bandwidth (rad/ps).
        tau0: fixed path delay of the signal arm (ps).
    """

    omega_p: float
    sigma_p: float
    delta: float
    sigma_minus: float
    tau0: float = 0.0

    def __post_init__(self):
        if not self.sigma_p > 0:
            raise ValueError(f"sigma_p must be positive, got {self.sigma_p!r}")
        if not self.sigma_minus > 0:
            raise ValueError(f"sigma_minus must be positive, got {self.sigma_minus!r}")
        if self.omega_s0 <= 0 or self.omega_i0 <= 0:
            warnings.warn(
                f"central frequencies omega_s0={self.omega_s0:.6g}, omega_i0={self.omega_i0:.6g} "
                "are not both positive; results are translation invariant so the run proceeds",
                stacklevel=3,
            )

    @property
    def omega_s0(self) -> float:
        return 0.5 * (self.omega_p + self.delta)

    @property
    def omega_i0(self) -> float:
        return 0.5 * (self.omega_p - self.delta)

    @property
    def spectral_scale(self) -> float:
        """Larger of the sum-frequency width ``2 sigma_p`` and ``sigma_minus``."""
        return max(2.0 * self.sigma_p, self.sigma_minus)


@dataclass(frozen=True, eq=False)
class Jsa:
    """Sampled joint spectral amplitude on a :class:`FrequencyGrid2D`.

    ``values`` carries units of 1/(rad/ps) so that ``sum |f|^2 dw^2`` is
    dimensionless. The array is made read-only on construction.
    """

    grid: FrequencyGrid2D
    values: np.ndarray
    label: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        values = np.asarray(self.values)
        if values.shape != (self.grid.n, self.grid.n):
            raise ValueError(f"values shape {values.shape} does not match grid n={self.grid.n}")
        if values.flags.writeable:
            values = values.copy()
            values.flags.writeable = False
        object.__setattr__(self, "values", values)

    def scaled(self, factor) -> "Jsa":
        return Jsa(self.grid, factor * self.values, label=f"{self.label}*{factor}", meta=dict(self.meta))


def gaussian_amplitude(params: GaussianSourceParams, omega_s, omega_i):
    """Evaluate the Gaussian JSA at arbitrary (signal, idler) frequencies."""
    norm = 1.0 / np.sqrt(TWO_PI * params.sigma_p * params.sigma_minus)
    s = omega_s + omega_i - params.omega_p
    d = omega_s - omega_i - params.delta
    return norm * np.exp(-s**2 / (16.0 * params.sigma_p**2) - d**2 / (4.0 * params.sigma_minus**2))


def default_grid(params: GaussianSourceParams, n=512, half_width_factor=6.0, extra=0.0) -> FrequencyGrid2D:
    """Grid centred on the JSA peak with ``half_width = factor * spectral_scale + extra``."""
    return make_frequency_grid(
        params.omega_s0, params.omega_i0, half_width_factor * params.spectral_scale + extra, n
    )


def gaussian_jsa(params: GaussianSourceParams, grid: FrequencyGrid2D | None = None) -> Jsa:
    if grid is None:
        grid = default_grid(params)
    need = 4.0 * params.spectral_scale
    reach_s = grid.half_width - abs(grid.center_s - params.omega_s0)
    reach_i = grid.half_width - abs(grid.center_i - params.omega_i0)
    if min(reach_s, reach_i) < need:
        warnings.warn(
            f"grid covers only +/-{min(reach_s, reach_i):.4g} rad/ps around the JSA peak "
            f"(recommended >= {need:.4g}); tails will be truncated",
            stacklevel=2,
        )
    ws, wi = grid.mesh()
    return Jsa(grid, gaussian_amplitude(params, ws, wi), label="gaussian")


def jsa_norm(jsa: Jsa) -> float:
    """Discrete version of the integral of |f|^2 over both frequencies."""
    return float(np.sum(np.abs(jsa.values) ** 2) * jsa.grid.spacing**2)


def weighted_moments(jsa: Jsa):
    """Mean vector and covariance of (omega_s, omega_i) under the |f|^2 weight."""
    w = np.abs(jsa.values) ** 2
    total = w.sum()
    ws, wi = jsa.grid.mesh()
    mean = np.array([np.sum(w * ws), np.sum(w * wi)]) / total
    ds, di = ws - mean[0], wi - mean[1]
    cov = np.array(
        [
            [np.sum(w * ds * ds), np.sum(w * ds * di)],
            [np.sum(w * di * ds), np.sum(w * di * di)],
        ]
    ) / total
    return mean, cov


def correlation_coefficient(params: GaussianSourceParams) -> float:
    """Correlation between signal and idler frequencies under |f|^2."""
    a = 4.0 * params.sigma_p**2
    b = params.sigma_minus**2
    return (a - b) / (a + b)
