"""Numerical second-order correlation of the converted idler and the signal.

The two-time correlation is the squared modulus of a double Fourier sum over
the converted JSA,

    g2(t, t + tau) = (1/4 pi^2) |sum f'(w2, w1) e^{i w1 t} e^{i w2 (t + tau - tau0)} dw^2|^2,

with ``w2`` the signal and ``w1`` the converted idler frequency. Grouping the
grid by the sum index ``m = j + k`` turns the double sum into a 1-D
trigonometric polynomial in ``t``:

    A(t) = sum_m B_m(tau') e^{i m dw t},   B_m = sum_{j+k=m} f'_jk e^{i j dw tau'}

which is cheap to evaluate at many ``t`` once ``B`` is known. ``A`` is periodic
in ``t`` with period ``2 pi / dw``; only the period centred on the wavepacket
is a faithful sample of the continuous integral, so the detector average
integrates over that period intersected with the detector window.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ._parallel import ordered_map
from .errors import NoPeakError, QuadratureError
from .spectral_core import Jsa

TWO_TIME = "two_time"
DETECTOR_AVERAGED = "detector_averaged"
HOM_RATE = "hom_rate"

QUAD_RTOL = 1e-3
CORE_HALF_WIDTH = 10.0  # wavepacket half-widths covered by the central panel
_CHUNK = 128


@dataclass(frozen=True)
class DetectorParams:
    """Rectangular detector window of length ``t_resolution`` (ps)."""

    t_resolution: float
    quad_order: int = 64

    def __post_init__(self):
        if not self.t_resolution > 0:
            raise ValueError(f"t_resolution must be positive, got {self.t_resolution!r}")
        if int(self.quad_order) != self.quad_order or self.quad_order < 16:
            raise ValueError(f"quad_order must be an integer >= 16, got {self.quad_order!r}")


@dataclass(frozen=True, eq=False)
class CorrelationTrace:
    """A real correlation sampled on a uniform delay grid."""

    delays: np.ndarray
    values: np.ndarray
    kind: str
    units: str
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        delays = np.asarray(self.delays, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if delays.ndim != 1 or delays.shape != values.shape:
            raise ValueError("delays and values must be 1-D arrays of equal length")
        check_uniform(delays)
        if values.size:
            floor = -1e-12 * max(np.max(np.abs(values)), 0.0)
            if np.any(values < floor):
                raise ValueError("trace has significantly negative values")
            values = np.where(values < 0, 0.0, values)
        object.__setattr__(self, "delays", delays)
        object.__setattr__(self, "values", values)

    @property
    def step(self) -> float:
        return float(self.delays[1] - self.delays[0]) if self.delays.size > 1 else 0.0

    def normalized(self) -> "CorrelationTrace":
        peak = np.max(self.values)
        meta = dict(self.meta, normalized=True)
        return CorrelationTrace(self.delays, self.values / peak, self.kind, "1", meta)

    def scaled(self, factor) -> "CorrelationTrace":
        return CorrelationTrace(self.delays, factor * self.values, self.kind, self.units, dict(self.meta))


def check_uniform(delays):
    delays = np.asarray(delays, dtype=float)
    if delays.size < 2:
        return
    steps = np.diff(delays)
    if not np.all(steps > 0):
        raise ValueError("delay grid must be strictly increasing")
    if not np.allclose(steps, steps[0], rtol=1e-9, atol=0.0):
        raise ValueError("delay grid must be uniformly spaced")


def delay_grid(start, stop, steps) -> np.ndarray:
    return np.linspace(float(start), float(stop), int(steps))


@lru_cache(maxsize=16)
def _gauss_legendre(order):
    return np.polynomial.legendre.leggauss(order)


class FourierSum:
    """Precomputed sum-index layout of a converted JSA.

    Construct once per JSA and reuse for many delays.
    """

    def __init__(self, converted: Jsa):
        grid = converted.grid
        n = grid.n
        self.dw = grid.spacing
        self.period = grid.alias_period
        # centred indices keep the phases small; the dropped offsets are global phases
        self._j = np.arange(n) - 0.5 * (n - 1)
        self._m = np.arange(2 * n - 1) - (n - 1.0)
        rows = np.arange(n)[:, np.newaxis]
        skew = np.zeros((n, 2 * n - 1), dtype=complex)
        skew[rows, rows + np.arange(n)[np.newaxis, :]] = converted.values
        self._skew = skew
        self._scale = self.dw**4 / (4.0 * np.pi**2)
        self.g2_bound = float((np.sum(np.abs(converted.values)) * self.dw**2) ** 2 / (4.0 * np.pi**2))

    def coefficients(self, tau_prime) -> np.ndarray:
        """``B_m`` for each relative delay ``tau - tau0``; shape (len, 2n-1)."""
        tau_prime = np.atleast_1d(np.asarray(tau_prime, dtype=float))
        phase = np.exp(1j * self.dw * np.outer(tau_prime, self._j))
        return phase @ self._skew

    def two_time(self, t, tau_prime) -> np.ndarray:
        t, tau_prime = np.broadcast_arrays(np.asarray(t, float), np.asarray(tau_prime, float))
        shape = t.shape
        t, tau_prime = t.ravel(), tau_prime.ravel()
        out = np.empty(t.size)
        for lo in range(0, t.size, _CHUNK):
            sl = slice(lo, lo + _CHUNK)
            b = self.coefficients(tau_prime[sl])
            e = np.exp(1j * self.dw * np.outer(t[sl], self._m))
            out[sl] = np.abs(np.einsum("pm,pm->p", b, e)) ** 2
        return (out * self._scale).reshape(shape)

    def _rate_at_nodes(self, b, nodes, m):
        amp = np.exp(1j * self.dw * np.outer(nodes, m)) @ b
        return np.abs(amp) ** 2 * self._scale

    def _support(self, block):
        """Contiguous index range holding every non-negligible ``B_m`` of a block."""
        mag = np.max(np.abs(block), axis=0)
        keep = np.nonzero(mag > 1e-17 * mag.max())[0] if mag.max() > 0 else np.arange(mag.size)
        return slice(keep[0], keep[-1] + 1) if keep.size else slice(0, mag.size)

    def wavepacket(self, b):
        """Centre and RMS width in ``t`` of ``|A(t)|^2`` from its first circular moment."""
        c0 = float(np.sum(np.abs(b) ** 2))
        if c0 == 0.0:
            return 0.0, 0.0, 0.0
        c1 = np.sum(b[1:] * np.conj(b[:-1]))
        centre = -np.angle(c1) / self.dw
        ratio = min(abs(c1) / c0, 1.0)
        if ratio <= 1e-300:
            width = self.period
        else:
            width = np.sqrt(-2.0 * np.log(ratio)) / self.dw
        return centre, max(width, 1e-6 * self.period), c0

    def panels(self, b, window):
        """Integration panels: detector window cut to the principal period, split around the core."""
        centre, width, c0 = self.wavepacket(b)
        if c0 == 0.0:
            return []
        if width > self.period / 20.0:
            warnings.warn(
                f"time-domain wavepacket width {width:.4g} ps is not small against the "
                f"alias period {self.period:.4g} ps; refine the frequency grid",
                stacklevel=3,
            )
        lo = max(window[0], centre - 0.5 * self.period)
        hi = min(window[1], centre + 0.5 * self.period)
        if lo >= hi:
            return []
        core_lo = min(max(lo, centre - CORE_HALF_WIDTH * width), hi)
        core_hi = max(min(hi, centre + CORE_HALF_WIDTH * width), lo)
        edges = sorted({lo, core_lo, core_hi, hi})
        return [(a, c) for a, c in zip(edges[:-1], edges[1:]) if c > a]

    def window_integral(self, b, window, order, support=slice(None)):
        total = 0.0
        x, w = _gauss_legendre(order)
        b_kept, m_kept = b[support], self._m[support]
        for a, c in self.panels(b, window):
            half = 0.5 * (c - a)
            nodes = a + half * (x + 1.0)
            total += half * float(np.dot(w, self._rate_at_nodes(b_kept, nodes, m_kept)))
        return total

    def averaged(self, tau_prime, t_resolution, quad_order, check=True) -> np.ndarray:
        window = (-0.5 * t_resolution, 0.5 * t_resolution)
        tau_prime = np.atleast_1d(np.asarray(tau_prime, dtype=float))
        out = np.empty(tau_prime.size)
        floor = 1e-12 * self.g2_bound * min(t_resolution, self.period)
        for lo in range(0, tau_prime.size, _CHUNK):
            block = self.coefficients(tau_prime[lo : lo + _CHUNK])
            support = self._support(block)
            for i, b in enumerate(block):
                value = self.window_integral(b, window, quad_order, support)
                if check:
                    refined = self.window_integral(b, window, 2 * quad_order, support)
                    scale = max(abs(value), abs(refined), floor)
                    if abs(refined - value) > QUAD_RTOL * scale:
                        raise QuadratureError(
                            f"detector average at tau'={tau_prime[lo + i]:.6g} ps changed by "
                            f"{abs(refined - value) / scale:.3g} (relative) when quad_order doubled "
                            f"from {quad_order} to {2 * quad_order}"
                        )
                out[lo + i] = value
        return out


def g2_two_time_numeric(converted: Jsa, t, tau, tau0):
    """Two-time correlation of the converted pair at detection times t and t + tau.

    Accepts scalars or broadcastable arrays; returns a float for scalar input.
    Units are ps^-2 (for a unit-normalised JSA).
    """
    values = FourierSum(converted).two_time(t, np.asarray(tau, float) - tau0)
    return float(values) if np.ndim(values) == 0 else values


def g2_detector_averaged_numeric(converted: Jsa, tau, tau0, det: DetectorParams):
    """Two-time correlation integrated over the detector window [-T_R/2, T_R/2] in t.

    Raises:
        QuadratureError: doubling ``det.quad_order`` moves the result by more
            than 1e-3 relative.
    """
    values = FourierSum(converted).averaged(np.asarray(tau, float) - tau0, det.t_resolution, det.quad_order)
    return float(values[0]) if np.ndim(tau) == 0 else values


def g2_trace(converted: Jsa, tau_grid, tau0, det: DetectorParams, meta=None) -> CorrelationTrace:
    tau_grid = np.asarray(tau_grid, dtype=float)
    check_uniform(tau_grid)
    engine = FourierSum(converted)
    chunks = [tau_grid[i : i + 16] for i in range(0, tau_grid.size, 16)]
    parts = ordered_map(
        lambda c: engine.averaged(c - tau0, det.t_resolution, det.quad_order), chunks
    )
    values = np.concatenate(parts) if parts else np.empty(0)
    info = {"engine": "numeric", "tau0": tau0, "t_resolution": det.t_resolution,
            "quad_order": det.quad_order, "grid": converted.grid, "label": converted.label}
    info.update(meta or {})
    return CorrelationTrace(tau_grid, values, DETECTOR_AVERAGED, "per_ps", info)


def _local_maxima(values, level):
    v = values
    interior = (v[1:-1] >= v[:-2]) & (v[1:-1] > v[2:]) & (v[1:-1] > level)
    return int(np.count_nonzero(interior))


def _crossing(x0, y0, x1, y1, level):
    return x0 + (level - y0) * (x1 - x0) / (y1 - y0)


def peak_width(delays, values):
    """Full width at half maximum of the peak of ``values``, linear interpolation."""
    delays = np.asarray(delays, float)
    values = np.asarray(values, float)
    if values.size < 3:
        raise NoPeakError("need at least three samples to locate a peak")
    k = int(np.argmax(values))
    if k == 0 or k == values.size - 1:
        raise NoPeakError("maximum lies at an endpoint of the trace")
    peak = values[k]
    if _local_maxima(values, 0.9 * peak) > 1:
        warnings.warn("trace has more than one local maximum above 0.9 of the peak", stacklevel=3)
    half = 0.5 * peak
    left = np.nonzero(values[:k] < half)[0]
    right = np.nonzero(values[k:] < half)[0]
    if left.size == 0 or right.size == 0:
        raise NoPeakError("trace does not fall below half maximum on both sides of the peak")
    i = left[-1]
    j = k + right[0]
    x_left = _crossing(delays[i], values[i], delays[i + 1], values[i + 1], half)
    x_right = _crossing(delays[j - 1], values[j - 1], delays[j], values[j], half)
    return float(x_right - x_left)


def fwhm(trace: CorrelationTrace) -> float:
    return peak_width(trace.delays, trace.values)


def peak_position(trace: CorrelationTrace) -> float:
    """Delay of the sampled maximum refined by a three-point parabola."""
    return _parabolic_vertex(trace.delays, trace.values, int(np.argmax(trace.values)))[0]


def _parabolic_vertex(x, y, k):
    if k == 0 or k == len(y) - 1:
        return float(x[k]), float(y[k])
    y0, y1, y2 = y[k - 1], y[k], y[k + 1]
    denom = y0 - 2.0 * y1 + y2
    if denom == 0.0:
        return float(x[k]), float(y1)
    shift = 0.5 * (y0 - y2) / denom
    h = x[k + 1] - x[k]
    return float(x[k] + shift * h), float(y1 - 0.25 * (y0 - y2) * shift)
