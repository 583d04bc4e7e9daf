"""JSON run configuration with strict validation.

Input frequencies are in THz (converted with w = 2 pi f), times in ps.
Unknown keys are rejected so that a misspelt parameter can never fall
back silently to a default.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from pathlib import Path

from .conversion import FLAT, GAUSSIAN_PHASE_MATCHED, ConversionChannel
from .correlation import DetectorParams
from .errors import ConfigError, UnknownKeyError
from .spectral_core import GaussianSourceParams, rad_per_ps_to_thz, thz_to_rad_per_ps

FORMATS = ("csv", "svg", "both")
SWEEP_VARIABLES = ("omega", "beta")


@dataclass(frozen=True)
class ScanSpec:
    start_ps: float
    stop_ps: float
    steps: int


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    start_thz: float
    stop_thz: float
    steps: int


@dataclass(frozen=True)
class OutputSpec:
    dir: str = "out"
    format: str = "csv"
    normalize: bool = False


@dataclass(frozen=True)
class RunConfig:
    source: GaussianSourceParams
    channel: ConversionChannel
    detector: DetectorParams
    omega_i0_offset: float = 0.0
    tau_scan: ScanSpec | None = None
    tau_t_scan: ScanSpec | None = None
    sweep: SweepSpec | None = None
    grid_n: int = 512
    half_width_factor: float = 6.0
    output: OutputSpec = OutputSpec()


def _section(doc, path, allowed, required=()):
    if not isinstance(doc, dict):
        raise ConfigError(path or "<root>", "expected an object")
    for key in doc:
        if key not in allowed:
            raise UnknownKeyError(f"{path}.{key}" if path else key, key)
    for key in required:
        if key not in doc:
            raise ConfigError(f"{path}.{key}" if path else key, "missing required field")
    return doc


def _number(doc, path, key, default=None, positive=False, nonneg=False):
    where = f"{path}.{key}"
    value = doc.get(key, default)
    if value is None:
        if default is None and key in doc:
            raise ConfigError(where, "must be a number, got null")
        raise ConfigError(where, "missing required field")
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ConfigError(where, f"must be a finite number, got {value!r}")
    if positive and value <= 0:
        raise ConfigError(where, f"must be > 0, got {value!r}")
    if nonneg and value < 0:
        raise ConfigError(where, f"must be >= 0, got {value!r}")
    return float(value)


def _integer(doc, path, key, default, minimum):
    where = f"{path}.{key}"
    value = doc.get(key, default)
    if isinstance(value, bool) or not isinstance(value, (int, float)) or value != int(value):
        raise ConfigError(where, f"must be an integer, got {value!r}")
    if value < minimum:
        raise ConfigError(where, f"must be >= {minimum}, got {value!r}")
    return int(value)


def _scan(doc, path):
    _section(doc, path, ("start_ps", "stop_ps", "steps"), ("start_ps", "stop_ps", "steps"))
    start = _number(doc, path, "start_ps")
    stop = _number(doc, path, "stop_ps")
    steps = _integer(doc, path, "steps", None, 2)
    if not start < stop:
        raise ConfigError(f"{path}.stop_ps", f"must exceed start_ps ({start!r}), got {stop!r}")
    return ScanSpec(start, stop, steps)


def config_from_dict(doc) -> RunConfig:
    _section(doc, "", ("source", "channel", "detector", "scan", "sweep", "grid", "output"), ("source",))

    src = _section(doc["source"], "source",
                   ("omega_p_thz", "sigma_p_thz", "delta_thz", "sigma_minus_thz", "tau0_ps"),
                   ("omega_p_thz", "sigma_p_thz", "sigma_minus_thz"))
    source = GaussianSourceParams(
        omega_p=thz_to_rad_per_ps(_number(src, "source", "omega_p_thz", positive=True)),
        sigma_p=thz_to_rad_per_ps(_number(src, "source", "sigma_p_thz", positive=True)),
        delta=thz_to_rad_per_ps(_number(src, "source", "delta_thz", 0.0)),
        sigma_minus=thz_to_rad_per_ps(_number(src, "source", "sigma_minus_thz", positive=True)),
        tau0=_number(src, "source", "tau0_ps", 0.0),
    )

    ch = _section(doc.get("channel", {}), "channel",
                  ("kind", "t0", "omega_shift_thz", "beta_thz", "omega_i0_offset_thz"))
    beta_thz = ch.get("beta_thz")
    kind = ch.get("kind", FLAT if beta_thz is None else GAUSSIAN_PHASE_MATCHED)
    if kind not in (FLAT, GAUSSIAN_PHASE_MATCHED):
        raise ConfigError("channel.kind", f"must be {FLAT!r} or {GAUSSIAN_PHASE_MATCHED!r}, got {kind!r}")
    t0 = _number(ch, "channel", "t0", 1.0, nonneg=True)
    if t0 > 1.0:
        raise ConfigError("channel.t0", f"must lie in [0, 1], got {t0!r}")
    shift = thz_to_rad_per_ps(_number(ch, "channel", "omega_shift_thz", 0.0))
    offset = thz_to_rad_per_ps(_number(ch, "channel", "omega_i0_offset_thz", 0.0))
    if kind == FLAT:
        if beta_thz is not None:
            raise ConfigError("channel.beta_thz", "must be null for a flat channel")
        channel = ConversionChannel(FLAT, t0, shift)
    else:
        beta = thz_to_rad_per_ps(_number(ch, "channel", "beta_thz", positive=True))
        channel = ConversionChannel(GAUSSIAN_PHASE_MATCHED, t0, shift, beta, source.omega_i0 + shift + offset)

    det = _section(doc.get("detector", {}), "detector", ("t_resolution_ps", "quad_order"))
    detector = DetectorParams(
        _number(det, "detector", "t_resolution_ps", 100.0, positive=True),
        _integer(det, "detector", "quad_order", 64, 16),
    )

    scan = _section(doc.get("scan", {}), "scan", ("tau", "tau_t", "start_ps", "stop_ps", "steps"))
    flat_scan = {k: scan[k] for k in ("start_ps", "stop_ps", "steps") if k in scan}
    tau_scan = _scan(scan["tau"], "scan.tau") if "tau" in scan else None
    tau_t_scan = _scan(scan["tau_t"], "scan.tau_t") if "tau_t" in scan else None
    if flat_scan:
        # a bare scan block is shorthand for the same range on both delays
        shared = _scan(flat_scan, "scan")
        tau_scan = tau_scan or shared
        tau_t_scan = tau_t_scan or shared

    sweep = None
    if "sweep" in doc:
        sw = _section(doc["sweep"], "sweep", ("variable", "start_thz", "stop_thz", "steps"),
                      ("variable", "start_thz", "stop_thz", "steps"))
        if sw["variable"] not in SWEEP_VARIABLES:
            raise ConfigError("sweep.variable", f"must be one of {SWEEP_VARIABLES}, got {sw['variable']!r}")
        start = _number(sw, "sweep", "start_thz")
        stop = _number(sw, "sweep", "stop_thz")
        if not start < stop:
            raise ConfigError("sweep.stop_thz", f"must exceed start_thz ({start!r}), got {stop!r}")
        if sw["variable"] == "beta" and kind != GAUSSIAN_PHASE_MATCHED:
            raise ConfigError("sweep.variable", "a beta sweep needs a phase-matched channel")
        if sw["variable"] == "beta" and start <= 0:
            raise ConfigError("sweep.start_thz", "beta must be > 0")
        sweep = SweepSpec(sw["variable"], start, stop, _integer(sw, "sweep", "steps", None, 2))

    grid = _section(doc.get("grid", {}), "grid", ("n", "half_width_factor"))
    n = _integer(grid, "grid", "n", 512, 8)
    if n % 2:
        raise ConfigError("grid.n", f"must be even, got {n}")
    factor = _number(grid, "grid", "half_width_factor", 6.0, positive=True)

    out = _section(doc.get("output", {}), "output", ("dir", "format", "normalize"))
    fmt = out.get("format", "csv")
    if fmt not in FORMATS:
        raise ConfigError("output.format", f"must be one of {FORMATS}, got {fmt!r}")
    normalize = out.get("normalize", False)
    if not isinstance(normalize, bool):
        raise ConfigError("output.normalize", f"must be true or false, got {normalize!r}")
    directory = out.get("dir", "out")
    if not isinstance(directory, str) or not directory:
        raise ConfigError("output.dir", "must be a non-empty string")

    return RunConfig(source, channel, detector, offset, tau_scan, tau_t_scan, sweep, n, factor,
                     OutputSpec(directory, fmt, normalize))


def parse_config(source) -> RunConfig:
    """Parse a config from a path, a JSON string, or an already-loaded dict."""
    if isinstance(source, dict):
        return config_from_dict(source)
    if isinstance(source, os.PathLike) or not str(source).lstrip().startswith("{"):
        try:
            text = Path(source).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError("<file>", f"cannot read {source}: {exc}") from exc
    else:
        text = source
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("<json>", f"invalid JSON: {exc}") from exc
    return config_from_dict(doc)


def serialize_config(config: RunConfig) -> dict:
    """Inverse of :func:`config_from_dict`, in input units."""
    s, c = config.source, config.channel
    doc = {
        "source": {
            "omega_p_thz": rad_per_ps_to_thz(s.omega_p),
            "sigma_p_thz": rad_per_ps_to_thz(s.sigma_p),
            "delta_thz": rad_per_ps_to_thz(s.delta),
            "sigma_minus_thz": rad_per_ps_to_thz(s.sigma_minus),
            "tau0_ps": s.tau0,
        },
        "channel": {
            "kind": c.kind,
            "t0": c.t0,
            "omega_shift_thz": rad_per_ps_to_thz(c.omega_shift),
            "beta_thz": None if c.beta is None else rad_per_ps_to_thz(c.beta),
            "omega_i0_offset_thz": rad_per_ps_to_thz(config.omega_i0_offset),
        },
        "detector": {"t_resolution_ps": config.detector.t_resolution, "quad_order": config.detector.quad_order},
        "grid": {"n": config.grid_n, "half_width_factor": config.half_width_factor},
        "output": {"dir": config.output.dir, "format": config.output.format,
                   "normalize": config.output.normalize},
    }
    scan = {}
    for key, spec in (("tau", config.tau_scan), ("tau_t", config.tau_t_scan)):
        if spec is not None:
            scan[key] = {"start_ps": spec.start_ps, "stop_ps": spec.stop_ps, "steps": spec.steps}
    if scan:
        doc["scan"] = scan
    if config.sweep is not None:
        w = config.sweep
        doc["sweep"] = {"variable": w.variable, "start_thz": w.start_thz, "stop_thz": w.stop_thz, "steps": w.steps}
    return doc


def dumps_config(config: RunConfig) -> str:
    return json.dumps(serialize_config(config), indent=2, sort_keys=True) + "\n"
