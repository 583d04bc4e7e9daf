"""``biphoton-convert`` command line.

Exit status: 0 success, 2 configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import closed_forms as cf
from .config import OutputSpec, parse_config
from .conversion import apply_conversion
from .correlation import delay_grid, g2_trace
from .errors import BiphotonError, ConfigError, NumericalError
from .figures import FIGURE_IDS, make_figure
from .hom import HomScan, channel_for, default_hom_scan, hom_fwhm, hom_grid, hom_trace, visibility_sweep
from .output import atomic_write, csv_text, line_plot_svg
from .spectral_core import gaussian_jsa, rad_per_ps_to_thz, thz_to_rad_per_ps

COMMANDS = ("g2", "hom", "sweep", "compare", "figure")


def _rel(closed, numeric):
    closed, numeric = np.asarray(closed, float), np.asarray(numeric, float)
    floor = 1e-9 * np.max(np.abs(numeric))
    return np.abs(closed - numeric) / np.maximum(np.abs(numeric), floor)


def _emit(out: OutputSpec, stem, header, columns, xlabel, ylabel, labels, title):
    written = []
    if out.format in ("csv", "both"):
        written.append(atomic_write(Path(out.dir) / f"{stem}.csv", csv_text(header, columns)))
    if out.format in ("svg", "both"):
        series = list(zip(labels, columns[1 : 1 + len(labels)]))
        svg = line_plot_svg(columns[0], series, xlabel, ylabel, title)
        written.append(atomic_write(Path(out.dir) / f"{stem}.svg", svg))
    return written


def run_g2(cfg):
    p, ch, det = cfg.source, cfg.channel, cfg.detector
    if cfg.tau_scan is not None:
        taus = delay_grid(cfg.tau_scan.start_ps, cfg.tau_scan.stop_ps, cfg.tau_scan.steps)
    else:
        taus = p.tau0 + np.linspace(-6.0, 6.0, 241) / p.sigma_minus
    jsa = gaussian_jsa(p, hom_grid(p, ch, cfg.grid_n, cfg.half_width_factor))
    trace = g2_trace(apply_conversion(jsa, ch), taus, p.tau0, det)
    closed = cf.g2_averaged_closed(p, ch.t0, taus, det.t_resolution, cf.EXACT, ch.beta, ch.omega_shift)
    numeric = trace.values
    rel = _rel(closed, numeric)
    if cfg.output.normalize:
        numeric = numeric / numeric.max()
        closed = closed / closed.max()
        header = ["tau_ps", "g2_numeric_norm", "g2_closed_norm", "rel_dev"]
    else:
        header = ["tau_ps", "g2_numeric_per_ps", "g2_closed_per_ps", "rel_dev"]
    _emit(cfg.output, "g2", header, [taus, numeric, closed, rel], "tau (ps)", "g2",
          ["numeric", "closed form"], "detector-averaged g2")
    print(f"peak_ps={trace.delays[int(np.argmax(trace.values))]:.6f} max_rel_dev={rel.max():.3e}")


def run_hom(cfg):
    p, ch = cfg.source, cfg.channel
    if cfg.tau_t_scan is not None:
        s = cfg.tau_t_scan
        scan = HomScan(np.linspace(s.start_ps, s.stop_ps, s.steps), p.tau0)
    else:
        scan = default_hom_scan(p, ch)
    jsa = gaussian_jsa(p, hom_grid(p, ch, cfg.grid_n, cfg.half_width_factor))
    result = hom_trace(jsa, ch, p, scan)
    delays = scan.tau_t_grid
    numeric = result.trace.values
    closed = cf.hom_rate_closed(p, ch.t0, delays, ch.omega_shift, ch.beta)
    rel = _rel(closed, numeric)
    if cfg.output.normalize:
        numeric = numeric / result.baseline
        closed = closed / np.max(closed)
        header = ["tau_t_ps", "rate_numeric_norm", "rate_closed_norm", "rel_dev"]
    else:
        header = ["tau_t_ps", "rate_numeric_arb", "rate_closed_arb", "rel_dev"]
    _emit(cfg.output, "hom", header, [delays, numeric, closed, rel], "tau_T (ps)", "R_c",
          ["numeric", "closed form"], "HOM coincidence rate")
    try:
        width = f"{hom_fwhm(result):.6f}"
    except BiphotonError:
        width = "nan"
    print(f"visibility={result.visibility:.9f} dip_position_ps={result.dip_position:.6f} "
          f"baseline={result.baseline:.9g} fwhm_ps={width}")


def run_sweep(cfg):
    p, ch = cfg.source, cfg.channel
    if cfg.sweep is None:
        raise ConfigError("sweep", "the sweep command needs a sweep section")
    w = cfg.sweep
    values = thz_to_rad_per_ps(np.linspace(w.start_thz, w.stop_thz, w.steps))
    points = visibility_sweep(p, ch, w.variable, values, cfg.grid_n, cfg.half_width_factor)
    closed = []
    for v in values:
        swept = channel_for(ch, w.variable, v)
        closed.append(cf.hom_visibility_closed(p, swept.omega_shift, swept.beta))
    vis = [pt.visibility for pt in points]
    widths = [pt.fwhm for pt in points]
    _emit(cfg.output, "sweep", [f"{w.variable}_thz", "visibility_numeric", "visibility_closed", "fwhm_ps"],
          [rad_per_ps_to_thz(values), vis, closed, widths], f"{w.variable} / 2 pi (THz)", "visibility",
          ["numeric", "closed form"], "HOM visibility sweep")
    for pt in points:
        if pt.error:
            print(f"{w.variable}_thz={rad_per_ps_to_thz(pt.value):.9g}: {pt.error}", file=sys.stderr)


def run_compare(cfg):
    report = cf.compare_against_oracle(cfg)
    atomic_write(Path(cfg.output.dir) / "compare.json", report.to_json())
    table = report.to_table()
    atomic_write(Path(cfg.output.dir) / "compare.txt", table)
    sys.stdout.write(table)


def run_figure(figure_id, out: OutputSpec, n):
    data = make_figure(figure_id, n=n)
    columns = data.columns
    labels = data.labels
    _emit(out, data.name, data.header, columns, data.xlabel, data.ylabel, labels, data.name)
    text = "\n".join(data.summary) + "\n"
    atomic_write(Path(out.dir) / f"{data.name}_summary.txt", text)
    sys.stdout.write(text)


def build_parser():
    parser = argparse.ArgumentParser(prog="biphoton-convert",
                                     description="Correlation and HOM simulations of frequency-converted photon pairs.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("figure_id", nargs="?", choices=FIGURE_IDS, help="figure to reproduce (figure command)")
    parser.add_argument("--config", help="JSON run configuration")
    parser.add_argument("--out", help="output directory (overrides output.dir)")
    parser.add_argument("--format", choices=("csv", "svg", "both"), help="output format")
    parser.add_argument("--normalize", action="store_true", default=None, help="peak-normalise traces")
    parser.add_argument("--grid-n", type=int, help="frequency grid points per axis")
    parser.add_argument("--figure", choices=FIGURE_IDS, help="figure to reproduce (figure command)")
    return parser


def _fail(code, exc):
    print(f"biphoton-convert: {type(exc).__name__}: {exc}", file=sys.stderr)
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.grid_n is not None and (args.grid_n < 8 or args.grid_n % 2):
            raise ConfigError("--grid-n", f"must be an even integer >= 8, got {args.grid_n}")
        if args.command == "figure":
            figure_id = args.figure or args.figure_id
            if figure_id is None:
                raise ConfigError("--figure", f"the figure command needs one of {FIGURE_IDS}")
            out = OutputSpec("out", "both", True)
            if args.config:
                out = parse_config(args.config).output
            out = replace(out, dir=args.out or out.dir, format=args.format or out.format)
            run_figure(figure_id, out, args.grid_n or 512)
            return 0
        if not args.config:
            raise ConfigError("--config", f"the {args.command} command needs a configuration file")
        cfg = parse_config(args.config)
        out = replace(
            cfg.output,
            dir=args.out or cfg.output.dir,
            format=args.format or cfg.output.format,
            normalize=cfg.output.normalize if args.normalize is None else True,
        )
        cfg = replace(cfg, output=out, grid_n=args.grid_n or cfg.grid_n)
        {"g2": run_g2, "hom": run_hom, "sweep": run_sweep, "compare": run_compare}[args.command](cfg)
    except ConfigError as exc:
        return _fail(2, exc)
    except NumericalError as exc:
        return _fail(3, exc)
    except ValueError as exc:
        # parameter validation inside the engines (bad physical values)
        return _fail(2, exc)
    return 0


if __name__ == "__main__":
    sys.exit(main())
