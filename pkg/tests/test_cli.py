import csv
import json

import numpy as np
import pytest

from biphoton_convert.cli import main
from biphoton_convert.correlation import peak_width

from conftest import GAUSS_FWHM, TWO_PI

FIG2 = {
    "source": {"sigma_minus_thz": 1, "sigma_p_thz": 0.1, "delta_thz": 2, "tau0_ps": 0.2, "omega_p_thz": 400},
    "channel": {"kind": "flat", "t0": 1, "omega_shift_thz": 1.95},
    "scan": {"tau": {"start_ps": -0.6, "stop_ps": 1.0, "steps": 81},
             "tau_t": {"start_ps": -1.4, "stop_ps": 1.0, "steps": 121}},
    "sweep": {"variable": "omega", "start_thz": 0.5, "stop_thz": 3.5, "steps": 7},
}


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], np.array(rows[1:], dtype=float)


@pytest.fixture
def cfg_path(tmp_path):
    path = tmp_path / "fig2.json"
    path.write_text(json.dumps(FIG2))
    return path


def test_g2_command(cfg_path, tmp_path, capsys):
    out = tmp_path / "g2"
    assert main(["g2", "--config", str(cfg_path), "--out", str(out), "--format", "both"]) == 0
    header, data = read_csv(out / "g2.csv")
    assert header == ["tau_ps", "g2_numeric_per_ps", "g2_closed_per_ps", "rel_dev"]
    assert data[:, 3].max() < 1e-6
    assert (out / "g2.svg").read_text().startswith("<svg")
    assert "peak_ps=0.200000" in capsys.readouterr().out


def test_csv_bytes_are_deterministic(cfg_path, tmp_path):
    for name in ("a", "b"):
        assert main(["g2", "--config", str(cfg_path), "--out", str(tmp_path / name), "--normalize"]) == 0
    a = (tmp_path / "a" / "g2.csv").read_bytes()
    assert a == (tmp_path / "b" / "g2.csv").read_bytes()
    assert b"\r" not in a and a.startswith(b"tau_ps,g2_numeric_norm,")


def test_hom_command(cfg_path, tmp_path, capsys):
    out = tmp_path / "hom"
    assert main(["hom", "--config", str(cfg_path), "--out", str(out)]) == 0
    header, data = read_csv(out / "hom.csv")
    assert header[0] == "tau_t_ps" and header[3] == "rel_dev"
    assert data[:, 3].max() < 1e-4
    line = capsys.readouterr().out
    assert "visibility=0.99875" in line and "dip_position_ps=-0.200000" in line


def test_sweep_command(cfg_path, tmp_path):
    out = tmp_path / "sweep"
    assert main(["sweep", "--config", str(cfg_path), "--out", str(out)]) == 0
    header, data = read_csv(out / "sweep.csv")
    assert header == ["omega_thz", "visibility_numeric", "visibility_closed", "fwhm_ps"]
    np.testing.assert_allclose(data[:, 1], data[:, 2], atol=1e-3)


def test_compare_command(cfg_path, tmp_path, capsys):
    out = tmp_path / "cmp"
    assert main(["compare", "--config", str(cfg_path), "--out", str(out)]) == 0
    doc = json.loads((out / "compare.json").read_text())
    verdicts = {r["eq"]: r["verdict"] for r in doc["records"]}
    assert verdicts[11] == verdicts[14] == verdicts[15] == "match"
    assert "verdict" in capsys.readouterr().out


def test_config_errors_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"source": {"sigmaminus": 1}}))
    assert main(["g2", "--config", str(bad)]) == 2
    assert "sigmaminus" in capsys.readouterr().err
    assert main(["g2"]) == 2
    assert main(["figure"]) == 2
    assert main(["g2", "--config", str(bad), "--grid-n", "7"]) == 2


def test_support_mismatch_exits_3(tmp_path, capsys):
    doc = json.loads(json.dumps(FIG2))
    doc["channel"]["omega_shift_thz"] = 20
    doc["grid"] = {"n": 64, "half_width_factor": 1}
    path = tmp_path / "narrow.json"
    path.write_text(json.dumps(doc))
    assert main(["hom", "--config", str(path), "--out", str(tmp_path)]) == 3
    assert "SupportMismatchError" in capsys.readouterr().err


def test_figure_fig2(tmp_path):
    assert main(["figure", "fig2", "--out", str(tmp_path), "--format", "csv"]) == 0
    header, data = read_csv(tmp_path / "fig2.csv")
    tau, conv, orig = data.T
    assert conv.max() == pytest.approx(1.0) and orig.max() == pytest.approx(1.0)
    assert tau[np.argmax(conv)] == pytest.approx(0.2, abs=1e-9)
    assert tau[np.argmax(orig)] == pytest.approx(0.0, abs=1e-9)
    assert peak_width(tau, conv) == pytest.approx(peak_width(tau, orig), rel=1e-2)
    assert peak_width(tau, conv) == pytest.approx(GAUSS_FWHM / TWO_PI, rel=1e-2)


def test_figure_fig4b(tmp_path):
    assert main(["figure", "--figure", "fig4b", "--out", str(tmp_path), "--grid-n", "256"]) == 0
    header, data = read_csv(tmp_path / "fig4b.csv")
    omega, numeric = data[:, 0], data[:, 1]
    expected = np.exp(-((omega - 2.0) ** 2) / 2.0)
    assert np.abs(numeric - expected).max() < 1e-3
    svg = (tmp_path / "fig4b.svg").read_text()
    assert "polyline" in svg
