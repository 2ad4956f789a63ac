import json
import math
import subprocess
import sys

import numpy as np
import pytest

from bosegas.cli import main
from bosegas.config import (ConfigError, SweepSpec, parse_config,
                            serialize_config)

BOUNDS_CFG = """
[run]
subcommand = bounds
format = json
seed = 3

[bounds]
Y = 1e-20
constants = 1,1,1
"""


def run_cli(args):
    return main(list(args))


# ---------------------------------------------------------------------------
# config round trips and rejection


def test_config_round_trip():
    cfg = parse_config(BOUNDS_CFG)
    again = parse_config(serialize_config(cfg))
    assert again == cfg
    assert parse_config(serialize_config(again)) == again


def test_unknown_key_rejected_by_name():
    bad = BOUNDS_CFG + "wibble = 3\n"
    with pytest.raises(ConfigError, match="wibble"):
        parse_config(bad)


def test_unknown_section_rejected():
    with pytest.raises(ConfigError, match="mystery"):
        parse_config(BOUNDS_CFG + "\n[mystery]\nx = 1\n")


def test_empty_config_is_parse_error():
    with pytest.raises(ConfigError):
        parse_config("")


def test_sweep_spec_validation():
    with pytest.raises(ConfigError):
        SweepSpec.parse("Y", "geometric:1e-3:1e-1:1")     # count < 2
    with pytest.raises(ConfigError):
        SweepSpec.parse("Y", "geometric:-1:1:5")          # nonpositive endpoint
    spec = SweepSpec.parse("Y", "linear:0:1:3")
    assert spec.values() == [0.0, 0.5, 1.0]


# ---------------------------------------------------------------------------
# exit codes


def test_empty_config_file_exits_2(tmp_path):
    cfg = tmp_path / "empty.cfg"
    cfg.write_text("")
    assert run_cli(["run", str(cfg)]) == 2


def test_invalid_Y_exits_3(tmp_path):
    out = tmp_path / "b.json"
    assert run_cli(["bounds", "--Y", "2.0", "--out", str(out)]) == 3
    assert not out.exists()


def test_unwritable_output_exits_4(tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("file, not a directory")
    target = blocker / "sub" / "out.json"
    assert run_cli(["bounds", "--Y", "1e-20", "--out", str(target)]) == 4


def test_single_point_sweep_rejected(tmp_path):
    code = run_cli(["sweep", "--of", "jellium", "--variable", "rho",
                    "--range", "geometric:1:1:1", "--out", str(tmp_path / "s.csv")])
    assert code == 2


# ---------------------------------------------------------------------------
# artifacts


def test_jellium_json_coefficient(tmp_path):
    out = tmp_path / "jel"
    assert run_cli(["jellium", "--rho", "1.0", "--out", str(out)]) == 0
    payload = json.loads((tmp_path / "jel.json").read_text())
    assert 0.400 <= payload[0]["coefficient_rs"] <= 0.404
    g_lines = (tmp_path / "jel.csv").read_text().strip().splitlines()
    assert g_lines[0] == "p4_over_rho,G"
    g_vals = [float(line.split(",")[1]) for line in g_lines[1:]]
    assert all(b < a for a, b in zip(g_vals, g_vals[1:]))


def test_bounds_json_bracket(tmp_path):
    out = tmp_path / "b.json"
    assert run_cli(["bounds", "--Y", "1e-20", "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    row = payload[0]
    assert row["valid"]
    assert 0.0 < row["lower"] <= row["upper"]


def test_scatter_artifacts(tmp_path):
    pot = tmp_path / "pot.cfg"
    pot.write_text("[potential]\nkind = hard_core\nradius = 1.0\n")
    out = tmp_path / "scat"
    code = run_cli(["scatter", "--potential", str(pot), "--r-max", "12.0",
                    "--out", str(out)])
    assert code == 0
    report = json.loads((tmp_path / "scat.json").read_text())
    assert report["a"] == pytest.approx(1.0, abs=1e-10)
    lines = (tmp_path / "scat.csv").read_text().strip().splitlines()
    assert lines[0] == "r,u"
    assert len(lines) > 100


def test_gp_artifacts(tmp_path):
    out = tmp_path / "gp"
    code = run_cli(["gp", "--dim", "3", "--trap", "harmonic", "--k", "1.0",
                    "--N", "5.0", "--a", "0.0", "--out", str(out)])
    assert code == 0
    report = json.loads((tmp_path / "gp.json").read_text())
    assert report["energy_total"] / 5.0 == pytest.approx(3.0, rel=1e-4)
    assert report["converged"]


def test_bounds_optimized_constants_and_gap(tmp_path):
    out = tmp_path / "opt.csv"
    code = run_cli(["bounds", "--Y", "1e-24:1e-16:5", "--constants", "optimize",
                    "--gap-convention", "pi-squared", "--format", "csv",
                    "--out", str(out)])
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert len(lines) == 6
    lower = [float(line.split(",")[1]) for line in lines[1:]]
    assert all(0.0 < v <= 1.0 for v in lower)
    # optimized constants push the certified ratio above the unit-constant run
    base = tmp_path / "base.csv"
    assert run_cli(["bounds", "--Y", "1e-24:1e-16:5", "--constants", "1,1,1",
                    "--format", "csv", "--out", str(base)]) == 0
    base_lower = [float(line.split(",")[1])
                  for line in base.read_text().strip().splitlines()[1:]]
    assert all(o >= b for o, b in zip(lower, base_lower))


def test_bounds_csv_header(tmp_path):
    out = tmp_path / "b.csv"
    code = run_cli(["bounds", "--Y", "1e-24:1e-16:5", "--format", "csv",
                    "--out", str(out)])
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "Y,lower,upper,epsilon,R_over_a,ell_over_a,valid"
    assert len(lines) == 6


def test_sweep_bounds_monotone(tmp_path):
    out = tmp_path / "sweep.csv"
    code = run_cli(["sweep", "--of", "bounds", "--variable", "Y",
                    "--range", "geometric:1e-24:1e-16:9", "--out", str(out)])
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert len(lines) == 10
    lower = [float(line.split(",")[1]) for line in lines[1:]]
    # lower bound climbs toward 1 as Y decreases (rows are in range order,
    # i.e. increasing Y)
    assert all(b <= a for a, b in zip(lower, lower[1:]))


def test_sweep_jellium_slope(tmp_path):
    out = tmp_path / "jsweep.csv"
    code = run_cli(["sweep", "--of", "jellium", "--variable", "rho",
                    "--range", "geometric:1e-3:1e3:7", "--jobs", "2",
                    "--out", str(out)])
    assert code == 0
    lines = out.read_text().strip().splitlines()
    rho, e = [], []
    for line in lines[1:]:
        cells = line.split(",")
        rho.append(float(cells[0]))
        e.append(float(cells[1]))
    # rows come back in range order even with --jobs 2
    assert rho == sorted(rho)
    slope = np.polyfit(np.log(rho), np.log(np.abs(e)), 1)[0]
    assert slope == pytest.approx(0.25, abs=0.005)


def test_sweep_gp_over_N(tmp_path):
    out = tmp_path / "gpsweep.csv"
    code = run_cli(["sweep", "--of", "gp", "--variable", "N",
                    "--range", "linear:2:6:3", "--a", "0.0", "--out", str(out)])
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0].startswith("N,")
    energies = [float(line.split(",")[2]) for line in lines[1:]]
    ns = [float(line.split(",")[0]) for line in lines[1:]]
    # E = 3N at a = 0
    for n, e in zip(ns, energies):
        assert e / n == pytest.approx(3.0, rel=1e-4)


def test_sweep_scatter_over_height(tmp_path):
    cfg = tmp_path / "sw.cfg"
    cfg.write_text(
        "[run]\nsubcommand = sweep\nformat = csv\n\n"
        "[sweep]\nof = scatter\nvariable = height\nrange = geometric:1:100:3\n\n"
        "[potential]\nkind = square_well\nrange = 1.0\n\n"
        "[scatter]\nr_max = 8.0\n")
    out = tmp_path / "scsweep.csv"
    assert run_cli(["run", str(cfg), "--out", str(out)]) == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "height,a,residual,refinements"
    lengths = [float(line.split(",")[1]) for line in lines[1:]]
    assert lengths == sorted(lengths)        # a grows with the height


def test_determinism_byte_identical(tmp_path):
    texts = []
    for tag in ("one", "two"):
        out = tmp_path / tag
        assert run_cli(["jellium", "--rho", "1e-2:1e2:5", "--seed", "9",
                        "--out", str(out)]) == 0
        texts.append(((tmp_path / f"{tag}.json").read_bytes(),
                      (tmp_path / f"{tag}.csv").read_bytes()))
    assert texts[0] == texts[1]


def test_run_subcommand_with_config(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(BOUNDS_CFG + f"\n")
    out = tmp_path / "fromcfg.json"
    assert run_cli(["run", str(cfg), "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload[0]["valid"]


def test_gp_box_trap_cli(tmp_path):
    out = tmp_path / "gpbox"
    code = run_cli(["gp", "--dim", "3", "--trap", "box", "--side", "10.0",
                    "--N", "100.0", "--a", "1e-4", "--out", str(out)])
    assert code == 0
    report = json.loads((tmp_path / "gpbox.json").read_text())
    homogeneous = 4.0 * math.pi * 1e-4 * 100.0**2 / 1000.0
    assert report["energy_total"] == pytest.approx(homogeneous, rel=1e-6)
    lines = (tmp_path / "gpbox.csv").read_text().strip().splitlines()
    assert lines[0] == "x,density"


def test_gp_2dlog_mode(tmp_path):
    out = tmp_path / "gp2d"
    code = run_cli(["gp", "--dim", "2", "--trap", "harmonic", "--k", "1.0",
                    "--N", "100.0", "--a", "0.01", "--mode", "2dlog",
                    "--out", str(out)])
    assert code == 0
    report = json.loads((tmp_path / "gp2d.json").read_text())
    assert report["converged"]
    assert report["coupling"] > 0


def test_gp_tf_mode(tmp_path):
    out = tmp_path / "gptf"
    code = run_cli(["gp", "--dim", "3", "--trap", "harmonic", "--k", "1.0",
                    "--N", "1.0", "--a", "100.0", "--mode", "tf",
                    "--out", str(out)])
    assert code == 0
    report = json.loads((tmp_path / "gptf.json").read_text())
    assert report["mode"] == "tf"
    # closed form: E = (5/7) mu_TF with mu_TF = (15 g N /(4 pi))^(2/5)
    mu_tf = (15.0 * 4.0 * math.pi * 100.0 / (4.0 * math.pi)) ** 0.4
    assert report["energy_total"] == pytest.approx(5.0 / 7.0 * mu_tf, rel=1e-5)


def test_version_flag(capsys):
    assert run_cli(["--version"]) == 0
    captured = capsys.readouterr().out
    assert "bosegas" in captured
    assert "hbar = m = e = 1" in captured


def test_console_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "bosegas.cli", "--version"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "bosegas" in proc.stdout
