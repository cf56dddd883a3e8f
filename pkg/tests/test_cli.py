import csv
import importlib
import json
import math
import os
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest
from typer.testing import CliRunner

import optics.device
from cli import app
from handlers.error_handler import ConvergenceError
from optics import (
    SweepPoint,
    modulation_nodes,
    modulation_response,
    reference_device_path,
    standing_field,
)
from resonator import SawResonator, reflection_s11
from utils.basetools import PROFILE_HEADER

vpi_tool_module = importlib.import_module("utils.basetools.vpi_tool")

runner = CliRunner()
SRC_DIR = Path(__file__).resolve().parents[1] / "src"


def invoke(*args):
    return runner.invoke(app, [str(arg) for arg in args])


def _write_spectrum(path, frequencies, magnitudes):
    with path.open("w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["freq_hz", "mag"])
        for freq, mag in zip(frequencies, magnitudes):
            writer.writerow([repr(float(freq)), repr(float(mag))])
    return path


@pytest.fixture
def reference_spectrum(tmp_path):
    r = SawResonator.from_hz(87.6e6, 23.9e3, 2.5e3, 40e-6, 380e-6, 950e-6, 4700.0)
    frequencies = np.linspace(87.6e6 - 264e3, 87.6e6 + 264e3, 401)
    magnitudes = np.abs(reflection_s11(2.0 * np.pi * frequencies, r))
    return frequencies, magnitudes


# solve-saw


def test_solve_saw_reports_velocity():
    result = invoke("solve-saw", "--no-manifest")
    assert result.exit_code == 0, result.output
    document = json.loads(result.stdout)
    assert document["velocity_m_s"] == pytest.approx(3488.0, rel=0.01)
    assert document["resonance_hz"] == pytest.approx(87.2e6, rel=0.01)
    assert document["boundary"] == "free"
    assert "manifest" not in document


def test_solve_saw_output_is_reproducible():
    first = invoke("solve-saw", "--boundary", "metalized", "--no-manifest")
    second = invoke("solve-saw", "--boundary", "metalized", "--no-manifest")
    assert first.exit_code == second.exit_code == 0
    assert first.stdout == second.stdout


def test_manifest_records_the_run():
    result = invoke("solve-saw", "--wavelength-m", "20e-6")
    assert result.exit_code == 0, result.output
    manifest = json.loads(result.stdout)["manifest"]
    assert manifest["command"] == "solve-saw"
    assert manifest["overrides"]["wavelength_m"] == pytest.approx(20e-6)
    assert manifest["tool_version"]
    assert manifest["timestamp"]


def test_solve_saw_writes_profile(tmp_path):
    out = tmp_path / "profile.csv"
    result = invoke(
        "solve-saw", "--profile-out", out, "--profile-points", 31, "--no-manifest"
    )
    assert result.exit_code == 0, result.output
    rows = list(csv.reader(out.open(encoding="utf-8")))
    assert rows[0] == PROFILE_HEADER
    assert len(rows) == 32
    assert float(rows[1][0]) == 0.0
    assert float(rows[-1][0]) == pytest.approx(-120e-6)


def test_missing_material_file_exits_2(tmp_path):
    missing = tmp_path / "nowhere.json"
    result = invoke("solve-saw", "--material", missing)
    assert result.exit_code == 2
    assert "error: InputError" in result.output
    assert "nowhere.json" in result.output


def test_bracket_without_root_exits_3():
    result = invoke("solve-saw", "--bracket", 5000, 6000)
    assert result.exit_code == 3
    assert "error: ConvergenceError" in result.output


# fit-s11


def test_fit_s11_recovers_quality_factor(tmp_path, reference_spectrum):
    path = _write_spectrum(tmp_path / "s11.csv", *reference_spectrum)
    result = invoke("fit-s11", "--in", path, "--no-manifest")
    assert result.exit_code == 0, result.output
    document = json.loads(result.stdout)
    assert document["converged"] is True
    assert document["q"] == pytest.approx(3318.0, rel=0.01)
    assert document["gamma_ex_hz"] == pytest.approx(2.5e3, rel=1e-6)


def test_short_spectrum_exits_2(tmp_path, reference_spectrum):
    frequencies, magnitudes = reference_spectrum
    path = _write_spectrum(tmp_path / "short.csv", frequencies[:7], magnitudes[:7])
    result = invoke("fit-s11", "--in", path)
    assert result.exit_code == 2
    assert "at least 8" in result.output


def test_shuffled_spectrum_exits_2(tmp_path, reference_spectrum):
    frequencies, magnitudes = reference_spectrum
    order = np.random.default_rng(1).permutation(len(frequencies))
    path = _write_spectrum(tmp_path / "shuffled.csv", frequencies[order], magnitudes)
    result = invoke("fit-s11", "--in", path)
    assert result.exit_code == 2
    assert "strictly increasing" in result.output


def test_bad_spectrum_header_exits_2(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("frequency,value\n1,2\n", encoding="utf-8")
    result = invoke("fit-s11", "--in", path)
    assert result.exit_code == 2
    assert "header" in result.output


def test_non_numeric_cell_exits_2(tmp_path, reference_spectrum):
    frequencies, magnitudes = reference_spectrum
    path = _write_spectrum(tmp_path / "s11.csv", frequencies[:10], magnitudes[:10])
    path.write_text(path.read_text("utf-8") + "87.7e6,abc\n", encoding="utf-8")
    result = invoke("fit-s11", "--in", path)
    assert result.exit_code == 2
    assert "not a number" in result.output


# vpi


def test_vpi_of_reference_device():
    result = invoke("vpi", "--device", reference_device_path(), "--no-manifest")
    assert result.exit_code == 0, result.output
    document = json.loads(result.stdout)
    assert 12.0 <= document["v_pi_V"] <= 24.0
    assert document["length_vpi_V_cm"] == pytest.approx(
        document["v_pi_V"] * 0.095, rel=1e-8
    )
    assert document["quadrature_converged"] is True


def test_vpi_at_node_exits_4(reference_device):
    field = standing_field(reference_device.solution, 1e-9)
    response = modulation_response(
        reference_device.mode, field, reference_device.photoelastic
    )
    node = modulation_nodes(response, field.k_saw)[0]
    result = invoke(
        "vpi", "--device", reference_device_path(), "--z-offset-m", repr(float(node))
    )
    assert result.exit_code == 4
    assert "error: DegeneratePhysicsError: no modulation sensitivity" in result.output


def test_vpi_sweep_to_stdout():
    result = invoke(
        "vpi",
        "--device",
        reference_device_path(),
        "--sweep",
        "z_offset_m",
        -1e-6,
        1e-6,
        3,
    )
    assert result.exit_code == 0, result.output
    lines = result.stdout.splitlines()
    assert lines[0] == "z_offset_m,v_pi_V"
    values = [float(line.split(",")[0]) for line in lines[1:]]
    assert values == pytest.approx([-1e-6, 0.0, 1e-6])


def test_vpi_sweep_to_file(tmp_path):
    out = tmp_path / "sweep.csv"
    result = invoke(
        "vpi",
        "--device",
        reference_device_path(),
        "--sweep",
        "width_W_m",
        950e-6,
        3800e-6,
        2,
        "--out",
        out,
        "--no-manifest",
    )
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)["points"] == 2
    rows = list(csv.reader(out.open(encoding="utf-8")))
    assert rows[0] == ["width_W_m", "v_pi_V"]
    assert float(rows[2][1]) == pytest.approx(float(rows[1][1]) / 2.0, rel=1e-8)


def test_interrupted_sweep_keeps_finished_rows(tmp_path, reference_device, monkeypatch):
    def sweep_point(device, parameter, value):
        if value >= 2.0:
            raise ConvergenceError(f"point at {value} failed")
        return SweepPoint(value=value, v_pi_V=16.0 + value)

    monkeypatch.setattr(vpi_tool_module, "load_modulator", lambda *_: reference_device)
    monkeypatch.setattr(optics.device, "_sweep_point", sweep_point)
    out = tmp_path / "sweep.csv"
    result = invoke(
        "vpi",
        "--device",
        reference_device_path(),
        "--sweep",
        "z_offset_m",
        0,
        3,
        4,
        "--out",
        out,
    )
    assert result.exit_code == 3
    rows = list(csv.reader(out.open(encoding="utf-8")))
    assert rows[0] == ["z_offset_m", "v_pi_V"]
    assert [float(row[0]) for row in rows[1:]] == [0.0, 1.0]


def test_sweep_to_reported_antinode_lowers_vpi():
    device = reference_device_path()
    single = json.loads(invoke("vpi", "--device", device, "--no-manifest").stdout)
    antinode = single["antinode_offset_m"]
    result = invoke("vpi", "--device", device, "--sweep", "z_offset_m", 0, antinode, 2)
    assert result.exit_code == 0, result.output
    rows = [line.split(",") for line in result.stdout.splitlines()[1:]]
    at_zero, at_antinode = [float(row[1]) for row in rows]
    assert at_antinode <= at_zero


def test_vpi_missing_device_exits_2(tmp_path):
    result = invoke("vpi", "--device", tmp_path / "device.json")
    assert result.exit_code == 2
    assert "device file not found" in result.output


def test_vpi_unknown_sweep_parameter_exits_2():
    result = invoke(
        "vpi", "--device", reference_device_path(), "--sweep", "length_L_m", 0, 1, 2
    )
    assert result.exit_code == 2


# cavity and sideband


def test_cavity_reduction():
    result = invoke(
        "cavity", "--finesse", 15, "--vpi", 2.58, "--critical", "--no-manifest"
    )
    assert result.exit_code == 0, result.output
    document = json.loads(result.stdout)
    assert document["vpi_reduced_V"] == pytest.approx(0.270, rel=0.01)
    assert document["enhancement_db"] == pytest.approx(
        10.0 * math.log10((30.0 / math.pi) ** 2)
    )
    assert document["q"] is None


def test_cavity_finesse_and_q():
    result = invoke(
        "cavity",
        "--fsr-hz",
        12.1e9,
        "--kappa-hz",
        284e6,
        "--critical",
        "--wavelength-m",
        1064e-9,
        "--no-manifest",
    )
    assert result.exit_code == 0, result.output
    document = json.loads(result.stdout)
    assert document["finesse"] == pytest.approx(42.6, rel=1e-3)
    assert document["q"] == pytest.approx(1.0e6, rel=0.03)


def test_unit_enhancement_leaves_vpi_unchanged():
    result = invoke("cavity", "--finesse", 1.5708, "--vpi", 2.58, "--no-manifest")
    assert result.exit_code == 0, result.output
    document = json.loads(result.stdout)
    assert document["vpi_reduced_V"] == pytest.approx(2.58, rel=1e-5)
    assert document["enhancement_db"] == pytest.approx(0.0, abs=1e-4)


def test_external_coupling_needs_linewidth_exits_2():
    result = invoke("cavity", "--finesse", 15, "--kappa-ex-hz", 1e6)
    assert result.exit_code == 2
    assert "--kappa-ex-hz" in result.output


def test_cavity_needs_finesse_exits_2():
    result = invoke("cavity", "--critical")
    assert result.exit_code == 2
    assert "error: InputError" in result.output


def test_sideband_vpi():
    result = invoke("sideband", "--delta-db", 11.8, "--vpi-ref-v", 4.8, "--no-manifest")
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)["v_pi_V"] == pytest.approx(18.7, abs=0.05)


def test_sideband_exact_needs_drive_exits_2():
    result = invoke("sideband", "--delta-db", 11.8, "--vpi-ref-v", 4.8, "--beta-exact")
    assert result.exit_code == 2
    assert "--drive-v" in result.output


def test_sideband_exact_with_drive():
    result = invoke(
        "sideband",
        "--delta-db",
        11.8,
        "--vpi-ref-v",
        4.8,
        "--beta-exact",
        "--drive-v",
        0.01,
        "--no-manifest",
    )
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)["v_pi_V"] == pytest.approx(18.67, rel=1e-3)


def test_error_is_a_single_line_on_stderr(tmp_path):
    env = {k: v for k, v in os.environ.items() if not k.startswith("SAWMOD_")}
    env["ENVIRONMENT_FILE"] = str(tmp_path / "absent.env")
    env["PYTHONPATH"] = os.pathsep.join(
        [str(SRC_DIR), env.get("PYTHONPATH", "")]
    ).rstrip(os.pathsep)
    completed = subprocess.run(
        [sys.executable, "-m", "cli.main", "vpi", "--device", tmp_path / "dev.json"],
        capture_output=True,
        text=True,
        env=env,
        cwd=tmp_path,
        timeout=120,
    )
    assert completed.returncode == 2
    assert completed.stdout == ""
    lines = completed.stderr.splitlines()
    assert len(lines) == 1, lines
    assert lines[0].startswith("error: InputError: device file not found")
