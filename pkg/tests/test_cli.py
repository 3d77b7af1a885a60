"""End-to-end command-line behavior: exit codes, payloads, determinism."""
from __future__ import annotations

import json

import numpy as np
import pytest

from majent.cli import main
from majent.io import make_manifest, render_state_json, write_text_atomic
from majent.maxsearch import platonic_state
from majent.states import SymmetricState, make_dicke, normalize


@pytest.fixture
def w3_file(tmp_path):
    path = tmp_path / "w3.json"
    write_text_atomic(path, render_state_json(make_dicke(3, 1), make_manifest("t")))
    return str(path)


@pytest.fixture
def octa_file(tmp_path):
    path = tmp_path / "octa.json"
    write_text_atomic(
        path, render_state_json(platonic_state("octahedron"), make_manifest("t"))
    )
    return str(path)


class TestExitCodes:
    def test_success_is_zero(self, w3_file):
        assert main(["dicke", "3", "1"]) == 0

    def test_bad_document_is_two(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text('{"format": "nope"}')
        assert main(["ent", str(bad)]) == 2
        assert "error" in capsys.readouterr().err

    def test_missing_file_is_two(self, tmp_path):
        assert main(["ent", str(tmp_path / "none.json")]) == 2

    def test_invalid_argument_is_two(self, capsys):
        assert main(["dicke", "3", "7"]) == 2

    def test_failed_verify_is_one(self, capsys):
        assert main(["verify", "--suite", "dicke", "--corrupt"]) == 1
        assert "FAIL" in capsys.readouterr().out


class TestEnt:
    def test_w_state_value(self, w3_file, capsys):
        assert main(["ent", w3_file, "--starts", "120"]) == 0
        out = capsys.readouterr().out
        line = next(l for l in out.splitlines() if l.startswith("Eg"))
        assert float(line.split("=")[1]) == pytest.approx(np.log2(9.0 / 4.0), abs=1e-9)

    def test_json_payload(self, w3_file, capsys):
        assert main(["ent", w3_file, "--starts", "120", "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["eg_log2"] == pytest.approx(np.log2(2.25), abs=1e-9)
        assert doc["manifest"]["command"] == "ent"

    def test_unnormalized_input_needs_flag(self, tmp_path, capsys):
        state = SymmetricState(2, np.array([1.0, 0.0, 1.0], complex))
        path = tmp_path / "raw.json"
        write_text_atomic(path, render_state_json(state, make_manifest("t")))
        assert main(["ent", str(path)]) == 2
        assert main(["ent", str(path), "--normalize", "--starts", "120"]) == 0


class TestPointsAndState:
    def test_roundtrip_through_files(self, octa_file, tmp_path, capsys):
        pts_path = tmp_path / "pts.json"
        assert main(["points", octa_file, "--out", str(pts_path)]) == 0
        assert main(["state", str(pts_path), "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        amps = np.array([complex(re, im) for re, im in doc["amps"]])
        want = platonic_state("octahedron").amps
        fid = abs(np.vdot(amps, want))
        assert fid == pytest.approx(1.0, abs=1e-9)


class TestReports:
    def test_bounds_fields(self, capsys):
        assert main(["bounds", "7", "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["upper"] == pytest.approx(3.0, abs=1e-12)
        assert doc["general_lower"] == 3.5

    def test_mbqc_report(self, capsys):
        assert main(["mbqc", "--k", "1", "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["ruled_out"] is True
        assert doc["eta_threshold"] == pytest.approx(0.001, rel=0.05)

    def test_moments_on_state_file(self, octa_file, capsys):
        assert main(["moments", octa_file, "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert abs(np.linalg.norm(doc["spin_vector"])) < 1e-10

    def test_classify_fields(self, octa_file, capsys):
        assert main(["classify", octa_file, "--json", "--starts", "300"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["structure"]["state_class"] == "b"
        assert doc["structure"]["cpp_count"] == 8

    def test_duality(self, octa_file, tmp_path, capsys):
        cube_path = tmp_path / "cube.json"
        write_text_atomic(
            cube_path, render_state_json(platonic_state("cube"), make_manifest("t"))
        )
        assert main(["duality", octa_file, str(cube_path), "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["dual_pair"] is True


class TestSearchAndTable:
    def test_search_output_deterministic(self, tmp_path):
        out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
        args = ["search", "--n", "4", "--restarts", "4", "--starts", "150"]
        assert main(args + ["--out", str(out1)]) == 0
        assert main(args + ["--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_search_value(self, capsys):
        assert main(
            ["search", "--n", "4", "--restarts", "4", "--starts", "150", "--json"]
        ) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["eg_log2"] == pytest.approx(np.log2(3.0), abs=1e-6)
        assert doc["status"] == "ok"

    def test_table_csv(self, tmp_path):
        out = tmp_path / "table.csv"
        assert main(
            ["table", "--n-min", "2", "--n-max", "4", "--restarts", "4",
             "--skip-general", "--out", str(out)]
        ) == 0
        lines = out.read_text().splitlines()
        assert lines[0].startswith("# manifest:")
        header = lines[1].split(",")
        assert header[0] == "n" and "positive_status" in header
        assert len(lines) == 2 + 3  # manifest + header + one row per n

    def test_classical_points_listing(self, capsys):
        assert main(["classical", "--n", "4", "--restarts", "6"]) == 0
        out = capsys.readouterr().out
        assert "coulomb_energy" in out


class TestPlots:
    def test_table_plot_written(self, tmp_path):
        out = tmp_path / "table.csv"
        assert main(
            ["table", "--n-min", "2", "--n-max", "3", "--restarts", "4",
             "--skip-general", "--out", str(out), "--plot"]
        ) == 0
        assert (tmp_path / "table.png").exists()

    def test_points_plot_written(self, octa_file, tmp_path):
        out = tmp_path / "pts.json"
        assert main(["points", octa_file, "--out", str(out), "--plot"]) == 0
        assert (tmp_path / "pts.png").exists()

    def test_grid_plot_written(self, w3_file, tmp_path):
        out = tmp_path / "grid.csv"
        assert main(
            ["amplitude-grid", w3_file, "--n-theta", "25", "--n-phi", "49",
             "--out", str(out), "--plot"]
        ) == 0
        assert (tmp_path / "grid.png").exists()
        assert len(out.read_text().splitlines()) == 2 + 25 * 49


class TestVerifySuites:
    def test_bounds_suite_passes(self, capsys):
        assert main(["verify", "--suite", "bounds"]) == 0
        assert "PASS" in capsys.readouterr().out

    def test_unknown_suite_rejected(self):
        assert main(["verify", "--suite", "nonsense"]) == 2
