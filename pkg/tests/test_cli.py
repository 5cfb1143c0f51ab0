"""End-to-end command-line behavior: generation, analysis, sweeps, dumps.

Most tests drive ``boxlab.cli.main`` in-process and capture stdout/stderr;
one smoke test exercises the installed console script in a subprocess.
"""

from __future__ import annotations

import json
import shutil
import subprocess

import pytest

import fixtures as fx
from boxlab.cli import SWEEP_COLUMNS, main
from boxlab.scenario import box_from_json_dict, box_to_json_dict
from boxlab.vertices import enumerate_local_vertices, enumerate_nc_vertices
from boxlab.witnesses import CSV_COLUMNS


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def gen_box_file(tmp_path, capsys, *argv):
    path = tmp_path / "box.json"
    code, out, err = run_cli(capsys, "gen", *argv, "-o", str(path))
    assert code == 0, err
    assert out == ""
    return path


SWEEP_GOLDEN = "\r\n".join([
    "W,W_dec,ineq_lhs,ineq_lhs_dec,contextual,cost,cost_dec,Q,Q_dec,"
    "cov_DE,cov_DE_dec,peres_strength,peres_strength_dec,sdi_contextual,"
    "min_nc_dim",
    "0,0,2,2,false,0,0,0,0,0,0,1/2,0.5,false,",
    "1/4,0.25,11/4,2.75,false,0,0,1/16,0.0625,-1/4,-0.25,5/8,0.625,true,",
    "1/2,0.5,7/2,3.5,true,1/4,0.25,1/4,0.25,-1/2,-0.5,3/4,0.75,true,",
    "3/4,0.75,17/4,4.25,true,5/8,0.625,9/16,0.5625,-3/4,-0.75,7/8,0.875,true,",
    "1,1,5,5,true,1,1,1,1,-1,-1,1,1,true,",
]) + "\r\n"


class TestGen:
    def test_family_box_to_stdout(self, capsys):
        code, out, err = run_cli(capsys, "gen", "--family", "peres")
        assert code == 0
        assert err == ""
        assert out.endswith("\n")
        data = json.loads(out)
        assert data["label"] == "peres"
        box = box_from_json_dict(data)
        assert box.contexts == fx.build_box(fx.PERES_TABLE).contexts

    def test_output_flag_writes_file(self, tmp_path, capsys):
        path = gen_box_file(tmp_path, capsys, "--family", "noise")
        data = json.loads(path.read_text())
        assert box_from_json_dict(data).contexts == fx.build_box(fx.NOISE_TABLE).contexts

    def test_family_and_state_paths_agree_bytewise(self, capsys):
        code, direct, _ = run_cli(
            capsys, "gen", "--family", "noisy-peres", "--W", "1/3",
            "--label", "same",
        )
        assert code == 0
        code, viaq, _ = run_cli(
            capsys, "gen", "--state", "werner", "--observables", "peres",
            "--W", "1/3", "--label", "same",
        )
        assert code == 0
        assert direct == viaq

    def test_quantum_generation_is_deterministic(self, capsys):
        args = ("gen", "--state", "rank3-sigma", "--observables", "peres")
        code, first, _ = run_cli(capsys, *args)
        assert code == 0
        code, second, _ = run_cli(capsys, *args)
        assert first == second
        box = box_from_json_dict(json.loads(first))
        assert box.contexts == fx.build_box(fx.RANK3_SIGMA_PERES_TABLE).contexts

    @pytest.mark.parametrize(
        "argv",
        [
            ("gen",),
            ("gen", "--family", "peres", "--state", "werner"),
            ("gen", "--family", "peres", "--observables", "peres"),
            ("gen", "--family", "peres", "--W", "1/2"),
            ("gen", "--family", "noisy-peres"),
            ("gen", "--family", "noisy-peres", "--W", "0.5"),
            ("gen", "--family", "noisy-peres", "--W", "3/2"),
            ("gen", "--state", "max-entangled"),
            ("gen", "--state", "werner", "--observables", "peres"),
            ("gen", "--state", "cc", "--observables", "peres", "--W", "1/3"),
            ("gen", "--family", "bogus"),
        ],
        ids=[
            "no-source", "two-sources", "observables-without-state",
            "family-with-parameter", "missing-parameter", "decimal-parameter",
            "parameter-out-of-range", "state-without-observables",
            "werner-without-parameter", "state-with-stray-parameter",
            "unknown-family",
        ],
    )
    def test_bad_invocations_exit_2(self, capsys, argv):
        code, _, _ = run_cli(capsys, *argv)
        assert code == 2

    def test_rationalization_failure_exits_3(self, capsys):
        code, out, err = run_cli(
            capsys, "gen", "--state", "werner", "--observables", "peres",
            "--W", "1/3", "--max-denominator", "5",
        )
        assert code == 3
        assert out == ""
        assert "within" in err

    def test_help_exits_0(self, capsys):
        code, out, _ = run_cli(capsys, "--help")
        assert code == 0
        assert "gen" in out and "analyze" in out


class TestAnalyze:
    def test_json_report_round_trips_box(self, tmp_path, capsys):
        path = gen_box_file(
            tmp_path, capsys, "--family", "noisy-peres", "--W", "1/3"
        )
        code, out, err = run_cli(capsys, "analyze", str(path))
        assert code == 0, err
        payload = json.loads(out)
        assert set(payload) == {"box", "report"}
        echoed = box_from_json_dict(payload["box"])
        original = box_from_json_dict(json.loads(path.read_text()))
        assert echoed.contexts == original.contexts
        report = payload["report"]
        assert report["inequality_lhs"] == "3"
        assert report["contextual"] is False
        assert report["peres_strength"] == "2/3"
        assert report["noncontextual_model"]["min_dimension"]["dimension"] == 8
        assert report["bell_marginal"]["min_dimension"]["dimension"] == 6
        assert report["witnesses"]["q_witness"] == "1/9"

    def test_analysis_is_deterministic(self, tmp_path, capsys):
        path = gen_box_file(tmp_path, capsys, "--family", "noise")
        code, first, _ = run_cli(capsys, "analyze", str(path))
        assert code == 0
        code, second, _ = run_cli(capsys, "analyze", str(path))
        assert first == second

    def test_csv_format(self, tmp_path, capsys):
        path = gen_box_file(
            tmp_path, capsys, "--family", "noisy-peres", "--W", "1/3"
        )
        code, out, _ = run_cli(capsys, "analyze", str(path), "--format", "csv")
        assert code == 0
        lines = out.split("\r\n")
        assert lines[0] == ",".join(CSV_COLUMNS)
        assert lines[1] == (
            "noisy-peres W=1/3,true,3,3,false,1,1,0,0,1/9,0.111111111111,"
            "-1/3,-0.333333333333,1,1,true,2/3,0.666666666667,8,exact,"
            "true,true,6,exact,true"
        )
        assert lines[2:] == [""]

    def test_stdin_input(self, tmp_path, capsys, monkeypatch):
        import io

        text = json.dumps(box_to_json_dict(fx.build_box(fx.CC_PERES_TABLE)))
        monkeypatch.setattr("sys.stdin", io.StringIO(text))
        code, out, _ = run_cli(capsys, "analyze", "-", "--skip-dims")
        assert code == 0
        assert json.loads(out)["report"]["inequality_lhs"] == "3"

    def test_skip_dims_nulls_search_fields(self, tmp_path, capsys):
        path = gen_box_file(tmp_path, capsys, "--family", "peres")
        code, out, _ = run_cli(capsys, "analyze", str(path), "--skip-dims")
        assert code == 0
        report = json.loads(out)["report"]
        assert report["noncontextual_model"]["min_dimension"] is None
        assert report["bell_marginal"]["min_dimension"] is None
        assert report["bell_marginal"]["superlocal"] is True

    def test_budget_flag_limits_search(self, tmp_path, capsys):
        path = gen_box_file(
            tmp_path, capsys, "--family", "noisy-peres", "--W", "1/3"
        )
        code, out, _ = run_cli(capsys, "analyze", str(path), "--budget", "10")
        assert code == 0
        report = json.loads(out)["report"]
        model = report["noncontextual_model"]
        assert model["min_dimension"]["status"] == "lower-bound-only"
        assert model["supernoncontextual"] is None
        row_code, row_out, _ = run_cli(
            capsys, "analyze", str(path), "--format", "csv", "--budget", "10"
        )
        cells = dict(zip(CSV_COLUMNS, row_out.split("\r\n")[1].split(",")))
        assert cells["min_nc_dim_status"] == "lower-bound-only"
        assert cells["supernoncontextual"] == ""

    def test_budget_env_var(self, tmp_path, capsys, monkeypatch):
        path = gen_box_file(
            tmp_path, capsys, "--family", "noisy-peres", "--W", "1/3"
        )
        monkeypatch.setenv("BOXLAB_BUDGET", "10")
        code, out, _ = run_cli(capsys, "analyze", str(path))
        assert code == 0
        report = json.loads(out)["report"]
        assert report["noncontextual_model"]["min_dimension"]["status"] == (
            "lower-bound-only"
        )

    def test_invalid_json_exits_2(self, tmp_path, capsys):
        path = tmp_path / "broken.json"
        path.write_text("this is not json")
        code, _, err = run_cli(capsys, "analyze", str(path))
        assert code == 2
        assert "invalid JSON" in err

    def test_missing_file_exits_2(self, tmp_path, capsys):
        code, _, err = run_cli(capsys, "analyze", str(tmp_path / "nope.json"))
        assert code == 2
        assert "cannot read box file" in err

    def test_disturbing_box_exits_4(self, tmp_path, capsys):
        data = box_to_json_dict(fx.build_box(fx.NOISY_THIRD_TABLE))
        # Skew the D marginal of the A0,B1,D context against the D,E context
        # while preserving the A0,B1 marginal.
        data["contexts"]["C1"] = ["1/2", "0", "0", "1/2", "0", "0", "0", "0"]
        path = tmp_path / "skewed.json"
        path.write_text(json.dumps(data))
        code, _, err = run_cli(capsys, "analyze", str(path))
        assert code == 4
        assert "D" in err


class TestSweep:
    def test_noisy_family_golden_csv(self, capsys):
        code, out, err = run_cli(
            capsys, "sweep", "--family", "noisy-peres", "--from", "0",
            "--to", "1", "--steps", "5", "--budget", "200",
        )
        assert code == 0, err
        assert out == SWEEP_GOLDEN

    def test_family_and_state_sweeps_agree(self, capsys):
        args = ("--from", "0", "--to", "1", "--steps", "3", "--budget", "50")
        code, family_out, _ = run_cli(
            capsys, "sweep", "--family", "noisy-peres", *args
        )
        assert code == 0
        code, state_out, _ = run_cli(
            capsys, "sweep", "--state", "werner", "--observables", "peres",
            *args,
        )
        assert code == 0
        assert family_out == state_out

    def test_json_lines_format(self, capsys):
        code, out, _ = run_cli(
            capsys, "sweep", "--family", "noisy-peres", "--from", "0",
            "--to", "1", "--steps", "3", "--format", "json-lines",
            "--budget", "50",
        )
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 3
        rows = [json.loads(line) for line in lines]
        assert [row["W"] for row in rows] == ["0", "1/2", "1"]
        assert all(set(row) == set(SWEEP_COLUMNS) for row in rows)
        assert rows[2]["cost"] == "1"
        assert rows[2]["peres_strength"] == "1"
        assert rows[0]["contextual"] == "false"

    @pytest.mark.parametrize(
        "argv",
        [
            ("sweep", "--family", "noisy-peres", "--from", "0", "--to", "1",
             "--steps", "1"),
            ("sweep", "--family", "noisy-peres", "--from", "1/2", "--to",
             "1/4", "--steps", "3"),
            ("sweep", "--family", "noisy-peres", "--from", "-1/4", "--to",
             "1/2", "--steps", "3"),
            ("sweep", "--family", "noisy-peres", "--from", "1/2", "--to",
             "3/2", "--steps", "3"),
            ("sweep", "--family", "peres", "--from", "0", "--to", "1",
             "--steps", "3"),
            ("sweep", "--state", "rank2", "--observables", "peres", "--from",
             "0", "--to", "1", "--steps", "3"),
            ("sweep", "--state", "werner", "--from", "0", "--to", "1",
             "--steps", "3"),
            ("sweep", "--family", "noisy-peres", "--state", "werner",
             "--from", "0", "--to", "1", "--steps", "3"),
            ("sweep", "--from", "0", "--to", "1", "--steps", "3"),
            ("sweep", "--family", "noisy-peres", "--from", "0", "--to", "1"),
        ],
        ids=[
            "too-few-steps", "reversed-range", "below-zero", "above-one",
            "non-parameterized-family", "non-parameterized-state",
            "state-without-observables", "two-sources", "no-source",
            "missing-steps",
        ],
    )
    def test_bad_invocations_exit_2(self, capsys, argv):
        code, _, _ = run_cli(capsys, *argv)
        assert code == 2


class TestVertices:
    def test_full_vertex_dump(self, capsys):
        code, out, _ = run_cli(capsys, "vertices")
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 64
        expected_labels = [vid.label for vid, _ in enumerate_nc_vertices()]
        parsed = [json.loads(line) for line in lines]
        assert [p["label"] for p in parsed] == expected_labels
        # Every line revalidates and matches the enumerated vertex.
        for p, (_, vertex) in zip(parsed, enumerate_nc_vertices()):
            assert box_from_json_dict(p).contexts == vertex.contexts

    def test_dump_matches_transcribed_tables(self, capsys):
        code, out, _ = run_cli(capsys, "vertices")
        by_label = {json.loads(line)["label"]: json.loads(line)
                    for line in out.splitlines()}
        for label, table in fx.DET_TABLES.items():
            assert (box_from_json_dict(by_label[label]).contexts
                    == fx.build_box(table).contexts)

    def test_bell_marginal_dump(self, capsys):
        code, out, _ = run_cli(capsys, "vertices", "--bell-marginal")
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 16
        expected_labels = [vid.label for vid, _ in enumerate_local_vertices()]
        parsed = [json.loads(line) for line in lines]
        assert [p["label"] for p in parsed] == expected_labels
        row = next(p for p in parsed if p["label"] == "1010")
        table = fx.LOCAL_DET_TABLES["1010"]
        assert row["dists"]["A0B0"] == table[0]
        assert row["dists"]["A0B1"] == table[1]
        assert row["dists"]["A1B0"] == table[2]
        assert row["dists"]["A1B1"] == table[3]

    def test_dump_is_deterministic(self, capsys):
        code, first, _ = run_cli(capsys, "vertices")
        code, second, _ = run_cli(capsys, "vertices")
        assert first == second

    def test_output_file(self, tmp_path, capsys):
        path = tmp_path / "vertices.jsonl"
        code, out, _ = run_cli(capsys, "vertices", "-o", str(path))
        assert code == 0
        assert out == ""
        assert len(path.read_text().splitlines()) == 64


class TestConsoleScript:
    def test_installed_entry_point(self):
        exe = shutil.which("boxlab")
        assert exe is not None
        result = subprocess.run(
            [exe, "gen", "--family", "peres"],
            capture_output=True, text=True, timeout=120,
        )
        assert result.returncode == 0
        data = json.loads(result.stdout)
        assert data["label"] == "peres"

    def test_entry_point_error_code(self):
        exe = shutil.which("boxlab")
        result = subprocess.run(
            [exe, "gen", "--family", "noisy-peres", "--W", "0.5"],
            capture_output=True, text=True, timeout=120,
        )
        assert result.returncode == 2
