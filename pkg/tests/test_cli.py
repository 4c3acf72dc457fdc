"""End-to-end tests of the command-line front end."""

from __future__ import annotations

import csv
import io
import json

import numpy as np
import pytest

from chanmix.cli import EXIT_VALIDATION, main
from chanmix.constructions import cnot_gate, swap_gate
from chanmix.linalg import save_matrix


def run_cli(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    meta = {}
    body = []
    for line in text.splitlines():
        if line.startswith("# "):
            key, _, val = line[2:].partition(": ")
            meta[key] = json.loads(val)
        elif line:
            body.append(line)
    rows = list(csv.DictReader(io.StringIO("\n".join(body))))
    return meta, rows


class TestClassify:
    def test_swap_is_mixing_with_unit_gap(self, tmp_path, capsys):
        path = tmp_path / "swap.json"
        save_matrix(str(path), swap_gate(2))
        code, out, _ = run_cli(["classify", "--unitary", str(path)], capsys)
        assert code == 0
        meta, rows = parse_csv(out)
        assert meta["label"] == "mixing"
        assert abs(meta["gap"] - 1.0) < 1e-9
        assert meta["sufficient"] is True
        assert len(rows) == 4
        assert abs(float(rows[0]["abs"]) - 1.0) < 1e-12

    def test_cnot_is_non_ergodic(self, tmp_path, capsys):
        path = tmp_path / "cnot.json"
        save_matrix(str(path), cnot_gate())
        code, out, _ = run_cli(["classify", "--unitary", str(path)], capsys)
        assert code == 0
        meta, _ = parse_csv(out)
        assert meta["label"] == "non-ergodic"
        assert meta["unit_count"] == 2
        assert meta["sufficient"] is False

    def test_local_unitary_is_integrable(self, tmp_path, capsys):
        path = tmp_path / "id.json"
        save_matrix(str(path), np.eye(4, dtype=complex))
        code, out, _ = run_cli(["classify", "--unitary", str(path)], capsys)
        assert code == 0
        meta, _ = parse_csv(out)
        assert meta["label"] == "integrable"

    def test_fixed_point_reported_when_unique(self, tmp_path, capsys):
        path = tmp_path / "swap.json"
        save_matrix(str(path), swap_gate(2))
        code, out, _ = run_cli(["classify", "--unitary", str(path)], capsys)
        assert code == 0
        meta, _ = parse_csv(out)
        assert "fixed_point" in meta

    def test_malformed_json_exits_2(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        code, _, err = run_cli(["classify", "--unitary", str(path)], capsys)
        assert code == EXIT_VALIDATION
        assert "error" in err

    def test_non_unitary_matrix_exits_2(self, tmp_path, capsys):
        path = tmp_path / "m.json"
        save_matrix(str(path), np.ones((4, 4), dtype=complex))
        code, _, _ = run_cli(["classify", "--unitary", str(path)], capsys)
        assert code == EXIT_VALIDATION

    def test_json_output_format(self, tmp_path, capsys):
        path = tmp_path / "swap.json"
        save_matrix(str(path), swap_gate(2))
        code, out, _ = run_cli(
            ["classify", "--unitary", str(path), "--format", "json"], capsys)
        assert code == 0
        doc = json.loads(out)
        assert doc["metadata"]["label"] == "mixing"
        assert len(doc["rows"]) == 4


class TestWeyl:
    def test_single_point(self, capsys):
        code, out, _ = run_cli(
            ["weyl", "--x", str(np.pi / 4), "--y", str(np.pi / 4),
             "--z", str(np.pi / 4)], capsys)
        assert code == 0
        _, rows = parse_csv(out)
        assert len(rows) == 1
        assert rows[0]["label"] == "mixing"
        assert abs(float(rows[0]["gap"]) - 1.0) < 1e-9

    def test_line_local_cnot(self, capsys):
        code, out, _ = run_cli(
            ["weyl", "--line", "local-cnot", "--steps", "9"], capsys)
        assert code == 0
        _, rows = parse_csv(out)
        assert len(rows) == 9
        assert all(r["label"] in ("non-ergodic", "integrable") for r in rows)

    def test_bad_line_name_exits_2(self, capsys):
        code, _, _ = run_cli(["weyl", "--line", "local-nowhere"], capsys)
        assert code == EXIT_VALIDATION

    def test_invalid_chamber_point_exits_2(self, capsys):
        code, _, _ = run_cli(["weyl", "--x", "0.0", "--y", "0.5"], capsys)
        assert code == EXIT_VALIDATION


class TestManybody:
    def test_sr_smoke(self, capsys):
        code, out, _ = run_cli(
            ["manybody", "--model", "sr", "--L", "4", "--h", "3.0",
             "--analyses", "gap,entanglement", "--workers", "1"], capsys)
        assert code == 0
        _, rows = parse_csv(out)
        scalars = [r for r in rows if r["table"] == "scalars"]
        assert scalars
        assert 0.0 < float(scalars[0]["lambda1_abs"]) < 1.0

    def test_sff_smoke(self, capsys):
        code, out, _ = run_cli(
            ["sff", "--model", "sr", "--L", "4", "--h", "1.0",
             "--n-max", "5", "--workers", "1"], capsys)
        assert code == 0
        _, rows = parse_csv(out)
        assert len(rows) == 5
        assert int(rows[0]["n"]) == 1

    def test_iterate_smoke(self, capsys):
        code, out, _ = run_cli(
            ["iterate", "--model", "sr", "--L", "4", "--h", "1.0",
             "--n-max", "5", "--workers", "1"], capsys)
        assert code == 0
        _, rows = parse_csv(out)
        assert len(rows) >= 2
        assert float(rows[0]["delta_n"]) > 0

    def test_sweep_writes_file(self, tmp_path, capsys):
        out_path = tmp_path / "sweep.csv"
        code, _, _ = run_cli(
            ["sweep", "--model", "sr", "--L", "4", "--param", "h",
             "--from", "1", "--to", "3", "--steps", "2",
             "--analyses", "gap", "--workers", "1",
             "--out", str(out_path)], capsys)
        assert code == 0
        meta, rows = parse_csv(out_path.read_text())
        assert meta["param"] == "h"
        scalars = [r for r in rows if r["table"] == "scalars"]
        assert {float(r["param_value"]) for r in scalars} >= {1.0, 3.0}

    def test_odd_length_exits_2(self, capsys):
        code, _, _ = run_cli(
            ["manybody", "--model", "sr", "--L", "3", "--workers", "1"], capsys)
        assert code == EXIT_VALIDATION


class TestDeterminism:
    def test_repeat_runs_byte_identical(self, capsys):
        args = ["manybody", "--model", "syk", "--L", "4", "--seed", "11",
                "--analyses", "gap,entanglement", "--workers", "1"]
        code1, out1, _ = run_cli(args, capsys)
        code2, out2, _ = run_cli(args, capsys)
        assert code1 == code2 == 0
        assert out1 == out2
