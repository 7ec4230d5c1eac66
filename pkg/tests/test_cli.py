import csv
import json
import os
import subprocess
import sys

import pytest
from conftest import fixture_path

from adaptlab.cli import main


def run_cli(args):
    """Invoke the CLI in-process, capturing the exit code."""
    try:
        return main(args)
    except SystemExit as exc:
        return exc.code


def write_config(tmp_path, **overrides):
    cfg = {
        "fcidump": fixture_path("h2_0.74.fcidump"),
        "criterion": "parameter",
        "start": "hot",
        "epsilon": 1e-4,
        "grad_norm_tol": 1e-3,
        "k_max": 120,
        "pool": "hi_uccsd",
        "eta": 1e-10,
        "optimizer": {"gtol": 1e-6, "max_evals": 10000},
    }
    cfg.update(overrides)
    path = tmp_path / "config.json"
    path.write_text(json.dumps(cfg))
    return str(path)


def strip_timestamp(path):
    doc = json.loads(open(path, encoding="utf-8").read())
    doc.pop("generated_at")
    return json.dumps(doc, sort_keys=True)


class TestRun:
    def test_h2_trace(self, tmp_path):
        cfg = write_config(tmp_path)
        assert run_cli(["run", cfg, "--out", str(tmp_path)]) == 0
        doc = json.load(open(tmp_path / "h2_0.74__parameter.trace.json"))
        assert doc["schema"] == "adaptlab-trace-v1"
        assert len(doc["records"]) == 1
        assert abs(doc["records"][0]["error_vs_fci"]) <= 1e-8
        assert doc["termination_reason"] == "EPSILON"
        # CSV row count equals iteration count, cost column monotone
        rows = list(csv.DictReader(open(tmp_path / "h2_0.74__parameter.csv")))
        assert len(rows) == len(doc["records"])
        costs = [int(r["cumulative_cost"]) for r in rows]
        assert costs == sorted(costs)

    def test_determinism_byte_identical(self, tmp_path):
        cfg = write_config(tmp_path)
        out_a, out_b = tmp_path / "a", tmp_path / "b"
        assert run_cli(["run", cfg, "--out", str(out_a)]) == 0
        assert run_cli(["run", cfg, "--out", str(out_b)]) == 0
        ta = strip_timestamp(out_a / "h2_0.74__parameter.trace.json")
        tb = strip_timestamp(out_b / "h2_0.74__parameter.trace.json")
        assert ta == tb

    def test_both_criteria(self, tmp_path):
        cfg = write_config(tmp_path)
        assert run_cli(["run", cfg, "--out", str(tmp_path), "--criterion", "both"]) == 0
        a = json.load(open(tmp_path / "h2_0.74__parameter.trace.json"))
        b = json.load(open(tmp_path / "h2_0.74__gradient.trace.json"))
        assert a["conventions"] == b["conventions"]

    def test_json_roundtrip(self, tmp_path):
        cfg = write_config(tmp_path)
        run_cli(["run", cfg, "--out", str(tmp_path)])
        path = tmp_path / "h2_0.74__parameter.trace.json"
        doc = json.load(open(path))
        assert json.loads(json.dumps(doc)) == doc

    def test_invalid_config_exit_2(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        assert run_cli(["run", str(path)]) == 2

    def test_bad_criterion_exit_2(self, tmp_path):
        cfg = write_config(tmp_path, criterion="magic")
        assert run_cli(["run", cfg, "--out", str(tmp_path)]) == 2

    def test_missing_fixture_exit_3(self, tmp_path):
        cfg = write_config(tmp_path, fcidump=str(tmp_path / "nope.fcidump"))
        assert run_cli(["run", cfg, "--out", str(tmp_path)]) == 3

    def test_malformed_fixture_exit_3(self, tmp_path):
        bad = tmp_path / "bad.fcidump"
        bad.write_text("this is not a namelist\n")
        cfg = write_config(tmp_path, fcidump=str(bad))
        assert run_cli(["run", cfg, "--out", str(tmp_path)]) == 3


class TestFci:
    def test_json_output(self, capsys):
        assert run_cli(["fci", fixture_path("h2_0.74.fcidump"), "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["route_difference"] <= 1e-10
        assert doc["e_fci_qubit"] == pytest.approx(-1.137, abs=1e-3)

    def test_toy_sector_energy(self, tmp_path, capsys):
        toy = tmp_path / "toy.fcidump"
        toy.write_text(
            "&FCI NORB=1,NELEC=2,MS2=0,\n ORBSYM=1,\n ISYM=1,\n&END\n"
            " 0.5 1 1 1 1\n-1.0 1 1 0 0\n 0.0 0 0 0 0\n"
        )
        assert run_cli(["fci", str(toy), "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["e_fci_determinant"] == pytest.approx(-1.5, abs=1e-10)

    def test_malformed_exit_3(self, tmp_path):
        bad = tmp_path / "bad.fcidump"
        bad.write_text("garbage\n")
        assert run_cli(["fci", str(bad)]) == 3


class TestCompare:
    def _fake_trace(self, path, ks_costs_errors):
        doc = {
            "records": [
                {"k": k, "cumulative_cost": c, "error_vs_fci": e}
                for k, c, e in ks_costs_errors
            ]
        }
        path.write_text(json.dumps(doc))

    def test_sixty_percent_reduction(self, tmp_path, capsys):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        self._fake_trace(a, [(k, 100 * k, 1.0 if k < 5 else 1e-5) for k in range(1, 7)])
        self._fake_trace(b, [(k, 90 * k, 1.0 if k < 2 else 1e-5) for k in range(1, 7)])
        assert run_cli(["compare", str(a), str(b), "--target-error", "1e-4"]) == 0
        out = capsys.readouterr().out
        assert "60.00%" in out

    def test_identical_traces(self, tmp_path, capsys):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        self._fake_trace(a, [(1, 10, 1e-9)])
        self._fake_trace(b, [(1, 10, 1e-9)])
        run_cli(["compare", str(a), str(b), "--target-error", "1e-4"])
        out = capsys.readouterr().out
        assert "0.00%" in out

    def test_not_reached(self, tmp_path, capsys):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        self._fake_trace(a, [(1, 10, 1e-9)])
        self._fake_trace(b, [(1, 10, 1.0)])
        assert run_cli(["compare", str(a), str(b), "--target-error", "1e-4"]) == 0
        assert "not reached" in capsys.readouterr().out


class TestSweep:
    def test_three_geometry_sweep(self, tmp_path):
        cfg = tmp_path / "sweep.json"
        cfg.write_text(
            json.dumps(
                {
                    "fcidumps": [
                        fixture_path("h2_0.74.fcidump"),
                        fixture_path("h4_1.50.fcidump"),
                    ],
                    "criterion": "parameter",
                    "k_max": 2,
                }
            )
        )
        assert run_cli(["sweep", str(cfg), "--out", str(tmp_path)]) == 0
        assert (tmp_path / "h2_0.74__parameter.trace.json").exists()
        assert (tmp_path / "h4_1.50__parameter.trace.json").exists()

    def test_empty_grid_exit_2(self, tmp_path):
        cfg = tmp_path / "sweep.json"
        cfg.write_text(json.dumps({"fcidumps": []}))
        assert run_cli(["sweep", str(cfg)]) == 2

    def test_partial_failure_nonzero_exit(self, tmp_path):
        cfg = tmp_path / "sweep.json"
        cfg.write_text(
            json.dumps(
                {
                    "fcidumps": [
                        fixture_path("h2_0.74.fcidump"),
                        str(tmp_path / "missing.fcidump"),
                    ],
                    "k_max": 1,
                }
            )
        )
        assert run_cli(["sweep", str(cfg), "--out", str(tmp_path)]) == 3
        assert (tmp_path / "h2_0.74__parameter.trace.json").exists()


class TestEntryPoint:
    def test_module_invocation(self):
        out = subprocess.run(
            [sys.executable, "-m", "adaptlab.cli", "fci", fixture_path("h2_0.74.fcidump")],
            capture_output=True, text=True,
        )
        assert out.returncode == 0
        assert "E_HF" in out.stdout
