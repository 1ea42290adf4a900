"""The command-line interface: outputs, exit codes, caching, rendering."""

import contextlib
import io
import json
import os
from pathlib import Path

import pytest

from arckit.cli import main

DATA = Path(__file__).parent / "data"

TRACE_X = "cups=(0,3);(1,2) rays=4 | vv^^v | cups=(1,2);(3,4) rays=0"
TRACE_Y = "cups=(1,2);(3,4) rays=0 | vv^^v | cups=(0,3);(1,2) rays=4"


def run(args):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(args)
    return code, out.getvalue(), err.getvalue()


class TestBasics:
    def test_klpoly_worked_example(self):
        code, out, _ = run(
            ["klpoly", "-m", "4", "-n", "2", "--lambda", "vvvv^^", "--mu", "v^vv^v"]
        )
        assert code == 0
        assert out.strip() == "q^4 + q^2"

    def test_klpoly_both_methods_agree(self):
        code, out, _ = run(
            [
                "klpoly", "-m", "4", "-n", "2",
                "--lambda", "vvvv^^", "--mu", "v^vv^v",
                "--method", "both", "--format", "json",
            ]
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["polynomial"] == "q^4 + q^2"

    def test_kl_index_shorthand(self):
        # --kl k,l is translated to the weight string
        code_a, out_a, _ = run(
            ["klpoly", "-m", "2", "-n", "2", "--kl", "3,1", "--mu-kl", "2,1"]
        )
        code_b, out_b, _ = run(
            ["klpoly", "-m", "2", "-n", "2",
             "--lambda", "v^v^", "--mu", "v^^v"]
        )
        assert code_a == code_b == 0
        # same block, translated weights: both runs produce a polynomial
        assert out_a.strip() and out_b.strip()

    def test_basis_count(self):
        code, out, _ = run(["basis", "-m", "2", "-n", "1", "--format", "json"])
        assert code == 0
        assert json.loads(out)["count"] == 9

    def test_decomp_table(self):
        code, out, _ = run(["decomp", "-m", "2", "-n", "1"])
        assert code == 0
        assert "^vv" in out and "q" in out

    def test_multiply(self):
        code, out, _ = run(
            ["multiply", "-m", "3", "-n", "2", "--format", "json", TRACE_X, TRACE_Y]
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["zero"] is False
        assert doc["terms"] == [
            {
                "coeff": "1",
                "diagram": "cups=(0,3);(1,2) rays=4 | ^v^vv | cups=(0,3);(1,2) rays=4",
            }
        ]


class TestExitCodes:
    def test_unknown_subcommand_is_usage_error(self):
        assert run(["nosuch"])[0] == 2

    def test_malformed_weight_is_usage_error(self):
        code, _, err = run(
            ["klpoly", "-m", "4", "-n", "2", "--lambda", "xxxx", "--mu", "v^vv^v"]
        )
        assert code == 2

    def test_block_mismatch_is_domain_error(self):
        code, _, err = run(
            ["klpoly", "-m", "4", "-n", "2", "--lambda", "vv^^", "--mu", "v^vv^v"]
        )
        assert code == 1

    def test_kl_out_of_range_is_domain_error(self):
        code, _, _ = run(
            ["klpoly", "-m", "2", "-n", "2", "--kl", "2,2", "--mu-kl", "2,1"]
        )
        assert code == 1

    def test_malformed_diagram_is_usage_error(self):
        code, _, _ = run(["multiply", "-m", "3", "-n", "2", "not a diagram", TRACE_Y])
        assert code == 2


class TestReports:
    def test_extdim_oracle_total(self):
        code, out, _ = run(
            ["extdim", "-m", "3", "-n", "1", "--all", "--oracle", "shelton",
             "--format", "json"]
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["oracle_match"] is True
        assert doc["oracle_total"] == 16
        assert sum(row["total"] for row in doc["rows"]) == 16

    def test_ainfty_report(self):
        code, out, _ = run(
            ["ainfty", "-m", "2", "-n", "2", "--mode", "canonical",
             "--max-arity", "5", "--format", "json"]
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["q_lambda3_zero"] is True
        assert doc["q_lambda2_products_zero"] is True
        assert doc["stasheff"]["violations"] == 0
        assert doc["stasheff"]["checked"] > 0
        products = doc["products"]
        assert products["3"]["nonzero_tuples"] > 0
        assert products["4"]["nonzero_tuples"] == 0
        assert products["5"]["nonzero_tuples"] == 0

    def test_multtable(self):
        code, out, _ = run(["multtable", "-m", "2", "-n", "2", "--format", "json"])
        assert code == 0
        doc = json.loads(out)
        assert doc["labels"] == ["Id", "F", "Ftilde", "G", "K", "J"]
        assert len(doc["families"]) == 36

    def test_resolve_verify(self):
        code, out, _ = run(
            ["resolve", "-m", "2", "-n", "2", "--lambda", "vv^^", "--verify",
             "--format", "json"]
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["verified"] is True
        assert doc["issues"] == []

    def test_quiver(self):
        code, out, _ = run(
            ["quiver", "-m", "2", "-n", "2", "--algebra", "ext", "--format", "json"]
        )
        assert code == 0
        doc = json.loads(out)
        assert len(doc["vertices"]) == 6


class TestDeterminismAndCache:
    def test_json_round_trip_fixpoint(self):
        _, out, _ = run(
            ["extdim", "-m", "2", "-n", "2", "--all", "--format", "json"]
        )
        doc = json.loads(out)
        assert json.loads(json.dumps(doc, indent=2, sort_keys=True)) == doc

    def test_repeated_runs_identical(self):
        args = ["cartan", "-m", "2", "-n", "2", "--format", "json"]
        assert run(args) == run(args)

    def test_cache_cold_vs_warm(self, tmp_path):
        args = [
            "resolve", "-m", "2", "-n", "2", "--lambda", "v^v^",
            "--format", "json", "--cache", str(tmp_path),
        ]
        cold = run(args)
        assert cold[0] == 0
        assert any(tmp_path.iterdir())
        warm = run(args)
        assert warm == cold

    def test_cache_env_variable(self, tmp_path, monkeypatch):
        monkeypatch.setenv("ARCKIT_CACHE", str(tmp_path))
        code, _, _ = run(
            ["resolve", "-m", "2", "-n", "2", "--lambda", "v^^v",
             "--format", "json"]
        )
        assert code == 0
        assert any(tmp_path.iterdir())


class TestRender:
    def test_idempotent_diagram(self, tmp_path):
        target = tmp_path / "e.svg"
        code, _, _ = run(
            ["render", "-m", "1", "-n", "1", "--weight", "v^", "-o", str(target)]
        )
        assert code == 0
        svg = target.read_text()
        assert svg.startswith("<svg")
        assert svg.count("path") >= 2  # one cup, one cap
        assert "∧" in svg and "∨" in svg

    def test_trace_matches_golden_file(self, tmp_path):
        target = tmp_path / "trace.svg"
        code, _, _ = run(
            ["render", "-m", "3", "-n", "2", "--product", TRACE_X, TRACE_Y,
             "-o", str(target)]
        )
        assert code == 0
        assert target.read_bytes() == (DATA / "trace_golden.svg").read_bytes()

    def test_invalid_diagram_is_usage_error(self):
        code, _, _ = run(
            ["render", "-m", "3", "-n", "2", "--diagram", "garbage"]
        )
        assert code == 2
