from __future__ import annotations

import json
import math
import subprocess
import sys

import pytest
from click.testing import CliRunner

from tlj.cli import main
from tlj.coherence import catalog_names


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args, env=None):
        return runner.invoke(main, list(args), env=env, catch_exceptions=False)

    return invoke


def reports(output: str) -> list[dict]:
    return [json.loads(line) for line in output.splitlines() if line.strip()]


def test_verify_pentagon_json(run):
    result = run("verify", "pentagon", "--k", "1", "--max-len", "6", "--max-filled", "3", "--format", "json")
    assert result.exit_code == 0
    (doc,) = reports(result.output)
    assert doc["identity"] == "pentagon" and doc["status"] == "pass"
    assert doc["bounds"] == {"max_len": 6, "max_filled": 3}


def test_verify_all_streams_catalog_in_order(run):
    result = run("verify", "all", "--k", "2")
    assert result.exit_code == 0
    docs = reports(result.output)
    assert [d["identity"] for d in docs] == catalog_names()
    assert all(d["status"] == "pass" for d in docs)


def test_verify_text_format(run):
    result = run("verify", "triangle", "--delta2", "--max-len", "4", "--max-filled", "2", "--format", "text")
    assert result.exit_code == 0
    assert result.output.startswith("triangle") and "PASS" in result.output


def test_mutation_exits_one_with_counterexample(run):
    result = run("verify", "pentagon", "--k", "2", "--mutation", "alpha-green-under-red")
    assert result.exit_code == 1
    (doc,) = reports(result.output)
    assert doc["status"] == "fail" and "counterexample" in doc


@pytest.mark.parametrize(
    "args",
    [
        ("verify", "pentagon", "--k", "9999"),
        ("verify", "pentagon", "--k", "0"),
        ("verify", "heptagon", "--k", "1"),
        ("verify", "pentagon"),
        ("verify", "pentagon", "--k", "1", "--delta2"),
        ("verify", "pentagon", "--k", "1", "--max-len", "40"),
        ("verify", "pentagon", "--k", "1", "--max-filled", "9"),
        ("verify", "pentagon", "--k", "1", "--format", "dot"),
        ("verify", "pentagon", "--k", "1", "--mutation", "everything"),
        ("emit", "jw", "--k", "1", "--n", "5"),
        ("emit", "jw", "--k", "1"),
        ("emit", "fusion", "--k", "2", "--format", "dot"),
        ("emit", "diagrams"),
        ("emit", "spiders", "--k", "1"),
    ],
)
def test_usage_errors_exit_two(run, args):
    assert run(*args).exit_code == 2


def test_unwritable_output_is_a_usage_error(run, tmp_path):
    target = tmp_path / "missing" / "x.json"
    assert run("emit", "fusion", "--k", "2", "--out", str(target)).exit_code == 2
    assert run("verify", "triangle", "--k", "1", "--out", str(target)).exit_code == 2


def test_env_cap_on_bounds(run):
    assert run("verify", "pentagon", "--k", "1", env={"TLJ_MAX_BOUND": "4"}).exit_code == 2
    ok = run("verify", "pentagon", "--k", "1", "--max-len", "4", "--max-filled", "2", env={"TLJ_MAX_BOUND": "4"})
    assert ok.exit_code == 0
    assert run("verify", "pentagon", "--k", "1", env={"TLJ_MAX_BOUND": "lots"}).exit_code == 2


def test_verify_extra_checks(run):
    result = run("verify", "full-faithful", "--k", "2", "--n", "2")
    assert result.exit_code == 0
    docs = reports(result.output)
    # f0, f1, f2 and id2 give 16 ordered pairs
    assert len(docs) == 16 and all(d["status"] == "pass" for d in docs)
    result = run("verify", "k0-ring", "--k", "2")
    assert result.exit_code == 0
    (doc,) = reports(result.output)
    assert doc["details"]["table"]["f1*f1"] == "f0 + f2"


def test_emit_fusion(run):
    result = run("emit", "fusion", "--k", "2")
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert doc["simples"] == ["f0", "f1", "f2"]
    assert doc["table"][1][1] == {"f0": 1, "f2": 1}
    text = run("emit", "fusion", "--k", "2", "--format", "text").output
    assert any(line.startswith("f1") and "f0 + f2" in line for line in text.splitlines())


def test_emit_bratteli_dot_doubles(run):
    result = run("emit", "bratteli", "--k", "1", "--depth", "4", "--format", "dot")
    assert result.exit_code == 0
    for n in range(1, 5):
        for s in (0, 1):
            assert f'"{s}@{n}" [label="f{s}: {2 ** (n - 1)}"];' in result.output


def test_emit_jw_coefficients(run):
    result = run("emit", "jw", "--n", "2", "--k", "3", "--float")
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert doc["terms"] == 2
    coeffs = doc["coefficients"]
    assert coeffs["2,2:[1-4,2-3]"]["approx"] == "1"
    delta = 2 * math.cos(math.pi / 5)
    assert abs(float(coeffs["2,2:[1-2,3-4]"]["approx"]) + 1 / delta) < 1e-11


def test_emit_diagrams(run):
    doc = json.loads(run("emit", "diagrams", "--n", "3").output)
    assert doc["count"] == 5 and len(doc["diagrams"]) == 5
    doc = json.loads(run("emit", "diagrams", "--n", "4", "--m", "0").output)
    assert doc["count"] == 2


@pytest.mark.parametrize(
    "args",
    [
        ("emit", "fusion", "--k", "3"),
        ("emit", "bratteli", "--k", "2", "--format", "json"),
        ("emit", "jw", "--n", "3", "--delta2", "--float"),
    ],
)
def test_emit_is_byte_deterministic(run, tmp_path, args):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run(*args, "--out", str(a)).exit_code == 0
    assert run(*args, "--out", str(b), "--jobs", "4").exit_code == 0
    assert a.read_bytes() == b.read_bytes()


def test_verify_output_independent_of_jobs(run):
    def strip(out):
        docs = reports(out)
        for d in docs:
            d.pop("wall_time_ms")
        return docs

    one = run("verify", "hexagon1", "--k", "2", "--max-len", "4", "--max-filled", "2")
    four = run("verify", "hexagon1", "--k", "2", "--max-len", "4", "--max-filled", "2", "--jobs", "4")
    assert strip(one.output) == strip(four.output)


def test_console_script_module_entry():
    result = subprocess.run(
        [sys.executable, "-m", "tlj.cli", "emit", "fusion", "--k", "1", "--format", "text"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert result.returncode == 0 and "f1" in result.stdout
