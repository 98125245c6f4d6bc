#!/usr/bin/env python
"""Tests for the `newton-strata` command line."""

import json

import pytest

from newton_strata.cli import JobConfig, main
from newton_strata.settings import (
    EXIT_CONDITION_2,
    EXIT_CONDITION_3,
    EXIT_OK,
    EXIT_PRECISION,
    EXIT_USAGE,
    OutputFormat,
)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_matrix(path, rows, precision=20):
    document = {
        "p": 3,
        "precision": precision,
        "degree": 1,
        "modulus": [0, 1],
        "entries": [[[value] for value in row] for row in rows],
    }
    path.write_text(json.dumps(document), encoding="utf-8")
    return str(path)


def test_poset_dot(capsys):
    code, out, _ = run_cli(capsys, "poset", "--group", "GL4", "--mu", "1,1,0,0", "--format", "dot")
    assert code == EXIT_OK
    assert out.startswith("digraph")
    assert out.count("[label=") == 5
    assert out.count("->") == 5


def test_poset_json(capsys):
    code, out, _ = run_cli(capsys, "poset", "--group", "GL", "--n", "2", "--mu", "1,0")
    assert code == EXIT_OK
    document = json.loads(out)
    assert document["schema"] == 1
    assert [e["newton_point"] for e in document["elements"]] == [["1", "0"], ["1/2", "1/2"]]
    assert document["hasse"] == [[1, 0]]


def test_poset_text(capsys):
    code, out, _ = run_cli(capsys, "poset", "--group", "GL2", "--mu", "1,0", "--format", "text")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "B(GL2, (1, 0)): 2 classes, 1 covers"


def test_dims_tsv(capsys):
    code, out, _ = run_cli(capsys, "dims", "--group", "GL4", "--mu", "1,1,0,0")
    assert code == EXIT_OK
    rows = [line.split("\t") for line in out.splitlines()]
    assert rows[0][3] == "dim"
    assert [row[3] for row in rows[1:]] == ["4", "3", "2", "2", "1"]


def test_dims_json(capsys):
    code, out, _ = run_cli(capsys, "dims", "--group", "GSp4", "--mu", "1,1,1", "--format", "json")
    assert code == EXIT_OK
    document = json.loads(out)
    assert document["dim_deformation_space"] == 3
    assert [row["defect"] for row in document["rows"]] == [0, 1, 1]


def test_rc_json(capsys):
    code, out, _ = run_cli(capsys, "rc", "--group", "GL3", "--mu", "0,1,0", "--w", "2")
    assert code == EXIT_OK
    document = json.loads(out)
    assert document["nu"] == ["0", "1/2", "1/2"]
    assert document["r_c"] == [[1, -1, 0]]
    assert document["orbits"][0]["r_c_count"] == 1


def test_rc_text(capsys):
    code, out, _ = run_cli(capsys, "rc", "--group", "GL3", "--mu", "0,1,0", "--w", "2", "--format", "text")
    assert code == EXIT_OK
    assert "R_C\t(1,-1,0)" in out.splitlines()


def test_rc_condition_2(capsys):
    code, _, err = run_cli(capsys, "rc", "--group", "U3", "--mu", "0,1,0", "--w", "1,2")
    assert code == EXIT_CONDITION_2
    assert "condition 2" in err


def test_rc_condition_3(capsys):
    code, _, err = run_cli(capsys, "rc", "--group", "GL3", "--mu", "1,0,0", "--w", "1")
    assert code == EXIT_CONDITION_3
    assert "anti-dominant" in err


def test_slopes_from_matrix(capsys, tmp_path):
    matrix = write_matrix(tmp_path / "a.json", [[0, 1], [3, 0]])
    code, out, _ = run_cli(capsys, "slopes", "--matrix", matrix)
    assert code == EXIT_OK
    assert out == "1/2 1/2\n"


def test_slopes_from_leaf_datum(capsys):
    code, out, _ = run_cli(capsys, "slopes", "--group", "GL3", "--mu", "0,1,0", "--w", "2")
    assert code == EXIT_OK
    assert out == "1/2 1/2 0\n"


def test_slopes_json(capsys, tmp_path):
    matrix = write_matrix(tmp_path / "a.json", [[1, 0], [0, 3]])
    code, out, _ = run_cli(capsys, "slopes", "--matrix", matrix, "--format", "json")
    assert code == EXIT_OK
    document = json.loads(out)
    assert document["slopes"] == ["1", "0"]
    assert document["kappa"] == 1


def test_slopes_precision_error(capsys, tmp_path):
    matrix = write_matrix(tmp_path / "a.json", [[27, 0], [0, 1]], precision=2)
    code, _, err = run_cli(capsys, "slopes", "--matrix", matrix)
    assert code == EXIT_PRECISION
    assert "precision >= 4" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["poset", "--group", "GL4"],
        ["poset", "--group", "GL3", "--mu", "2,0,0"],
        ["poset", "--group", "XY3", "--mu", "1,0,0"],
        ["dims", "--group", "GL3", "--mu", "1,a,0"],
        ["rc", "--group", "GL3", "--mu", "0,1,0"],
        ["rc", "--group", "GL3", "--mu", "0,1,0", "--w", "0"],
        ["rc", "--group", "GL3", "--mu", "0,1,0", "--w", "2", "--format", "dot"],
        ["slopes", "--group", "GL3", "--mu", "0,1,0"],
        ["slopes", "--matrix", "missing.json"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = run_cli(capsys, *argv)
    assert code == EXIT_USAGE
    assert err.startswith("newton-strata: error:")


def test_slopes_needs_exactly_one_source(capsys, tmp_path):
    matrix = write_matrix(tmp_path / "a.json", [[0, 1], [3, 0]])
    code, _, _ = run_cli(capsys, "slopes", "--matrix", matrix, "--group", "GL2", "--mu", "1,0", "--w", "1")
    assert code == EXIT_USAGE


def test_cache_is_byte_identical(capsys, tmp_path):
    cache = tmp_path / "cache"
    argv = ["dims", "--group", "GL4", "--mu", "1,1,0,0", "--cache-dir", str(cache)]
    _, first, _ = run_cli(capsys, *argv)
    _, second, _ = run_cli(capsys, *argv)
    assert first == second
    (entry,) = cache.glob("*.out")
    assert entry.read_text(encoding="utf-8") == first


def test_version(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["--version"])
    assert excinfo.value.code == 0
    assert "newton-strata" in capsys.readouterr().out


def test_job_config_defaults():
    config = JobConfig(command="dims", group="GL4", mu=[1, 1, 0, 0])
    assert config.format == OutputFormat.TSV
    assert JobConfig(command="poset", group="GL4", mu=[1, 1, 0, 0]).format == OutputFormat.JSON


def test_cache_key_ignores_cache_dir(tmp_path):
    config = JobConfig(command="dims", group="GL4", mu=[1, 1, 0, 0])
    assert config.cache_key() == config.model_copy(update={"cache_dir": tmp_path}).cache_key()
    assert config.cache_key() != JobConfig(command="dims", group="GL4", mu=[1, 0, 0, 0]).cache_key()


@pytest.mark.slow
def test_check(capsys):
    code, out, _ = run_cli(capsys, "check", "--format", "text")
    assert code == EXIT_OK
    assert "FAIL" not in out
