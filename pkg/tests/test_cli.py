from __future__ import annotations

import csv
import io
import json

import pytest
from click.testing import CliRunner

from krallpoly.cli import main


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args):
        return runner.invoke(main, list(args))
    return invoke


def _csv(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_table_laguerre_rows(run):
    res = run("table", "--family", "krall-laguerre", "--alpha", "0/1", "--t", "1/1", "--n", "3", "--format", "csv")
    assert res.exit_code == 0, res.output
    rows = _csv(res.output)
    row1 = rows[1]
    assert (row1["n"], row1["y"], row1["a"], row1["b"], row1["h"]) == ("1", "1/6", "3/4", "17/6", "3/2")
    assert (rows[0]["b"], rows[0]["h"]) == ("1/2", "2")


def test_table_koornwinder_y0(run):
    res = run("table", "--family", "koornwinder", "--alpha", "0/1", "--beta", "0/1",
              "--t1", "2", "--t2", "2", "--n", "0")
    data = json.loads(res.output)
    assert data["results"][0]["y"] == "1"
    assert set(data) == {"config", "results", "summary"}


def test_table_symbolic_encoding(run):
    res = run("table", "--family", "krall-laguerre", "--alpha", "0", "--t", "sym", "--n", "1")
    y1 = json.loads(res.output)["results"][1]["y"]
    assert y1["num"] == ["0", "1"] and y1["den"] == ["2", "3", "1"]


def test_table_t_grid_is_plot_ready(run):
    res = run("table", "--family", "krall-jacobi", "--alpha", "1/2", "--beta", "0",
              "--t-grid", "1/3,1,7/2", "--n", "2", "--format", "csv")
    rows = _csv(res.output)
    assert len(rows) == 9
    assert all("." not in r["y"] for r in rows)


def test_poly_routes_agree(run):
    outs = []
    for route in ("hankel", "recurrence", "diff"):
        res = run("poly", "--family", "krall-laguerre", "--alpha", "0", "--t", "1", "--n", "2", "--route", route)
        assert res.exit_code == 0, res.output
        outs.append(json.loads(res.output)["results"][0]["coefficients"])
    assert outs[0] == ["2/3", "-10/3", "1"]
    assert outs[0] == outs[1] == outs[2]


def test_poly_diff_unavailable(run):
    res = run("poly", "--family", "krall-jacobi", "--alpha", "0", "--beta", "0", "--t", "1", "--route", "diff")
    assert res.exit_code != 0
    assert "no differentiation formula" in res.output


def test_invalid_parameters(run):
    assert run("table", "--alpha", "-1").exit_code != 0
    assert run("table", "--t", "0").exit_code != 0
    assert run("table", "--alpha", "0.5x").exit_code != 0
    assert run("table", "--n", "999").exit_code != 0


def test_verify_painleve_gegenbauer(run):
    res = run("verify", "--suite", "painleve", "--family", "gegenbauer", "--n", "1", "--alpha", "0/1")
    assert res.exit_code == 0
    data = json.loads(res.stdout)
    rows = [r for r in data["results"] if r["n"] == 1 and "Painleve V" in r["check_id"]]
    assert rows and rows[0]["value"] == "a=9/8, b=-1/8, c=0, d=0"
    assert data["summary"]["fail"] == 0


def test_verify_is_deterministic(run):
    args = ("verify", "--suite", "route-equality,toda", "--family", "krall-laguerre,gegenbauer",
            "--alpha", "1/2", "--n", "2")
    first, second = run(*args), run(*args)
    assert first.stdout == second.stdout
    assert '"time"' not in first.stdout


def test_verify_negative_control_fails(run):
    res = run("verify", "--suite", "orthogonality", "--family", "krall-laguerre", "--alpha", "0",
              "--t", "1", "--n", "2", "--perturb", "2:1/7", "--format", "csv")
    assert res.exit_code == 1
    rows = _csv(res.stdout)
    failing = [r for r in rows if r["status"] == "fail"]
    assert failing and "(m=" in failing[0]["value"]


def test_verify_writes_report_atomically(run, tmp_path):
    out = tmp_path / "report.json"
    res = run("verify", "--suite", "asymptotics", "--family", "krall-laguerre", "--alpha", "0",
              "--n", "1", "--out", str(out))
    assert res.exit_code == 0
    assert json.loads(out.read_text())["summary"]["pass"] > 0
    assert [p.name for p in tmp_path.iterdir()] == ["report.json"]
