import csv
import json

import pytest

from steinclt.cli import _parse_grid, execute


def run(argv, capsys):
    code = execute(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def csv_rows(text):
    lines = [line for line in text.splitlines() if not line.startswith("#")]
    return list(csv.reader(lines))


def test_grid_syntax():
    assert _parse_grid("0:4:0.25", float) == pytest.approx(
        [0.25 * i for i in range(17)]
    )
    assert _parse_grid("1,2,3", float) == [1.0, 2.0, 3.0]
    assert _parse_grid("25", int) == [25]


def test_bound_example(capsys):
    code, out, _ = run(
        ["bound", "--family", "rademacher", "--n", "25", "--t", "1", "--eps", "0.4"],
        capsys,
    )
    assert code == 0
    header, row = csv_rows(out)
    record = dict(zip(header, row))
    assert float(record["slack"]) == pytest.approx(0.798, abs=0.002)
    assert record["passed"] == "true"
    assert "# schema=stein-clt-report/1" in out


def test_identity_example(capsys):
    code, out, _ = run(
        ["identity", "--family", "eta", "--alpha", "0.5", "--n", "8", "--t", "2"],
        capsys,
    )
    assert code == 0
    header, row = csv_rows(out)
    record = dict(zip(header, row))
    assert float(record["residual"]) < 1e-6


def test_validate_bad_spec_exits_one(tmp_path, capsys):
    bad = tmp_path / "bad_row.json"
    bad.write_text(
        '{"schema": "stein-clt-row/1", "kind": "explicit", "N": 1,'
        ' "cells": [{"atoms": [{"x": [1.0], "p": 0.5}, {"x": [-1.0], "p": 0.4}]}]}'
    )
    code, _, err = run(["validate", "--spec", str(bad)], capsys)
    assert code == 1
    assert "failed validation" in err


def test_validate_good_spec(tmp_path, capsys):
    good = tmp_path / "row.json"
    good.write_text(
        '{"schema": "stein-clt-row/1", "kind": "explicit", "N": 1,'
        ' "cells": [{"atoms": [{"x": [1.0], "p": 0.5}, {"x": [-1.0], "p": 0.5}]}]}'
    )
    code, out, _ = run(["validate", "--spec", str(good)], capsys)
    assert code == 0
    header, row = csv_rows(out)
    assert dict(zip(header, row))["passed"] == "true"


def test_usage_errors_exit_two(capsys):
    assert run(["gap", "--family", "eta", "--n", "5", "--t", "1"], capsys)[0] == 2
    assert run(["gap", "--t", "1"], capsys)[0] == 2  # no source
    assert run(["gap", "--family", "rademacher", "--t", "1"], capsys)[0] == 2  # no n
    with pytest.raises(SystemExit) as excinfo:
        execute(["no-such-command"])
    assert excinfo.value.code == 2


def test_malformed_spec_exits_two(tmp_path, capsys):
    doc = tmp_path / "broken.json"
    doc.write_text("{not json")
    code, _, err = run(["validate", "--spec", str(doc)], capsys)
    assert code == 2
    assert "line" in err


def test_convergence_failure_exits_three(capsys):
    code, _, err = run(
        ["identity", "--family", "rademacher", "--n", "25", "--t", "1",
         "--abs-tol", "1e-30", "--rel-tol", "1e-30"],
        capsys,
    )
    assert code == 3
    assert "converge" in err


def test_reports_are_byte_identical(tmp_path):
    argv = ["charfn", "--family", "eta", "--alpha", "0.5", "--n-list", "5,10",
            "--t", "0:2:0.5", "--samples", "5000", "--seed", "11"]
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert execute(argv + ["--output", str(out1)]) == 0
    assert execute(argv + ["--output", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_thread_env_does_not_change_output(tmp_path, monkeypatch):
    argv = ["identity", "--family", "rademacher", "--n-list", "2,5,10",
            "--t-list", "0.5,1,2"]
    monkeypatch.setenv("STEIN_CLT_THREADS", "1")
    assert execute(argv + ["--output", str(tmp_path / "serial.csv")]) == 0
    monkeypatch.setenv("STEIN_CLT_THREADS", "4")
    assert execute(argv + ["--output", str(tmp_path / "threaded.csv")]) == 0
    assert (tmp_path / "serial.csv").read_bytes() == (tmp_path / "threaded.csv").read_bytes()


def test_json_format(capsys):
    code, out, _ = run(
        ["gap", "--family", "rademacher", "--n", "9", "--t-list", "1,2",
         "--format", "json"],
        capsys,
    )
    assert code == 0
    document = json.loads(out)
    assert document["schema"] == "stein-clt-report/1"
    assert document["columns"] == ["n", "t", "gap"]
    assert len(document["rows"]) == 2
    assert document["config"]["command"] == "gap"


def test_lindeberg_report_metadata(capsys):
    code, out, _ = run(
        ["lindeberg", "--family", "eta", "--alpha", "0.5",
         "--n-list", "1000,3000,10000", "--eps-list", "0.3,0.1,0.03"],
        capsys,
    )
    assert code == 0
    meta = dict(
        line[2:].split("=", 1) for line in out.splitlines()
        if line.startswith("# ") and "=" in line
    )
    assert float(meta["index_estimate"]) == pytest.approx(0.5, abs=0.05)


def test_stein_check_small_battery(capsys):
    code, out, _ = run(
        ["stein-check", "--t-list", "1", "--x-list", "0.7", "--trials", "200",
         "--level", "40"],
        capsys,
    )
    assert code == 0
    rows = csv_rows(out)
    header, data = rows[0], rows[1:]
    assert all(dict(zip(header, row))["passed"] == "true" for row in data)
    checks = {dict(zip(header, row))["check"] for row in data}
    assert {"gradient_fd", "hessian_fd", "stein_equation", "gaussian_moment2",
            "hessian_difference", "shift_identity_scalar"} <= checks


def test_l_sum_command(capsys):
    code, out, _ = run(
        ["l-sum", "--family", "rademacher", "--n", "25", "--t", "1",
         "--eps-list", "0.1,1"],
        capsys,
    )
    assert code == 0
    rows = csv_rows(out)
    data = rows[1:]
    assert len(data) == 4  # 2 thresholds x 2 modes
    # |x t| = 0.2: above threshold 0.1 everything counts, above 1 nothing
    by_key = {(row[2], row[3]): float(row[4]) for row in data}
    assert by_key[("1.0", "same")] == 0.0
    assert by_key[("0.1", "same")] == pytest.approx(1.0, abs=1e-12)


def test_lambda_f_command_metadata(capsys):
    code, out, _ = run(
        ["lambda-f", "--family", "rademacher", "--n-list", "100,1000,5000",
         "--t", "0.5:2:0.5"],
        capsys,
    )
    assert code == 0
    meta = dict(
        line[2:].split("=", 1) for line in out.splitlines()
        if line.startswith("# ") and "=" in line
    )
    assert 0.0 <= float(meta["lambda_f_estimate"]) <= 2.0
    assert "truncation_note" in meta


def test_kolmogorov_command(capsys):
    code, out, _ = run(
        ["kolmogorov", "--family", "rademacher", "--n", "1",
         "--samples", "50000", "--seed", "3"],
        capsys,
    )
    assert code == 0
    header, row = csv_rows(out)
    assert float(dict(zip(header, row))["distance"]) == pytest.approx(0.3413, abs=0.02)


def test_product_family_cli(capsys):
    code, out, _ = run(
        ["gap", "--family", "product", "--dim", "2", "--n", "4", "--t-list", "1,2"],
        capsys,
    )
    assert code == 0
    assert len(csv_rows(out)) == 3  # header + 2 rows


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as excinfo:
        execute(["--version"])
    assert excinfo.value.code == 0
