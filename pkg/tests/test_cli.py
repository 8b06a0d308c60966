"""Command-line interface: shape contracts, round trips, exit codes."""

import csv
import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

import phasekit as pk
from phasekit.cli import run


def run_capture(argv, capsys):
    rc = run(argv)
    out = capsys.readouterr().out
    return rc, out


def parse_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], rows[1:]


def test_state_csv_shape(capsys):
    rc, out = run_capture(
        ["state", "--photons", "40", "--kind", "optimal", "--basis", "z", "--format", "csv"],
        capsys)
    assert rc == 0
    header, rows = parse_csv(out)
    assert header == ["mu", "re", "im"]
    assert len(rows) == 41
    # unit norm from the emitted text alone
    total = sum(float(r[1]) ** 2 + float(r[2]) ** 2 for r in rows)
    assert total == pytest.approx(1.0, abs=1e-12)


def test_csv_floats_round_trip(capsys):
    rc, out = run_capture(["state", "--photons", "7", "--kind", "jj", "--basis", "y"], capsys)
    assert rc == 0
    _, rows = parse_csv(out)
    state = pk.make_state(7, "jj", "y")
    for row, c in zip(rows, state.coeffs):
        assert float(row[1]) == c.real  # bit-for-bit through 17 digits
        assert float(row[2]) == c.imag


def test_variance_json_and_derived_column(capsys):
    rc, out = run_capture(
        ["variance", "--photons", "4", "--kind", "optimal", "--format", "json"], capsys)
    assert rc == 0
    payload = json.loads(out)
    assert payload["meta"]["command"] == "variance"
    row = payload["rows"][0]
    assert row["holevo_variance"] == pytest.approx(1 / 3, abs=1e-12)
    # derived column recomputes bit-for-bit from the emitted moment
    m1 = row["moment1"]
    assert 1.0 / m1**2 - 1.0 == row["holevo_variance"]


def test_variance_csv_round_trip_derived(capsys):
    rc, out = run_capture(["variance", "--photons", "8", "--kind", "jj"], capsys)
    assert rc == 0
    header, rows = parse_csv(out)
    i_m1 = header.index("moment1")
    i_v = header.index("holevo_variance")
    m1 = float(rows[0][i_m1])
    v = float(rows[0][i_v])
    assert 1.0 / m1**2 - 1.0 == v


def test_measures_json_field(capsys):
    rc, out = run_capture(
        ["measures", "--photons", "4", "--kind", "optimal", "--format", "json"], capsys)
    assert rc == 0
    row = json.loads(out)["rows"][0]
    assert row["holevo_variance"] == pytest.approx(0.333333333, abs=1e-8)
    assert row["delta_phi_H"] ** 2 == pytest.approx(1 / 3, abs=1e-12)


def test_table_sorted_and_order_independent(capsys):
    rc1, out1 = run_capture(
        ["table", "--photons-list", "8,2,4", "--kind", "optimal"], capsys)
    rc2, out2 = run_capture(
        ["table", "--photons-list", "4,8,2", "--kind", "optimal"], capsys)
    assert rc1 == rc2 == 0
    assert out1 == out2
    _, rows = parse_csv(out1)
    assert [int(r[0]) for r in rows] == [2, 4, 8]


def test_table_threads_match_serial(capsys):
    rc1, out1 = run_capture(
        ["table", "--photons-list", "2,4,6", "--kind", "j0", "--threads", "3"], capsys)
    rc2, out2 = run_capture(
        ["table", "--photons-list", "2,4,6", "--kind", "j0"], capsys)
    assert rc1 == rc2 == 0
    assert out1 == out2


def test_approx_count(capsys):
    rc, out = run_capture(["approx-count", "--photons", "40", "--factor", "2.0"], capsys)
    assert rc == 0
    _, rows = parse_csv(out)
    assert int(rows[0][2]) == pk.min_eigenstates(40, 2.0)


def test_asymptotic_constants_rows(capsys):
    rc, out = run_capture(["asymptotic-constants", "--kind", "j0"], capsys)
    assert rc == 0
    _, rows = parse_csv(out)
    table = {r[0]: float(r[1]) for r in rows}
    assert table["holevo_variance_scale"] == pytest.approx(0.2845775946062444, abs=1e-13)
    assert table["N_L_rp"] == pytest.approx(6.87518581802037, rel=1e-10)
    assert table["N_L_c23"] == pytest.approx(3.07129589640767, rel=1e-10)


def test_sample_deterministic(capsys):
    argv = ["sample", "--photons", "8", "--kind", "optimal", "--count", "5", "--seed", "3"]
    rc1, out1 = run_capture(argv, capsys)
    rc2, out2 = run_capture(argv, capsys)
    assert rc1 == rc2 == 0
    assert out1 == out2
    _, rows = parse_csv(out1)
    assert len(rows) == 5


def test_compare_approximations_columns(capsys):
    rc, out = run_capture(
        ["compare-approximations", "--photons", "400", "--grid", "8"], capsys)
    assert rc == 0
    header, rows = parse_csv(out)
    assert header == ["phi", "exact", "intermediate", "bessel"]
    assert 1 <= len(rows) <= 8
    for r in rows:
        assert all(float(v) >= 0.0 for v in r)


def test_exit_code_2_names_flag(capsys):
    rc = run(["state", "--photons", "3", "--kind", "j0"])
    err = capsys.readouterr().err
    assert rc == 2
    assert "--photons" in err or "--kind" in err
    rc = run(["table", "--kind", "optimal"])
    err = capsys.readouterr().err
    assert rc == 2
    assert "--photons-list" in err
    rc = run(["approx-count", "--photons", "8", "--factor", "0.5"])
    err = capsys.readouterr().err
    assert rc == 2
    assert "--factor" in err


def test_output_file(tmp_path, capsys):
    path = tmp_path / "out.csv"
    rc = run(["state", "--photons", "2", "--kind", "j0", "--output", str(path)])
    assert rc == 0
    header, rows = parse_csv(path.read_text())
    assert header == ["mu", "re", "im"]
    assert len(rows) == 3


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "phasekit.cli", "variance", "--photons", "2", "--kind", "j0"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert "modpi" in proc.stdout
