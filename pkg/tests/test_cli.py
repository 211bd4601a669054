import csv
import io
import json

import numpy as np
import pytest

from hoc7 import cli, studies
from hoc7.errors import ConfigError
from hoc7.solver import RunConfig, RunReport, solve, write_report


def run(argv):
    out = io.StringIO()
    code = cli.main(argv, out=out)
    return code, out.getvalue()


# -- configuration -------------------------------------------------------------

@pytest.mark.parametrize("kwargs,flag", [
    ({"problem": "ex9"}, "--problem"),
    ({"report_times": [0.015], "tau": 0.01, "T": 0.1}, "--report-times"),
    ({"h": 0.0125, "N": 80}, "--h"),
    ({"tau": 0.01, "M": 10}, "--tau"),
    ({"tau": 0.03, "T": 0.1}, "--tau"),
    ({"h": 0.3}, "--h"),
    ({"nu": 0.0}, "--nu"),
    ({"scheme": "rk4"}, "--scheme"),
    ({"problem": "ex3", "exact": "fourier"}, "--exact"),
    ({"problem": "ex1", "exact": "closed"}, "--exact"),
    ({"report_times": [0.2], "T": 0.1}, "--report-times"),
    ({"problem": "ex3", "report_times": [0.5]}, "--report-times"),
])
def test_config_validation(kwargs, flag):
    with pytest.raises(ConfigError, match=flag):
        RunConfig(**kwargs).resolve()


def test_config_defaults_follow_first_parameter_set():
    prob, grid, nu, times = RunConfig("ex1").resolve()
    assert (nu, grid.N, grid.M, times) == (2.0, 80, 1000, [0.001, 0.01, 0.1])
    _, grid, _, times = RunConfig("ex3", T=1.7).resolve()
    assert (grid.N, grid.M, times) == (2400, 70, [1.7])


def test_config_file_and_precedence(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# a comment\nproblem = ex2\nnu = 0.2   # inline\nh = 0.025\nT = 0.5\ntau = 0.01\n"
                   "report_times = 0.1, 0.5\n")
    args = cli.build_parser().parse_args(["solve", "--config", str(cfg), "--nu", "2", "--N", "20"])
    rc = cli.run_config_from(args)
    assert (rc.problem, rc.nu, rc.N, rc.h, rc.T, rc.report_times) == ("ex2", 2.0, 20, None, 0.5, [0.1, 0.5])


@pytest.mark.parametrize("text,match", [("foo\n", ":1: expected"), ("x\nbogus = 3\n", ":1:"),
                                        ("nu = 1\nbogus = 3\n", ":2: unknown key"),
                                        ("N = ten\n", "invalid value")])
def test_config_file_errors(tmp_path, text, match):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text(text)
    with pytest.raises(ConfigError, match=match):
        cli.read_config(cfg)


# -- solve ---------------------------------------------------------------------

def test_solve_table_one():
    rep = solve(RunConfig("ex1"))
    snap = rep.snapshot(0.1)
    assert snap.linf == pytest.approx(9.5e-5, rel=0.01)
    assert snap.reliable


def test_solve_zero_steps_returns_initial_data():
    rep = solve(RunConfig("ex1", T=0.0))
    snap = rep.snapshots[0]
    x = np.array(rep.x)
    # second-order inverse transform: error ~ h^2
    np.testing.assert_allclose(snap.numeric[1:-1], np.sin(np.pi * x[1:-1]), atol=3e-4)
    assert snap.linf < 3e-4


def test_solve_shock():
    rep = solve(RunConfig("ex3", T=1.7))
    assert 1e3 * rep.snapshots[0].linf <= 1.0


def test_unreliable_reference_suppresses_errors():
    rep = solve(RunConfig("ex1", nu=0.001, tau=0.001, T=10.0))
    snap = rep.snapshots[0]
    assert not snap.reliable and snap.exact is None and snap.l2 is None and snap.linf is None
    assert "unreliable" in snap.note


def test_report_round_trip():
    rep = solve(RunConfig("ex5"))
    again = RunReport.from_json(rep.to_json())
    assert again == rep
    assert json.loads(again.to_json()) == json.loads(rep.to_json())


def test_csv_output_deterministic(tmp_path):
    rep1 = solve(RunConfig("ex1", T=0.01))
    rep2 = solve(RunConfig("ex1", T=0.01))
    f1 = write_report(rep1, tmp_path / "a")
    f2 = write_report(rep2, tmp_path / "b")
    assert [p.name for p in f1] == ["solution_t0.01.csv", "summary.csv"]
    for a, b in zip(f1, f2):
        assert a.read_bytes() == b.read_bytes()
    raw = f1[0].read_bytes()
    assert b"\r" not in raw
    rows = list(csv.reader(io.StringIO(raw.decode("utf-8"))))
    assert rows[0] == ["x", "numeric", "exact", "abs_error"]
    assert len(rows) == 82
    # 17 significant digits round-trip exactly
    assert float(rows[5][1]) == rep1.snapshots[0].numeric[4]


def test_json_output(tmp_path):
    rep = solve(RunConfig("ex1", T=0.01))
    (path,) = write_report(rep, tmp_path, format="json")
    assert RunReport.from_json(path.read_text()) == rep


# -- command line ----------------------------------------------------------------

def test_cli_solve(tmp_path):
    code, out = run(["solve", "--problem", "ex1", "--T", "0.01", "--out", str(tmp_path)])
    assert code == 0
    assert "summary.csv" in out and "Linf=" in out
    assert (tmp_path / "solution_t0.01.csv").exists()


def test_cli_config_error_exit_code(capsys):
    code, _ = run(["solve", "--problem", "ex1", "--tau", "0.03"])
    assert code == 2
    assert "--tau" in capsys.readouterr().err


def test_cli_numerical_failure_exit_code(capsys):
    # psi underflows to zero for this viscosity, so the inverse transform must refuse
    code, _ = run(["solve", "--problem", "ex1", "--nu", "1e-4", "--T", "0.01", "--tau", "0.01"])
    assert code == 3
    assert "positivity" in capsys.readouterr().err


def test_cli_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as info:
        cli.main(["solve", "--h", "0.1", "--N", "10"])
    assert info.value.code == 2


def test_cli_table(tmp_path):
    code, out = run(["table", "1", "--out", str(tmp_path), "--strict"])
    assert code == 0
    rows = list(csv.reader((tmp_path / "table1.csv").open()))
    assert rows[0] == ["x", "T", "computed", "exact", "published_present", "published_exact"]
    assert len(rows) == 1 + 27
    dev = json.loads((tmp_path / "table1_deviations.json").read_text())
    assert dev["all_within"] and dev["max_deviation"] < 5e-5


def test_cli_table_strict_deviation(tmp_path, monkeypatch):
    monkeypatch.setattr(studies, "VALUE_TOL", 0.0)
    code, _ = run(["table", "1", "--out", str(tmp_path), "--strict"])
    assert code == 4
    code, _ = run(["table", "1", "--out", str(tmp_path)])
    assert code == 0


def test_table_two_row():
    res = studies.cmd_table(2)
    row = next(r for r in res.rows if r[0] == 0.5 and r[1] == 1.0)
    assert row[2] == pytest.approx(0.2918410, abs=5e-7)
    assert row[3] == pytest.approx(0.29192, abs=5e-6)


@pytest.mark.parametrize("table_id,x,T,value", [(3, 0.25, 20.0, 0.012236), (6, 0.75, 20.0, 0.029271)])
def test_small_viscosity_table_rows(table_id, x, T, value):
    res = studies.cmd_table(table_id)
    row = next(r for r in res.rows if r[0] == x and r[1] == T)
    assert row[2] == pytest.approx(value, abs=5e-6)


def test_cli_converge_single_level():
    code, out = run(["converge", "ode", "--levels", "3"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "step,error,order"
    assert lines[1].endswith(",") and len(lines) == 2


def test_cli_converge_ode(tmp_path):
    path = tmp_path / "ode.csv"
    code, _ = run(["converge", "ode", "--out", str(path)])
    assert code == 0
    rows = list(csv.DictReader(path.open()))
    orders = [float(r["order"]) for r in rows[1:]]
    assert all(6.5 <= o <= 7.5 for o in orders)


def test_converge_space_and_time():
    space = studies.cmd_converge("space")
    assert all(3.8 <= o <= 4.2 for _, _, o in space[1:])
    time = studies.cmd_converge("time")
    assert all(6.5 <= o <= 7.5 for _, _, o in time[1:])


def test_cli_stability(tmp_path):
    code, _ = run(["stability", "--out", str(tmp_path)])
    assert code == 0
    psi = np.loadtxt(tmp_path / "psi.csv", delimiter=",", skiprows=1)
    assert tuple(psi[0]) == (0.0, 1.0)
    tail = np.abs(psi[psi[:, 0] >= 1e3, 1])
    assert np.all(np.diff(tail) < 0)
    loc = np.loadtxt(tmp_path / "boundary_locus.csv", delimiter=",", skiprows=1)
    s = loc[:, 1] + 1j * loc[:, 2]
    from hoc7.scheme import psi_eval
    assert np.max(np.abs(np.abs(psi_eval(s)) - 1)) <= 1e-10


def test_cli_derive_check():
    code, out = run(["derive-check"])
    assert code == 0
    assert "MISMATCH" in out
    line = next(l for l in out.splitlines() if l.startswith("psi numerator s^2 (stability form)"))
    assert "45360" in line and "44280" in line
    line = next(l for l in out.splitlines() if l.startswith("psi denominator s^1 (matrix form)"))
    assert "230040" in line and "2300" in line and "MISMATCH" in line
    assert "hermite k=1 u_n " in out
    assert "consistency: order == 7: pass" in out


def test_derive_check_flags_exactly_the_known_discrepancies():
    items, consistency = studies.derive_check()
    bad = {i.name for i in items if not i.match}
    assert "psi numerator s^2 (stability form)" in bad
    assert "psi numerator s^2 (matrix form)" not in bad
    assert "psi denominator s^1 (matrix form)" in bad
    assert "psi denominator s^3 (stability form)" in bad
    assert "hermite k=1 u_n" in bad
    assert "stage k=4 h2u''_n+1" in bad
    assert all(consistency.values())
    # every printed error constant agrees with the derivation
    assert not any("error constant" in n for n in bad)
