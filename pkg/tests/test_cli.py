import csv
import io
import json
import math

import pytest

from hyppoisson.cli import EXIT_CONFIG, EXIT_OK, RunConfig, config_from_args, main
from hyppoisson.quadrature import GRID_ENV


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def read_csv(text):
    return list(csv.reader(io.StringIO(text)))


def test_spherical_example(capsys):
    code, out, err = run_cli(capsys, "spherical", "--n", "2", "--twice-l", "0", "--lambda-re", "0",
                             "--lambda-im", "-1", "--r-min", "0", "--r-max", "0.9", "--r-steps", "10")
    assert code == EXIT_OK
    rows = read_csv(out)
    assert rows[0] == ["r", "re", "im"]
    assert len(rows) == 11
    assert float(rows[1][1]) == pytest.approx(math.pi / 24, rel=1e-14)
    assert float(rows[1][2]) == 0
    assert "Re(i lambda) = 1.0" in err


def test_gen_spherical_bad_ktype(capsys):
    code, out, err = run_cli(capsys, "gen-spherical", "--p", "5", "--q", "2")
    assert code == EXIT_CONFIG
    assert out == "" and "error" in err


def test_gen_spherical_json(capsys):
    code, out, _ = run_cli(capsys, "gen-spherical", "--p", "1", "--q", "3", "--format", "json", "--r-steps", "3")
    assert code == EXIT_OK
    body = json.loads(out)
    assert body["radial_exponent"] == "q" and len(body["rows"]) == 3


@pytest.mark.parametrize("argv", [
    ["spherical", "--n", "1"],
    ["spherical", "--r-max", "1.0"],
    ["spherical", "--r-min", "0.5", "--r-max", "0.2"],
    ["limit", "--lambda-im", "0.5"],
    ["hardy", "--p-exp", "1.5", "--lambda-im", "-1.5"],
    ["verify", "--tol", "nonsense=1e-3"],
    ["verify", "--tol", "limit=-1"],
    ["spherical", "--grid-size", "0"],
])
def test_config_errors(capsys, argv):
    assert run_cli(capsys, *argv)[0] == EXIT_CONFIG


def test_bad_env_grid(capsys, monkeypatch):
    monkeypatch.setenv(GRID_ENV, "lots")
    assert run_cli(capsys, "spherical")[0] == EXIT_CONFIG
    # an explicit flag wins over the environment
    assert run_cli(capsys, "spherical", "--grid-size", "64")[0] == EXIT_OK


def test_argparse_rejects_malformed_tol():
    with pytest.raises(SystemExit) as exc:
        config_from_args(["verify", "--tol", "limit"])
    assert exc.value.code == 2


def test_limit_command(capsys):
    code, out, _ = run_cli(capsys, "limit", "--lambda-im", "-2.5", "--p", "1", "--q", "1",
                           "--r-min", "0.9", "--r-max", "0.999", "--r-steps", "3", "--format", "json")
    assert code == EXIT_OK
    body = json.loads(out)
    assert body["relative_error"] < 1e-3
    assert [row[3] for row in body["rows"]][-2:] == ["extrapolated", "closed_form"]


def test_hardy_command(capsys):
    code, out, _ = run_cli(capsys, "hardy", "--lambda-im", "-1.5", "--r-min", "0.1", "--r-max", "0.99",
                           "--r-steps", "5", "--grid-size", "32", "--format", "json")
    assert code == EXIT_OK
    body = json.loads(out)
    assert body["lower_bound"] <= body["sup"] * (1 + 1e-3)
    assert body["sup"] <= body["upper_bound"]


def test_invert_command_writes_file(capsys, tmp_path):
    path = tmp_path / "inv.csv"
    code, out, _ = run_cli(capsys, "invert", "--lambda-im", "-2", "--r-min", "0.9", "--r-max", "0.99",
                           "--r-steps", "2", "--output", str(path))
    assert code == EXIT_OK and out == ""
    rows = read_csv(path.read_text())
    assert rows[0] == ["r", "error"]
    assert float(rows[2][1]) < float(rows[1][1])


def test_run_config_round_trip():
    cfg = config_from_args(["hardy", "--n", "3", "--p-exp", "3", "--tol", "limit=1e-4", "--timings"])
    again = RunConfig.from_json(cfg.to_json())
    assert again == cfg
    assert again.tolerances == {"limit": 1e-4} and again.timings


@pytest.fixture(scope="module")
def verify_runs(tmp_path_factory):
    d = tmp_path_factory.mktemp("verify")
    paths = [d / "a.json", d / "b.json"]
    codes = [main(["verify", "--n", "2", "--output", str(p)]) for p in paths]
    return codes, [p.read_bytes() for p in paths]


def test_verify_passes(verify_runs):
    codes, blobs = verify_runs
    assert codes == [0, 0]
    report = json.loads(blobs[0])
    assert report["all_pass"] and report["c_n"] == pytest.approx(1.0, abs=1e-12)
    assert report["radial_exponent"] == "q"
    assert report["contiguous_sign"] == "(a-b)"
    assert len(report["checks"]) == 11
    assert all(c["runtime_ms"] is None for c in report["checks"])


def test_verify_deterministic(verify_runs):
    _, blobs = verify_runs
    assert blobs[0] == blobs[1]


def test_verify_timings_and_csv(capsys):
    code, out, _ = run_cli(capsys, "verify", "--format", "csv", "--timings", "--tol", "inversion=1e-9")
    assert code == 1  # an impossible tolerance fails one check
    rows = read_csv(out)
    assert rows[0] == ["check_name", "residual", "tolerance", "pass", "runtime_ms"]
    by_name = {r[0]: r for r in rows[1:]}
    assert by_name["inversion"][3] == "False"
    assert all(float(r[4]) > 0 for r in rows[1:])
