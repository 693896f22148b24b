import csv
import io
import json
import subprocess
import sys

import pytest

from fhstab.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_weights_row(capsys):
    code, out, _ = run(["weights", "--n", "4", "--delta", "2"], capsys)
    assert code == 0
    assert out.splitlines()[1] == "1,-3,4,-3,1"


def test_lower_bound_command_json(capsys):
    code, out, _ = run(["theorem1", "--d", "4", "--n", "12"], capsys)
    rep = json.loads(out)
    assert code == 0
    assert rep["holds"] is True
    assert rep["lhs"] >= rep["rhs"] > 0


@pytest.mark.parametrize(
    "argv,needle",
    [
        (["lebesgue", "--n", "10", "--d", "3", "--ntilde", "3", "--dtilde", "5"], "dtilde <= ntilde"),
        (["eval", "--n", "10", "--d", "3", "--ntilde", "10"], "ntilde < n"),
        (["weights", "--n", "3", "--delta", "5"], ""),
        (["experiment", "--n", "50", "--function", "cos"], "unknown test function"),
        (["experiment", "--n", "50", "--points", "10"], "eval_points"),
    ],
)
def test_validation_exit_code(argv, needle, capsys):
    code, out, err = run(argv, capsys)
    assert code == 2
    assert out == ""
    assert needle in err


def test_bad_flag_value_is_validation_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["surface", "--d", "x:y"])
    assert exc.value.code == 2


def test_lebesgue_csv(capsys):
    code, out, _ = run(["lebesgue", "--n", "50", "--d", "3", "--ntilde", "11", "--dtilde", "7", "--points", "401"], capsys)
    r = rows(out)
    assert r[0] == ["t", "lebesgue", "naive_bound"]
    assert len(r) == 402
    vals = [(float(a), float(b), float(c)) for a, b, c in r[1:]]
    assert max(v[1] for v in vals) > 10 * max(v[2] for v in vals)
    assert all(v[1] >= 1 - 1e-12 for v in vals)


def test_lebesgue_json_mirrors_report(capsys):
    _, out, _ = run(["lebesgue", "--n", "20", "--d", "2", "--format", "json"], capsys)
    rep = json.loads(out)
    assert {"constant", "argmax_t", "samples_per_interval", "naive_bound_constant", "log_bound"} <= set(rep)


def test_eval_csv(capsys):
    code, out, _ = run(["eval", "--n", "60", "--d", "4", "--function", "sin2t", "--points", "101"], capsys)
    r = rows(out)
    assert r[0] == ["t", "value", "reference", "abs_error"]
    assert max(float(x[3]) for x in r[1:]) < 1e-6
    _, out, _ = run(["eval", "--n", "60", "--delta", "3", "--function", "poly:3", "--points", "11"], capsys)
    assert max(float(x[3]) for x in rows(out)[1:]) < 1e-12


def test_instability_csv(capsys):
    _, out, _ = run(["instability", "--n", "50", "--d", "3", "--ntilde", "11", "--dtilde", "7", "--j", "2"], capsys)
    r = rows(out)
    assert r[0] == ["j", "t_lo", "t_hi"]
    assert len(r) == 2 and -0.918 <= float(r[1][1]) <= float(r[1][2]) <= -0.914


def test_experiment_rows(capsys):
    code, out, _ = run(["experiment", "--n", "60", "--d", "3,5", "--points", "1000", "--noise", "1e-9", "--seed", "4"], capsys)
    r = rows(out)
    assert code == 0
    assert r[0][:3] == ["max_error", "error_over_lebesgue", "lebesgue_constant"]
    assert len(r) == 3
    rec = dict(zip(r[0], r[2]))
    assert rec["d"] == "5" and rec["noise_amplitude"] == "1e-09" and rec["seed"] == "4"
    assert float(rec["error_over_lebesgue"]) == float(rec["max_error"]) / float(rec["lebesgue_constant"])


def test_surface_single_cell(capsys):
    _, out, _ = run(["surface", "--n", "30", "--d", "4", "--dtilde", "4"], capsys)
    r = rows(out)
    assert r[0] == ["d", "dtilde", "log10_lambda"]
    assert len(r) == 2


def test_surface_trends(capsys):
    ds = [3, 6, 10, 14, 20]
    values = ",".join(map(str, ds))
    _, out, _ = run(["surface", "--n", "100", "--d", values, "--dtilde", values, "--points", "32"], capsys)
    cells = {(int(d), int(dt)): float(v) for d, dt, v in rows(out)[1:]}
    for dt in ds:
        line = [cells[d, dt] for d in ds]
        assert cells[dt, dt] - min(line) <= 0.1
    assert max(cells[d, 3] for d in ds) <= max(cells[d, 20] for d in ds)


def test_outputs_are_byte_identical(tmp_path):
    argv = ["lebesgue", "--n", "30", "--d", "4", "--ntilde", "6", "--dtilde", "5", "--points", "301"]
    blobs = []
    for k in range(2):
        path = tmp_path / f"out{k}.csv"
        assert main(argv + ["--output", str(path)]) == 0
        blobs.append(path.read_bytes())
    assert blobs[0] == blobs[1]


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "fhstab", "weights", "--n", "4", "--delta", "2"], capture_output=True, text=True
    )
    assert res.returncode == 0
    assert "1,-3,4,-3,1" in res.stdout
