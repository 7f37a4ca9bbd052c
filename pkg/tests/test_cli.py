import csv
import io
import json

import pytest

from crosspoly import cli


def run(capsysbinary, *argv):
    code = cli.run(list(argv))
    out = capsysbinary.readouterr()
    return code, out.out, out.err.decode()


def test_delannoy_row(capsysbinary):
    code, out, _ = run(capsysbinary, "delannoy", "--d", "2", "--n", "2")
    assert code == 0
    lines = out.decode().split("\n")
    assert lines[0] == "subcommand,d,n,value,provenance,guards"
    assert lines[1] == "delannoy,2,2,13,exact,default"
    assert lines[2:] == [""]


def test_estimate_json(capsysbinary):
    code, out, _ = run(capsysbinary, "estimate", "--which", "uniform", "--d", "100", "--n", "50",
                       "--format", "json")
    assert code == 0
    row = json.loads(out)[0]
    assert isinstance(row["log_estimate"], float)
    assert isinstance(row["exact"], str) and int(row["exact"]) > 2**64


def test_verify_counts(capsysbinary):
    code, out, _ = run(capsysbinary, "verify", "--suite", "counts", "--max-d", "5", "--max-n", "7")
    assert code == 0
    assert b"FAIL" not in out


def test_verify_failure_exit_code(capsysbinary, monkeypatch):
    from crosspoly import verify as vf

    def broken(max_d, max_n):
        yield vf.Check("counts", "broken", False, "forced")

    monkeypatch.setitem(vf.SUITES, "counts", broken)
    code, out, _ = run(capsysbinary, "verify", "--suite", "counts")
    assert code == 3 and b"FAIL" in out


@pytest.mark.parametrize("argv", [
    ["delannoy", "--d", "2", "--n", "2", "--bogus"],
    ["delannoy", "--d", "1:x", "--n", "2"],
    ["delannoy", "--d", "5:1", "--n", "2"],
    ["delannoy", "--d", "2"],
    ["nonsense"],
    ["estimate", "--which", "uniform", "--d", "3", "--n", "5"],
])
def test_usage_errors(capsysbinary, argv):
    code, _, err = run(capsysbinary, *argv)
    assert code == 1 and err


def test_guard_violation(capsysbinary):
    code, _, err = run(capsysbinary, "ehrhart", "--d", "100")
    assert code == 2 and "ehrhart_dim" in err
    code, out, _ = run(capsysbinary, "ehrhart", "--d", "65", "--unsafe-raise-guard")
    assert code == 0 and out.decode().splitlines()[1].endswith(",exact,raised")


def test_ranges_and_n_of_d():
    assert cli.parse_int_range("1:7:3,2,4") == [1, 4, 7, 2]
    from fractions import Fraction
    assert [cli.n_of_d("sqrt", d, Fraction(1)) for d in (15, 16, 17)] == [3, 4, 4]
    assert cli.n_of_d("pow32", 4, Fraction(1)) == 8
    assert cli.n_of_d("linear", 7, Fraction(1, 2)) == 3
    assert cli.n_of_d("square", 3, Fraction(2)) == 18


def test_emit_contract():
    assert cli.emit([], "csv", ["a", "b"]) == b"a,b\n"
    assert cli.emit([], "json") == b"[]\n"
    rows = [{"x": 10**30, "y": 0.1, "z": float("inf"), "w": "a,b"}]
    text = cli.emit(rows, "csv").decode()
    assert text == 'x,y,z,w\n1000000000000000000000000000000,0.10000000000000001,inf,"a,b"\n'
    back = json.loads(cli.emit(rows, "json"))
    assert back == [{"x": str(10**30), "y": 0.1, "z": "inf", "w": "a,b"}]
    with pytest.raises(ValueError):
        cli.emit([{"a": 1}, {"b": 2}], "csv")


def test_json_round_trip():
    rows = cli.run_sweep("estimate", [{"d": d, "n": 3, "which": "binomial"} for d in (6, 10)])
    blob = cli.emit(rows, "json")
    assert cli.emit(json.loads(blob), "json") == blob
    parsed = list(csv.DictReader(io.StringIO(cli.emit(rows, "csv").decode())))
    assert [r["exact"] for r in parsed] == [str(r["exact"]) for r in rows]


@pytest.mark.parametrize("argv", [
    ["multiplier", "--d", "2:3", "--n", "3:4", "--samples", "2", "--seed", "9"],
    ["clt-tail", "--d-star", "5,8", "--samples", "20000", "--seed", "4"],
    ["norm-probe", "--d", "1,2", "--radii", "range:3", "--seed", "2", "--trials", "1"],
    ["mult-scan", "--d", "2,3", "--n-of-d", "linear", "--scale", "8", "--samples", "30", "--seed", "1"],
])
def test_determinism_across_jobs(tmp_path, monkeypatch, argv):
    monkeypatch.setenv(cli.OUTPUT_DIR_ENV, str(tmp_path))
    outputs = []
    for i, jobs in enumerate(("1", "1", "3")):
        for fmt in ("csv", "json"):
            assert cli.run(argv + ["--jobs", jobs, "--format", fmt, "-o", f"{i}.{fmt}"]) == 0
        outputs.append(((tmp_path / f"{i}.csv").read_bytes(), (tmp_path / f"{i}.json").read_bytes()))
    assert outputs[0] == outputs[1] == outputs[2]
    assert b"\r" not in outputs[0][0]


def test_output_dir_env(tmp_path, monkeypatch):
    monkeypatch.setenv(cli.OUTPUT_DIR_ENV, str(tmp_path))
    assert cli.run(["sphere", "--d", "3", "--n", "2", "-o", "sub/s.csv"]) == 0
    assert (tmp_path / "sub" / "s.csv").read_text().splitlines()[1] == "sphere,3,2,18,exact,default"


def test_unwritable_output(tmp_path, capsys):
    target = tmp_path / "file"
    target.write_text("x")
    assert cli.run(["sphere", "--d", "3", "--n", "2", "-o", str(target / "out.csv")]) == 1
    assert str(target) in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["shell", "--d", "4", "--n", "3", "--s", "0:3"],
    ["bounded", "--d", "3", "--n", "4", "--m", "1,2"],
    ["ehrhart", "--d", "1:3"],
    ["bseries", "--order", "4"],
    ["bseries", "--alpha", "0.1,-0.1"],
    ["contour", "--d", "5", "--n", "0:3", "--kernel", "sphere"],
    ["saddle-split", "--d", "10", "--n", "5", "--delta", "0.1,1"],
    ["average", "--d", "2", "--R", "0:2", "--p", "1,2,inf"],
    ["maximal", "--d", "1", "--radii", "dyadic:4"],
    ["norm-probe", "--d", "1", "--radii", "interval:1:3", "--curve"],
    ["multiplier", "--d", "2", "--n", "3", "--xi", "0.1,0.2", "--direct"],
    ["beta", "--d", "2", "--profile", "1", "--samples", "2"],
    ["deficit", "--d", "6", "--n", "4", "--K", "1", "--a", "0:2", "--surface"],
    ["deficit", "--d", "16", "--n-of-d", "sqrt", "--K", "2"],
    ["few-ones", "--d", "818", "--n", "2"],
    ["large-coord", "--d", "20", "--n", "12", "--K", "1,2"],
    ["shell-ratio", "--d", "50", "--n", "60", "--C", "1", "--l", "1:2"],
    ["second-moment", "--d", "1:3", "--n-of-d", "linear", "--scale", "20"],
    ["estimate", "--which", "volume", "--d", "3", "--n", "6:8"],
    ["estimate", "--which", "pw", "--d", "20", "--n", "20"],
])
def test_every_subcommand(capsysbinary, argv):
    code, out, err = run(capsysbinary, *argv)
    assert code == 0, err
    reader = list(csv.reader(io.StringIO(out.decode())))
    header, body = reader[0], reader[1:]
    assert body and all(len(r) == len(header) for r in body)
    assert header[0] == "subcommand" and header[-2:] == ["provenance", "guards"]
    assert all(r[-2] in cli.PROVENANCE for r in body)
