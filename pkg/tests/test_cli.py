import json

import pytest

from abelhopf.cli import main, parse_omega


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_devlin_rows(capsys):
    code, out, _ = run(capsys, "devlin", "--m", "3", "--cap", "4")
    assert code == 0
    lines = out.splitlines()
    assert lines[3] == "n=4: 6 x1.x1.x1 | 3 x2.x1 | 2 x1.x2 | 1 x3"
    assert lines[4] == "n=5: 24 x1.x1.x1.x1 | 12 x2.x1.x1 | 8 x1.x2.x1 | 4 x3.x1 | 6 x1.x1.x2 | 3 x2.x2 | 2 x1.x3"


def test_devlin_json(capsys):
    code, out, _ = run(capsys, "devlin", "--m", "2", "--cap", "2", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["m"] == 2 and len(doc["pieces"]) == 3


@pytest.mark.parametrize("cmd", ["devlin", "abel", "verify"])
def test_m_below_two_is_a_usage_error(capsys, cmd):
    with pytest.raises(SystemExit) as exc:
        main([cmd, "--m", "1"])
    assert exc.value.code == 2
    assert "--m >= 2" in capsys.readouterr().err


def test_abel_routes_agree(capsys):
    code, out, err = run(capsys, "abel", "--m", "3", "--cap", "3")
    assert code == 0 and "[PASS]" in err
    bodies = {line.split(": ", 1)[1] for line in out.splitlines()}
    assert len(bodies) == 1


def test_antipode_examples(capsys):
    code, out, _ = run(capsys, "antipode", "--m", "3", "--root", "1", "--word", "x2")
    assert code == 0 and out.strip() == "-a[1;x2] + a[1;x1]·a[1;e]"
    code, out, _ = run(capsys, "antipode", "--m", "3", "--root", "2", "--word", "x3", "--alg", "both")
    assert code == 0 and out.splitlines()[-1] == "MATCH"


def test_antipode_all_json(capsys):
    code, out, _ = run(capsys, "antipode", "--all", "--grade", "3", "--alg", "both", "--format", "json")
    records = json.loads(out)
    assert code == 0 and records and all(r["verdict"] == "MATCH" for r in records)


@pytest.mark.parametrize("argv", [
    ["antipode", "--word", "x9"],
    ["antipode", "--m", "3", "--mbar", "4"],
    ["coproduct", "--root", "3"],
])
def test_hopf_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_coproduct_reduced(capsys):
    code, out, _ = run(capsys, "coproduct", "--root", "2", "--reduced")
    assert code == 0
    assert out.splitlines() == ["reduced coproduct of a[2;e]:", "  a[1;e] (x) a[1;e]"]


def test_bench_csv(capsys):
    code, out, _ = run(capsys, "bench", "--grade", "3", "--repetitions", "2")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "grade,generator_count,classical_ns,coderivation_ns,classical_median_ns,coderivation_median_ns"
    assert [int(line.split(",")[0]) for line in lines[1:]] == [1, 2, 3]
    assert all(int(x) > 0 for line in lines[1:] for x in line.split(",")[1:])


def test_bench_aborts_on_mismatch(capsys):
    code, out, err = run(capsys, "bench", "--grade", "2", "--inject-mismatch")
    assert code == 1 and out == "" and "disagree" in err


def test_fdb_text(capsys):
    code, out, _ = run(capsys, "fdb", "--n", "3")
    assert code == 0
    assert "h~3 = -h3 + 2·h2·h1 - h1^3" in out
    assert "  j=2: -h3 + 2·h2^2" in out


def test_verify_json_and_exit(capsys):
    code, out, err = run(capsys, "verify", "--suite", "fdb")
    doc = json.loads(out)
    assert code == 0 and doc["pass"] and doc["suite"] == "fdb"
    assert err.startswith("runtime")
    assert [c["name"] for c in doc["checks"]][:2] == ["mh-inverse n=5", "antipode-row"]


def test_verify_text(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "fixed-point", "--cap", "4", "--format", "text")
    assert code == 0 and out.splitlines()[-1] == "PASS"


def test_verify_deterministic(capsys):
    argv = ["verify", "--suite", "antipode-equiv", "--grade", "4", "--cap", "4", "--seed", "42"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_simulate_center(capsys, tmp_path):
    trace = tmp_path / "trace.csv"
    code, out, _ = run(capsys, "simulate", "--omega", "2pi", "--r", "0.1", "--steps", "2000", "--trace", str(trace))
    doc = json.loads(out)
    assert code == 0 and doc["pass"] and doc["max_error"] < 1e-6
    rows = trace.read_text().splitlines()
    assert rows[0] == "t,z" and len(rows) == 2002
    assert float(rows[1].split(",")[1]) == pytest.approx(0.1)


def test_simulate_precondition(capsys):
    code, out, _ = run(capsys, "simulate", "--preset", "ramp", "--omega", "1", "--steps", "100")
    doc = json.loads(out)
    assert code == 1 and not doc["pass"] and "PreconditionFailed" in doc["detail"]


@pytest.mark.parametrize("text, value", [("2pi", 6.283185307179586), ("pi", 3.141592653589793),
                                         ("0.5*pi", 1.5707963267948966), ("3", 3.0)])
def test_parse_omega(text, value):
    assert parse_omega(text) == pytest.approx(value)
