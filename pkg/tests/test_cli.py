import json
import subprocess
import sys

import pytest

from cyclohom.cli import main, parse_range
from cyclohom.suites import run_suite

DUAL = {
    "p": 3,
    "basis": ["1", "x"],
    "degrees": {"1": 0, "x": 0},
    "unit": "1",
    "mul": [["1", "1", "1", 1], ["1", "x", "x", 1], ["x", "1", "x", 1]],
}


@pytest.fixture
def dual_file(tmp_path):
    f = tmp_path / "dual.json"
    f.write_text(json.dumps(DUAL, indent=2))
    return str(f)


def run_json(capsys, *argv):
    code = main(list(argv) + ["--format", "json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_hh_of_dual_numbers(capsys, dual_file):
    code, rep = run_json(capsys, "hh", "--algebra", dual_file, "--degrees", "0..3")
    assert code == 0
    assert rep["schema"] == 1
    assert rep["result"]["table"] == {"0": 2, "1": 1, "2": 1, "3": 1}
    assert all(c["stabilized"] for c in rep["result"]["certificates"].values())


def test_negative_degree_window(capsys):
    code, rep = run_json(capsys, "hpbar", "--algebra", "field", "--degrees", "-2..2")
    assert code == 0
    assert rep["result"]["table"] == {"-2": 1, "-1": 0, "0": 1, "1": 0, "2": 1}


def test_tiny_budget_exits_2_with_bounds(capsys, dual_file):
    code, rep = run_json(capsys, "hpbar", "--algebra", dual_file, "--degrees", "-2..2",
                         "--max-stages", "4")
    assert code == 2
    assert rep["status"] == "not-stabilized"
    for n, v in rep["result"]["table"].items():
        assert isinstance(v, list) and len(v) == 2 and v[0] <= v[1]
        assert rep["result"]["certificates"][n]["bounds"] == v


def test_verify_morita(capsys):
    code = main(["verify", "morita", "--p", "3"])
    out = capsys.readouterr().out
    assert code == 0
    assert "PASS" in out and "FAIL" not in out


def test_parse_error_has_line_and_column(capsys, tmp_path):
    f = tmp_path / "broken.json"
    f.write_text('{\n  "p": 3,\n  "basis": ["1" "x"]\n}\n')
    assert main(["hh", "--algebra", str(f)]) == 3
    err = capsys.readouterr().err
    assert f"{f}:3:" in err


def test_unknown_label_is_located(capsys, tmp_path):
    data = dict(DUAL, mul=DUAL["mul"] + [["x", "zz", "x", 1]])
    f = tmp_path / "bad.json"
    f.write_text(json.dumps(data, indent=2))
    assert main(["hh", "--algebra", str(f)]) == 3
    err = capsys.readouterr().err
    assert "'zz'" in err and ":" in err


def test_invalid_algebra_exit_code(capsys, tmp_path):
    data = dict(DUAL)
    data.pop("unit")
    f = tmp_path / "nounit.json"
    f.write_text(json.dumps(data))
    assert main(["hc", "--algebra", str(f)]) == 3


def test_unknown_flag(capsys):
    assert main(["hh", "--algebra", "field", "--bogus"]) == 3
    assert "unrecognized" in capsys.readouterr().err


def test_missing_suite(capsys):
    assert main(["verify"]) == 3


def test_csv_output(capsys):
    assert main(["hc", "--algebra", "field", "--degrees", "0..2", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "section,key,value"
    assert lines[1:] == ["HC,0,1", "HC,1,0", "HC,2,1"]


def test_builder_with_prime(capsys):
    code, rep = run_json(capsys, "hh", "--algebra", "matrix:2", "--p", "5", "--degrees", "0..1")
    assert code == 0 and rep["config"]["p"] == 5
    assert rep["result"]["table"] == {"0": 1, "1": 0}


def test_tate_command(capsys):
    code, rep = run_json(capsys, "tate", "--p", "3", "--degrees", "-2..2")
    assert code == 0
    assert set(rep["result"]["table"]["tate"].values()) == {1}


def test_psi_command(capsys):
    code, rep = run_json(capsys, "psi", "--dims", "1,1", "--p", "3", "--seed", "2")
    assert code == 0 and rep["result"]["ok"]


def test_subdivide_command(capsys):
    code, rep = run_json(capsys, "subdivide", "--algebra", "dual", "--degrees", "0..2")
    assert code == 0 and rep["result"]["match"]


def test_conjugate_commands(capsys):
    code, rep = run_json(capsys, "conj-e1", "--algebra", "field", "--degrees", "-2..2")
    assert code == 0
    assert rep["result"]["totals"] == {"-2": 1, "-1": 0, "0": 1, "1": 0, "2": 1}
    code, rep = run_json(capsys, "conj-pages", "--algebra", "field", "--degrees", "-1..1")
    assert code == 0 and rep["result"]["totals"] == {"-1": 0, "0": 1, "1": 0}


def test_compare_command(capsys):
    code, rep = run_json(capsys, "compare", "--algebra", "field", "--degrees", "0..1")
    assert code == 0
    assert {m: rep["result"]["maps"][m]["iso"] for m in ("l", "r", "R")} == {"l": True, "r": True, "R": True}


def test_rows_cap_limits_stages(capsys):
    code, rep = run_json(capsys, "hpbar", "--algebra", "dual", "--degrees", "0..0", "--rows", "5")
    assert code == 2
    assert rep["config"]["rows"] == 5


def test_report_is_independent_of_thread_count(capsys):
    outs = []
    for t in ("1", "3"):
        assert main(["verify", "relations", "--p", "3", "--threads", t, "--format", "json"]) == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]


def test_tensor_suite_is_independent_of_thread_count():
    a = run_suite("tensor", seed=7, count=4, threads=1).as_dict()
    b = run_suite("tensor", seed=7, count=4, threads=2).as_dict()
    assert a == b and a["status"] == "pass"


def test_parse_range():
    assert parse_range("-2..2") == range(-2, 3)
    assert parse_range("3") == range(3, 4)
    with pytest.raises(Exception):
        parse_range("2..-2")


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "cyclohom", "hh", "--algebra", "field", "--degrees", "0..1"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert "wall-clock" in out.stderr and "wall-clock" not in out.stdout
