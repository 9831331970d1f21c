import io
import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from e6randers.cli import main
from e6randers.polyring import Polynomial
from e6randers.report import RunReport, load_schema

HERE = Path(__file__).parent
GOLDEN = HERE / "golden"
DATA = HERE / "data"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.mark.parametrize("space", ["e6-a4", "e6-a1"])
def test_derive_system_golden(space):
    code, out = run("derive-system", space)
    assert code == 0
    assert out.encode() == GOLDEN.joinpath(f"{space.replace('-', '_')}_system.txt").read_bytes()


def test_unknown_space_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["derive-system", "e7-a1"])
    assert exc.value.code == 1


def test_digits_zero_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["solve", "e6-a4", "--digits", "0"])
    assert exc.value.code == 1


def test_solve_e6_a4_text():
    code, out = run("solve", "e6-a4", "--digits", "10")
    assert code == 0
    lines = [l for l in out.splitlines() if l.lstrip().startswith("[")]
    assert len(lines) == 4
    for line, x2 in zip(lines, ["0.6513015810", "0.6770950751", "0.8288266917", "0.8641265950"]):
        assert f"x2={x2}" in line


def test_solve_e6_a1_json_reports_count_mismatch(capsys):
    code, out = run("solve", "e6-a1", "--digits", "10", "--json")
    doc = json.loads(out)
    jsonschema.validate(doc, load_schema())
    assert doc["expected_solutions"] == 2
    assert doc["found_solutions"] == 4
    assert code == 4
    assert "expected 2" in capsys.readouterr().err


@pytest.mark.parametrize("space", ["e6-a4", "e6-a1"])
def test_json_schema_and_round_trip(space):
    _, out = run("solve", space, "--json")
    doc = json.loads(out)
    jsonschema.validate(doc, load_schema())
    assert RunReport.from_json(out).to_json() == out
    assert doc["digits"] == 12
    assert all(len(v.split(".")[1]) == 12 for s in doc["solutions"] for v in s["params"].values())


def test_timings_are_opt_in():
    _, out = run("solve", "e6-a4", "--json", "--timings")
    doc = json.loads(out)
    jsonschema.validate(doc, load_schema())
    assert "pipeline_seconds" in doc["timings"]
    _, out = run("solve", "e6-a4", "--json")
    assert "timings" not in json.loads(out)


def test_solve_is_deterministic():
    assert run("solve", "e6-a4", "--json") == run("solve", "e6-a4", "--json")


def test_groebner_twisted_cubic():
    code, out = run("groebner", str(DATA / "twisted_cubic.txt"), "--order", "lex:x,y,z")
    assert code == 0
    assert out == GOLDEN.joinpath("twisted_cubic_gb.txt").read_text()


def test_groebner_saturated_system_contains_eliminant():
    code, out = run("groebner", str(DATA / "e6_a4_saturated.txt"), "--order", "lex:z,u2,x1,x2")
    assert code == 0
    last = out.splitlines()[-1]
    assert last.startswith("x2^8 - 26467196/8724405*x2^7")
    # scaled by the reference leading coefficient the last element is the reference eliminant
    ring = ("z", "u2", "x1", "x2")
    p = Polynomial.parse(last, ring).scale(27263765625)
    expected = Polynomial.parse(GOLDEN.joinpath("e6_a4_eliminant_printed.txt").read_text().strip(), ring)
    assert p == expected


def test_groebner_empty_file(tmp_path):
    f = tmp_path / "empty.txt"
    f.write_text("# nothing here\n\n")
    assert run("groebner", str(f))[0] == 1


def test_groebner_parse_error(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("x + y\nx ^ ^ 2\n")
    assert run("groebner", str(f))[0] == 2
    assert "line 2" in capsys.readouterr().err


def test_groebner_order_unknown_variable(tmp_path):
    f = tmp_path / "p.txt"
    f.write_text("x + y\n")
    assert run("groebner", str(f), "--order", "lex:x,y,w")[0] == 1
    # a variable missing from the order is a parse error on that variable
    assert run("groebner", str(f), "--order", "lex:x")[0] == 2


def test_groebner_budget_is_pipeline_failure(monkeypatch):
    monkeypatch.setenv("E6RANDERS_MAX_PAIRS", "1")
    assert run("groebner", str(DATA / "twisted_cubic.txt"))[0] == 3


def test_groebner_missing_file():
    assert run("groebner", "/nonexistent/file.txt")[0] == 1


def test_roots_poly():
    code, out = run("roots", "--poly", "x^2 - 2", "--digits", "12")
    assert code == 0
    assert "-1.414213562373" in out and "\n  1.414213562373" in out


def test_roots_space():
    code, out = run("roots", "--space", "e6-a4", "--digits", "10")
    assert code == 0
    assert "distinct real roots: 4" in out


def test_roots_not_univariate():
    assert run("roots", "--poly", "x*y - 1")[0] == 1


def test_verify_all_ones_fails():
    code, out = run("verify", "e6-a4", "--params", "u2=1,x1=1,x2=1")
    assert code == 4
    assert "max residual: 1.50e-1" in out


def test_verify_certified_tuple_passes():
    code, out = run(
        "verify", "e6-a4", "--params", "u2=0.114192185579,x1=1.200678541438,x2=0.651301581020", "--tol", "1e-10"
    )
    assert code == 0 and "pass" in out


def test_verify_bad_params():
    assert run("verify", "e6-a4", "--params", "u1=1,x1=1,x2=1")[0] == 1
    assert run("verify", "e6-a4", "--params", "u2=-1,x1=1,x2=1")[0] == 1


def test_randers_half_wind():
    code, out = run("randers", "e6-a4", "--solution", "0", "--w0", "0.5", "--y", "h0:1")
    assert code == 0
    assert "F(y): 0.666666666667" in out
    assert "F(-y): 2.000000000000" in out
    assert "non-Riemannian" in out


def test_randers_riemannian():
    code, out = run("randers", "e6-a4", "--solution", "0", "--w0", "0")
    assert code == 0
    assert "\nRiemannian\n" in out


def test_randers_inadmissible():
    assert run("randers", "e6-a1", "--solution", "1", "--w0", "1.0")[0] == 1
    assert run("randers", "e6-a1", "--solution", "1", "--w0", "0.999")[0] == 0


def test_randers_bad_inputs():
    assert run("randers", "e6-a4", "--solution", "9")[0] == 1
    assert run("randers", "e6-a4", "--y", "q7:1")[0] == 1
    assert run("randers", "e6-a4", "--y", "h0:1,2")[0] == 1


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "e6randers", "derive-system", "e6-a4"], capture_output=True, text=True, check=True
    )
    assert proc.stdout == GOLDEN.joinpath("e6_a4_system.txt").read_text()


def test_stdin_input():
    proc = subprocess.run(
        [sys.executable, "-m", "e6randers", "groebner", "-", "--order", "lex:x,y,z"],
        input=DATA.joinpath("twisted_cubic.txt").read_text(),
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == GOLDEN.joinpath("twisted_cubic_gb.txt").read_text()
