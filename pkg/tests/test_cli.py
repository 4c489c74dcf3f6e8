import io
import json
import re
import shlex
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from acfgeom import cli

README = Path(__file__).resolve().parents[1] / "README.md"


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(argv, out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def readme_examples():
    text = README.read_text()
    cases = []
    for block in re.findall(r"```console\n(.*?)```", text, re.S):
        lines = block.rstrip("\n").split("\n")
        assert lines[0].startswith("$ acfgeom ")
        cases.append((lines[0][2:], "\n".join(lines[1:]) + "\n"))
    return cases


EXAMPLES = readme_examples()


def test_readme_has_examples():
    assert len(EXAMPLES) >= 10


@pytest.mark.parametrize("cmd, expected", EXAMPLES, ids=[c for c, _ in EXAMPLES])
def test_readme_golden(cmd, expected):
    code, out, _ = run(shlex.split(cmd)[1:])
    assert code == 0
    assert out == expected


def test_readme_library_block():
    block = re.search(r"```python\n(.*?)```", README.read_text(), re.S).group(1)
    env = {}
    exec(block, env)
    assert str(env["qe"](env["parse"]("E y. x*y = 1"))) == "x != 0"


def validate(doc):
    jsonschema.validate(doc, cli.schema())


@pytest.mark.parametrize("argv, code", [
    (["decide", "A x. E y. y^2 = x"], 0),
    (["decide", "A x. x = 0"], 1),
    (["qe", "E y. x*y = 1"], 0),
    (["infinite", "--vars", "y", "a*y = 0"], 0),
    (["infinite", "--vars", "x", "x^2 = 1"], 1),
    (["dim", "--vars", "x,y", "x*y = 1"], 0),
    (["bound", "--params", "a", "--fiber", "y", "a*y = 1"], 0),
    (["dichotomy", "--q", "5", "--set", "0,1"], 0),
    (["check", "trick", "--q-list", "2,3"], 0),
    (["check", "perfect", "--p", "2", "--deg", "1"], 0),
    (["check", "qe", "--primes", "3", "--count", "5"], 0),
    (["decide", "E x. x^2 ="], 2),
    (["decide", "x = 0"], 2),
    (["--budget", "3", "qe", "E z. ((a*z = 1 | b*z = 1) & (c*z = 1 | d*z = 1))"], 3),
])
def test_json_documents_validate(argv, code):
    got, out, _ = run(["--json", "--trace"] + argv)
    assert got == code
    doc = json.loads(out)
    validate(doc)
    assert doc["exit_code"] == code
    assert (doc["result"] is None) == ("error" in doc)


def test_json_dim_certificate():
    _, out, _ = run(["dim", "--json", "--vars", "x,y", "x*y = 1"])
    doc = json.loads(out)
    assert doc["result"] == 1 and doc["certificate"]["dim"] == 1
    assert doc["characteristic"] == 0 and doc["input"] == "x*y = 1"


def test_json_parse_error_position():
    _, out, _ = run(["--json", "decide", "x = 1 &\n (y = "])
    err = json.loads(out)["error"]
    assert err["kind"] == "parse" and (err["line"], err["column"]) == (2, 7)


def test_parse_error_caret():
    code, out, err = run(["decide", "E x. x^2 = "])
    assert code == 2 and not out
    assert "line 1, column 12" in err
    assert err.rstrip("\n").endswith(" " * 13 + "^")


def test_flags_after_command():
    assert run(["decide", "--char", "2", "E y. (y^2 + 1 = 0 & y = 1)"])[:2] == (0, "true\n")
    assert run(["--char", "2", "decide", "E y. (y^2 + 1 = 0 & y = 1)"])[:2] == (0, "true\n")


def test_bad_characteristic_is_usage_error():
    assert run(["--char", "4", "decide", "true"])[0] == 2
    assert run(["decide"])[0] == 2
    assert run(["frobnicate"])[0] == 2


def test_overlapping_variable_lists():
    assert run(["bound", "--params", "a,y", "--fiber", "y", "y = a"])[0] == 2
    assert run(["dim", "--vars", "x,x", "x = 0"])[0] == 2


def test_file_indirection(tmp_path):
    src = tmp_path / "f.txt"
    src.write_text("A a.\n  (a != 0 -> E y. a*y = 1)\n")
    assert run(["decide", f"@{src}"])[:2] == (0, "true\n")
    assert run(["decide", f"@{tmp_path / 'missing.txt'}"])[0] == 2


def test_enumeration_cap_exit_code():
    code, _, err = run(["check", "perfect", "--p", "2", "--deg", "9"])
    assert code == 3 and "cap of" in err


def test_trace_goes_to_stderr():
    code, out, err = run(["--trace", "qe", "E y. x*y = 1"])
    assert out == "x != 0\n" and err.startswith("trace: eliminate y")


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("ACFGEOM_SEED", "17")
    _, out, _ = run(["--json", "check", "qe", "--primes", "2", "--count", "3"])
    assert json.loads(out)["input"]["seed"] == 17


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "acfgeom", "decide", "E x. x^2 = 2"],
                       capture_output=True, text=True)
    assert (r.returncode, r.stdout) == (0, "true\n")
