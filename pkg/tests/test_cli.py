import json
import subprocess
import sys

import jsonschema
import pytest

from uqsl3.cli import output_schema, run

CORPUS = [
    (["nf", "--algebra", "Uplus", "E2*E1"], 0),
    (["nf", "--algebra", "UcheckGE0", "E1*K1"], 0),
    (["nf", "--algebra", "Q3", "T2*T1^-1"], 0),
    (["mul", "E1", "E2"], 0),
    (["mul", "--algebra", "A3", "E2", "E1^-1"], 0),
    (["relcheck", "--algebra", "Uplus"], 0),
    (["relcheck", "--algebra", "UcheckGE0"], 0),
    (["relcheck", "--algebra", "UW"], 0),
    (["coproduct", "E3"], 0),
    (["coproduct", "--algebra", "UW", "W1*E2"], 0),
    (["antipode", "K1*E2"], 0),
    (["hopf-axioms", "--bound", "1"], 0),
    (["hopf-axioms", "--bound", "1", "--rejected-antipode"], 1),
    (["aut", "check", "--a", "1", "--b", "0", "--c", "0", "--d", "-1"], 0),
    (["aut", "check", "--a", "1"], 1),
    (["aut", "check", "--swap"], 1),
    (["aut", "hopf-check", "--a", "1", "--b", "0", "--c", "0", "--d", "-1"], 1),
    (["aut", "hopf-check", "--b1", "r", "--b2", "2"], 0),
    (["aut", "hopf-check", "--a1", "2"], 1),
    (["aut", "classify", "--bound", "1"], 0),
    (["aut", "compose", "a=1,d=-1,b1=r", "a=-1,d=1,a1=s"], 0),
    (["der", "apply", "--inner", "E3", "E1"], 0),
    (["der", "apply", "--e1", "E1", "E1*E2"], 0),
    (["der", "decompose", "--inner", "E1*E2", "--bound", "3"], 0),
    (["der", "decompose", "--e1", "E1", "--e2", "E2"], 0),
    (["der", "decompose", "--inner", "E1*E2*E2*E1", "--bound", "1"], 1),
    (["der", "center", "--bound", "2"], 0),
    (["der", "center", "--algebra", "Q3", "--bound", "1"], 0),
    (["der", "embed"], 0),
    (["der", "embed", "E2"], 0),
    (["reproduce", "prop3.1"], 0),
    (["reproduce", "thm3.8"], 0),
]

USAGE = [
    ["nf", "--algebra", "sl4", "E1"],
    ["nf", "E1*"],
    ["nf", "E3^-1"],
    ["nf", "E1 E2"],
    ["aut", "check", "--a", "x"],
    ["aut", "check", "--b1", "0"],
    ["aut", "compose", "a=1", "a=1"],
    ["der", "apply", "--e1", "E2", "E1"],
    ["der", "apply", "--inner", "E1", "--e1", "E1", "E2"],
    ["der", "center", "--algebra", "UW"],
    ["reproduce", "thm9.9"],
    ["frobnicate"],
    [],
]


def call(argv, capsys):
    code = run(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_normal_form_text(capsys):
    code, out, _ = call(["nf", "--algebra", "Uplus", "E2*E1"], capsys)
    assert code == 0 and out.strip() == "s^-1*E1*E2 - s^-1*E3"


def test_aut_check_valid(capsys):
    code, out, _ = call(["aut", "check", "--a", "1", "--b", "0", "--c", "0", "--d", "-1"], capsys)
    assert code == 0 and out.strip() == "valid"


def test_aut_hopf_check_invalid(capsys):
    code, out, _ = call(["aut", "hopf-check", "--a", "1", "--b", "0", "--c", "0", "--d", "-1"], capsys)
    assert code == 1 and out.strip() == "invalid: coproduct mismatch on E1"


def test_aut_json_report(capsys):
    code, out, _ = call(["aut", "check", "--a", "1", "--format", "json"], capsys)
    data = json.loads(out)
    assert code == 1
    assert data["valid"] is False
    assert data["constraints"] == {"b_eq_c": True, "sum_zero": False}
    assert data["witness"].startswith("relation serre1")


def test_decompose_text(capsys):
    code, out, _ = call(["der", "decompose", "--inner", "E1*E2", "--bound", "3"], capsys)
    assert code == 0
    assert out.splitlines() == ["t = E1*E2", "mu1 = 0", "mu2 = 0"]


@pytest.mark.parametrize("argv", USAGE, ids=lambda a: " ".join(a) or "empty")
def test_usage_errors_exit_two(argv, capsys):
    code, out, err = call(argv, capsys)
    assert code == 2
    assert out == ""
    assert err


@pytest.mark.parametrize("argv,expected", CORPUS, ids=lambda a: " ".join(a) if isinstance(a, list) else str(a))
def test_corpus_json_schema_and_verdicts(argv, expected, capsys):
    schema = output_schema()
    code_text, out_text, _ = call(argv, capsys)
    code_json, out_json, _ = call(argv + ["--format", "json"], capsys)
    assert code_text == code_json == expected
    data = json.loads(out_json)
    jsonschema.validate(data, schema)
    assert out_text.strip()


def test_schema_is_valid_draft():
    jsonschema.Draft202012Validator.check_schema(output_schema())


def test_schema_rejects_malformed_report():
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate({"command": "aut check", "valid": "yes"}, output_schema())


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "uqsl3", "nf", "E2*E1"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "s^-1*E1*E2 - s^-1*E3"
