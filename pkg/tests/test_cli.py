"""Instance files and the command-line surface."""

import json

import pytest

from charpk.cli import main
from charpk.errors import InstanceFileError
from charpk.instancefile import InstanceFile


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


DPAC3 = """
variety V { vars: [x]; over: "Fp(3;t)"; gens: [] }
variety W { vars: [x, u]; over: "Fp(3;t)"; gens: ["u - 1"] }
derivation { over: "Fp(3;t)"; images: {t: "1"} }
functions { items: ["x"] }
bound { value: 1 }
"""

DPAC2 = """
variety V { vars: [x]; over: "Fp(2;t)"; gens: [] }
variety W { vars: [x, u]; over: "Fp(2;t)"; gens: ["u*u - x"] }
derivation { over: "Fp(2;t)"; images: {t: "1"} }
"""

CIRCLE7 = """
variety { vars: [x, y]; over: "Fp(7;)"; gens: ["x^2+y^2-1"] }
avoid { items: ["y"] }
"""


def test_instancefile_parser_basics():
    text = """
    # a comment
    variety V { vars: [x, u]; over: "GF(5,1)"; gens: ["x^2 - u"] }
    bound { value: 3 }
    """
    inst = InstanceFile.parse(text)
    blk = inst.require("variety", "V")
    assert blk.require("vars") == ["x", "u"]
    assert blk.require("over") == "GF(5,1)"
    assert int(inst.require("bound").require("value")) == 3
    assert inst.find("missing") is None
    with pytest.raises(InstanceFileError):
        inst.require("missing")
    with pytest.raises(InstanceFileError):
        blk.require("nokey")


def test_instancefile_rejects_malformed_input():
    for bad in ["variety {", "variety { vars: }", "{}", 'x { a: "unterminated }']:
        with pytest.raises(InstanceFileError):
            InstanceFile.parse(bad)


def test_cli_validate_and_search_dpac(tmp_path, capsys):
    path = _write(tmp_path, "good.inst", DPAC3)
    assert main(["axiom", "validate-dpac", path]) == 0
    out = capsys.readouterr().out
    assert "status: valid-instance" in out
    assert main(["axiom", "search-dpac", path]) == 0
    out = capsys.readouterr().out
    assert "witness: (t)" in out


def test_cli_invalid_instance_exit_code(tmp_path, capsys):
    path = _write(tmp_path, "bad.inst", DPAC2)
    assert main(["axiom", "validate-dpac", path]) == 1
    out = capsys.readouterr().out
    assert "E projects dominantly on W" in out


def test_cli_json_output_is_deterministic(tmp_path, capsys):
    path = _write(tmp_path, "good.inst", DPAC3)
    assert main(["axiom", "validate-dpac", path, "--json"]) == 0
    first = capsys.readouterr().out
    assert main(["axiom", "validate-dpac", path, "--json"]) == 0
    second = capsys.readouterr().out
    assert first == second
    payload = json.loads(first)
    assert payload["status"] == "valid-instance"
    assert [b["verdict"] for b in payload["bullets"]] == ["pass"] * 5


def test_cli_pac_open_circle(tmp_path, capsys):
    path = _write(tmp_path, "circle.inst", CIRCLE7)
    assert main(["axiom", "pac-open", path]) == 0
    out = capsys.readouterr().out
    assert "witness-found" in out


def test_cli_variety_points(tmp_path, capsys):
    path = _write(tmp_path, "circle.inst", CIRCLE7)
    assert main(["variety", "points", path, "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["count"] == 8


def test_cli_poly_subcommands(tmp_path, capsys):
    path = _write(tmp_path, "ideal.inst", """
ideal { vars: [x, y, z]; over: "GF(7,1)"; gens: ["x - y^2", "z - y^3"] }
""")
    assert main(["poly", "dim", path, "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["dimension"] == 1
    assert main(["poly", "member", path, "--poly", "x*z - y^5"]) == 0
    capsys.readouterr()
    assert main(["poly", "member", path, "--poly", "x - 1"]) == 1
    capsys.readouterr()
    assert main(["poly", "gb", path, "--order", "lex"]) == 0
    assert capsys.readouterr().out.strip()


def test_cli_field_and_errors(tmp_path, capsys):
    assert main(["field", "GF(2,4)"]) == 0
    capsys.readouterr()
    assert main(["field", "GF(3)"]) == 2  # malformed spec
    capsys.readouterr()
    assert main(["axiom", "validate-dpac", str(tmp_path / "nope.inst")]) == 2
    capsys.readouterr()


def test_cli_action_probe_and_galois(tmp_path, capsys):
    probe = _write(tmp_path, "probe.inst", """
probe { subfield: "GF(2,1)"; field: "GF(2,2)"; thetas: ["x^3+x+1"] }
""")
    assert main(["action", "probe", probe]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out and "orbits [3]" in out
    gal = _write(tmp_path, "galois.inst", """
galois { field: "GF(2,4)"; subfield: "GF(2,1)" }
""")
    assert main(["action", "galois", gal, "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["order"] == 4


def test_cli_formula_correct(tmp_path, capsys):
    path = _write(tmp_path, "formula.inst", """
formula { text: "D(l0(D(l0(x)) + D(x))) + x = 0"; language: "lambda0_D";
          over: "Fp(2;t)"; vars: [x] }
derivation { over: "Fp(2;t)"; images: {t: "1"} }
witness { x: "t" }
""")
    assert main(["formula", "correct", path, "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["formula"] == ("(((y1 * y1) - D(x)) = 0 & "
                                  "(D(y1) + x) = 0)")
    assert payload["fixed_terms"] == ["x"]


def test_cli_formula_unravel(tmp_path, capsys):
    path = _write(tmp_path, "unravel.inst", """
formula { text: "lam(1,1; t; x) = t"; language: "lambda";
          over: "Fp(2;t)"; vars: [x] }
witness { x: "t^3 + t^2" }
""")
    assert main(["formula", "unravel", path, "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["names"][0] == "x"
    assert payload["conditions"]


def test_cli_diff_and_bop(tmp_path, capsys):
    diff = _write(tmp_path, "diff.inst", """
variety V { vars: [x]; over: "Fp(3;t)"; gens: ["x^2 - t"] }
derivation { over: "Fp(3;t)"; images: {t: "1"} }
""")
    assert main(["diff", "prolong", diff, "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["vars"] == ["x", "u"]
    assert sorted(payload["generators"]) == ["2*x*u + 2", "x^2 + (2*t)"]
    bop = _write(tmp_path, "bop.inst", """
bop { n: 2; over: "Fp(3;t)"; maps: [id, D];
      generators: ["t", "t+1", "t^2"] }
derivation { over: "Fp(3;t)"; images: {t: "1"} }
""")
    assert main(["axiom", "bop-check", bop]) == 0


def test_cli_ppower_exit_codes(tmp_path, capsys):
    sq = _write(tmp_path, "sq.inst", """
variety { vars: [x]; over: "Fp(2;t)"; gens: [] }
function { num: "x^2" }
""")
    assert main(["variety", "ppower", sq]) == 1  # a root exists
    capsys.readouterr()
    lin = _write(tmp_path, "lin.inst", """
variety { vars: [x]; over: "Fp(2;t)"; gens: [] }
function { num: "x" }
""")
    assert main(["variety", "ppower", lin]) == 0  # no p-th root
    capsys.readouterr()
