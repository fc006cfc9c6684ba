import json
import subprocess
import sys

import pytest

from nhopf.cli import main
from nhopf.realization import canonical_alphabet

from conftest import S_E

SIG = ["--sig", "a:1,b:2,c:3"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_coproduct_as(capsys):
    code, out, _ = run(capsys, "--as", "coproduct", "alpha_4")
    assert code == 0
    assert out == ("E(ε) ⊗ E(alpha_4) + E(alpha_2) ⊗ E(alpha_2 alpha_2) + 2 E(alpha_2) ⊗ E(alpha_3)"
                   " + 3 E(alpha_3) ⊗ E(alpha_2) + E(alpha_4) ⊗ E(ε)\n")


def test_options_after_the_subcommand(capsys):
    a = run(capsys, "--as", "coproduct", "alpha_3")
    b = run(capsys, "coproduct", "alpha_3", "--as")
    assert a == b and a[0] == 0


def test_product_in_each_basis(capsys):
    code, out, _ = run(capsys, *SIG, "product", "a[*]", "b[*,*]")
    assert (code, out) == (0, "E(a[*] b[*,*])\n")
    code, out, _ = run(capsys, *SIG, "--basis", "H", "product", "c[*,*,*]", "a[*] b[*,*]")
    assert (code, out) == (0, "H(c[a[*],b[*,*],*])\n")
    code, out, _ = run(capsys, *SIG, "--basis", "F", "--format", "json", "product", "c[*,*,*]", "a[*] b[*,*]")
    data = json.loads(out)
    assert code == 0 and data["basis"] == "F" and len(data["terms"]) == 7


def test_convert(capsys):
    code, out, _ = run(capsys, *SIG, "--basis", "F", "convert", "c[*,a[*],*] b[*,*]", "--to", "E")
    assert code == 0
    assert out.strip() == ("E(c[*,a[*],*] b[*,*]) - E(c[*,a[*],b[*,*]]) - E(c[a[*],*,*] b[*,*])"
                           " + E(c[a[*],*,b[*,*]])")


def test_antipode_and_mas(capsys):
    code, out, _ = run(capsys, *SIG, "antipode", "a[*]")
    assert (code, out) == (0, "-E(a[*])\n")
    code, out, _ = run(capsys, "--sig", "a:2", "--mas", "coproduct", "{a}")
    assert (code, out) == (0, "E(ε) ⊗ E({a}) + E({a}) ⊗ E(ε)\n")


def test_lattice_text_json_dot(capsys):
    code, out, _ = run(capsys, *SIG, "lattice", "--word", "cab",
                       "--join", "c[*,*,*] a[b[*,*]]", "c[*,a[*],*] b[*,*]")
    assert code == 0
    assert "elements: 11" in out and "cover pairs: 14" in out
    assert "join: c[*,a[b[*,*]],*]" in out
    code, out, _ = run(capsys, *SIG, "--format", "json", "lattice", "--word", "c a b")
    data = json.loads(out)
    assert len(data["nodes"]) == 11 and data["word_class_size"] == 11
    code, out, _ = run(capsys, *SIG, "--format", "dot", "lattice", "--word", "cab")
    assert code == 0 and out.startswith("// format_version 1\n") and out.count("->") == 14


def test_realize_with_alphabets(capsys, tmp_path):
    code, out, _ = run(capsys, *SIG, "--alphabet", "levels:3", "realize", "b[*,a[*]]")
    assert (code, out) == (0, "1 2 + 1 3 + 2 3\n")
    path = tmp_path / "canon.json"
    canonical_alphabet(S_E, 3, 2).save(path)
    a = run(capsys, *SIG, "--alphabet", str(path), "realize", "a[a[*]]")
    b = run(capsys, *SIG, "--alphabet", "canonical:3,2", "realize", "a[a[*]]")
    assert a == b and a[0] == 0


def test_expand_wqsym(capsys):
    code, out, _ = run(capsys, *SIG, "expand-wqsym", "c[*,b[*,*],b[*,*]]")
    assert (code, out) == (0, "M_{122} + M_{123} + M_{132}\n")


def test_fdb(capsys):
    code, out, _ = run(capsys, "fdb", "-r", "1", "-s", "2", "regroup", "{a,a,b} {a}")
    assert code == 0
    assert [line.split(" × ")[0] for line in out.splitlines()] == ["4", "4", "4", "1", "1", "1"]
    code, out, _ = run(capsys, "--format", "json", "fdb", "-r", "1", "-s", "1", "expand", "{a,a}")
    assert code == 0 and len(json.loads(out)["terms"]) == 2


def test_verify(capsys):
    code, out, _ = run(capsys, "--max-degree", "2", "verify", "--suite", "bases,quotient")
    assert code == 0
    assert out.splitlines()[-1].endswith("checks passed")
    code, out, _ = run(capsys, "--format", "json", "--max-degree", "2", "verify", "--suite", "hopf")
    assert code == 0 and json.loads(out)["ok"]


@pytest.mark.parametrize("argv, code", [
    (SIG + ["product", "c[*,*,*,]", "a[*]"], 2),
    (SIG + ["coproduct", "c[*,*]"], 1),
    (["product", "a[*]", "a[*]"], 2),
    (["--as", "--mas", "coproduct", "alpha_2"], 2),
    (SIG + ["--format", "dot", "coproduct", "a[*]"], 2),
    (SIG + ["realize", "a[*]"], 2),
    (SIG + ["--alphabet", "nowhere.json", "realize", "a[*]"], 2),
    (["--as", "--basis", "F", "convert", "alpha_2", "--to", "E"], 1),
    (["verify", "--suite", "nope"], 2),
    (["frobnicate"], 2),
    ([], 2),
    (["--sig", "z:0,b:2", "lattice", "--word", "zz"], 1),
], ids=lambda x: " ".join(x) if isinstance(x, list) else str(x))
def test_exit_codes(capsys, argv, code):
    got, _, err = run(capsys, *argv)
    assert got == code
    assert err


def test_parse_error_reports_column(capsys):
    _, _, err = run(capsys, *SIG, "product", "c[*,*,*,]", "a[*]")
    assert "column 9" in err


def test_bad_alphabet_json(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _, err = run(capsys, *SIG, "--alphabet", str(path), "realize", "a[*]")
    assert code == 2 and "JSON" in err


def test_output_is_deterministic(capsys):
    argv = [*SIG, "--basis", "F", "product", "c[*,*,*]", "a[*] b[*,*]"]
    assert run(capsys, *argv) == run(capsys, *argv)


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "nhopf", "--as", "coproduct", "alpha_2"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout == "E(ε) ⊗ E(alpha_2) + E(alpha_2) ⊗ E(ε)\n"
