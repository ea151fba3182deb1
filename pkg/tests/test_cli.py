import json
import re

import pytest

from idealtype.cli import EXIT_MISMATCH, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_certify_e6(capsys):
    code, out, _ = run(capsys, "certify", "--type", "E6", "--gens", "00111/0", "--format", "json")
    tree = json.loads(out)
    assert code == EXIT_OK
    assert tree["kind"] == "Fibration" and tree["children"][0]["system"] == "D5"
    assert tree["children"][0]["kind"] == "FullWeyl"


def test_certify_f4_failure_has_four_reports(capsys):
    code, out, _ = run(capsys, "certify", "--type", "F4", "--gens", "0122", "--format", "json")
    tree = json.loads(out)
    assert tree["kind"] == "Failure" and len(tree["reports"]) == 4


def test_certify_a3_positive(capsys):
    code, out, _ = run(capsys, "certify", "--type", "A3", "--gens", "111", "--format", "json")
    assert json.loads(out)["kind"] != "Failure"


def test_json_byte_stable(capsys):
    a = run(capsys, "certify", "--type", "E7", "--gens", "001110/0", "--format", "json")[1]
    b = run(capsys, "certify", "--type", "E7", "--gens", "001110/0", "--format", "json")[1]
    assert a == b


def test_bad_label_is_usage_error(capsys):
    code, _, err = run(capsys, "certify", "--type", "E6", "--gens", "0011/0")
    assert code == EXIT_USAGE and "E6 label" in err
    code, _, _ = run(capsys, "certify", "--type", "Q3")
    assert code == EXIT_USAGE
    code, _, _ = run(capsys, "bogus")
    assert code == EXIT_USAGE


def test_exponents(capsys):
    code, out, _ = run(capsys, "exponents", "--type", "A3", "--gens", "")
    assert out.split() == ["1", "2", "3"]


def test_charpoly(capsys):
    code, out, _ = run(capsys, "charpoly", "--type", "B3", "--gens", "", "--format", "json")
    rep = json.loads(out)
    assert rep["integer_roots"] == [1, 3, 5]


def test_charpoly_budget(capsys, monkeypatch):
    code, _, err = run(capsys, "charpoly", "--type", "F4", "--gens", "", "--flat-budget", "20")
    assert code == EXIT_RESOURCE and "rank-" in err


def test_dn_classify(capsys):
    code, out, _ = run(capsys, "dn-classify", "--rank", "5", "--format", "json")
    rep = json.loads(out)
    assert code == EXIT_OK
    assert rep["total"] == rep["catalan"] == 182
    assert set(rep["histogram"]) <= {"FullWeyl", "ThmMainCase", "PrincipalCase", "TypeI", "TypeII", "TypeIII"}


def test_dn_classify_hole_exit(capsys):
    code, out, _ = run(capsys, "dn-classify", "--rank", "6")
    assert code == EXIT_MISMATCH and "Hole" in out


def test_export_dot_g2(capsys):
    code, out, _ = run(capsys, "export-dot", "--type", "G2")
    assert out.startswith('digraph "G2"')
    assert len(re.findall(r"^\s+r\d+ \[", out, re.M)) == 6
    assert out.count("->") == 5


def test_export_dot_highlights(capsys):
    code, out, _ = run(capsys, "export-dot", "--type", "G2", "--gens", "32")
    assert out.count("fillcolor") == 1


def test_table1_g2(capsys):
    code, out, _ = run(capsys, "table1", "--only", "G2", "--format", "json")
    rep = json.loads(out)
    assert code == EXIT_OK and rep["columns"][0]["certified"] == 8


def test_table1_f4_mismatch_reported(capsys):
    code, out, _ = run(capsys, "table1", "--only", "F4")
    assert code == EXIT_MISMATCH and "FAIL" in out and "certified -1" in out


def test_bad_budget(capsys):
    code, _, _ = run(capsys, "charpoly", "--type", "A2", "--flat-budget", "0")
    assert code == EXIT_USAGE
