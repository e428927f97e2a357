import json
import subprocess
import sys

import pytest

from wordsort.cli import main, parse_range
from wordsort.sequences import THUE_MORSE_DFAO, dump_dfao


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["word", "tortoise", "11011000"], "10110001"),
        (["word", "hare", "314159265358979323846264"], "131452355687233424668999"),
        (["word", "index", "0011"], "0"),
        (["word", "iterate", "11011000", "--k", "4"], "00001111"),
        (["word", "sort", "10,3,2"], "2,3,10"),
        (["word", "nearly", "11011000"], "01000111"),
    ],
)
def test_word(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out.strip() == expected


def test_word_parse_error(capsys):
    code, _, err = run(capsys, "word", "hare", "12x")
    assert code == 2 and "digit" in err


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["table", "tortoise", "--seq", "f", "--k", "1", "--n", "1..15"], "2,3,5,7,12,18,26,32,36,40,44,48,52,56,60"),
        (["table", "ab", "--seq", "t", "--n", "1..8"], "2,3,2,3,2,3,2,3"),
        (["table", "rho", "--seq", "f", "--n", "1..6"], "2,4,8,12,18,23"),
    ],
)
def test_table(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out.strip() == expected


def test_table_csv_is_byte_stable(capsys):
    argv = ["table", "nearly", "--seq", "t", "--n", "1..10", "--format", "csv"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b
    assert a.splitlines()[0] == "n,count,prefix_length"
    assert len(a.splitlines()) == 11


def test_table_json_to_file(capsys, tmp_path):
    out = tmp_path / "t.json"
    code, _, _ = run(capsys, "table", "rho", "--seq", "t", "--n", "1..4", "--format", "json", "--out", str(out))
    assert code == 0
    assert [r["count"] for r in json.loads(out.read_text())["rows"]] == [2, 4, 6, 10]


def test_resource_cap_exit_code(capsys):
    code, out, err = run(
        capsys, "table", "rho", "--seq", "f", "--n", "1..3", "--prefix-init", "4", "--prefix-max", "8", "--pure-doubling"
    )
    assert code == 3 and out == ""


def test_stat(capsys):
    code, out, _ = run(capsys, "stat", "abel", "--seq", "f", "--k", "1..5", "--nmax", "40")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "2,3,5,6,9"
    assert "40" in lines[1]
    code, out, _ = run(capsys, "stat", "abel", "--seq", "t", "--k", "1", "--nmax", "20")
    assert code == 0 and out.splitlines()[0] == "2"


def test_stat_threshold_json(capsys):
    code, out, _ = run(capsys, "stat", "threshold", "--k", "1..2", "--nmax", "40", "--format", "json")
    data = json.loads(out)
    assert code == 0 and [r["value"] for r in data["values"]] == [8, 13] and data["n_max"] == 40


def test_verify_exit_codes(capsys):
    assert run(capsys, "verify", "pf-rho", "--n", "8..20")[0] == 0
    assert run(capsys, "verify", "pf-rho", "--n", "7..7")[0] == 1
    code, out, _ = run(capsys, "verify", "tm-rho", "--n", "10..20", "--format", "json")
    assert code == 0 and json.loads(out)[0]["outcome"] == "pass"


def test_verify_all_small(capsys):
    code, out, _ = run(capsys, "verify", "all", "--n", "11..32")
    assert code == 0 and out.splitlines()[-1].startswith("all: PASS")


def test_usage_errors(capsys):
    assert run(capsys, "table", "rho", "--n", "1..3")[0] == 2
    assert run(capsys, "table", "rho", "--seq", "f", "--n", "5..3")[0] == 2
    assert run(capsys, "verify", "bogus", "--n", "1..2")[0] == 2
    assert run(capsys, "table", "rho", "--seq", "f", "--dfao", "x", "--n", "1")[0] == 2


def test_dfao_sequence(capsys, tmp_path):
    path = tmp_path / "tm.dfao"
    path.write_text(dump_dfao(THUE_MORSE_DFAO))
    code, out, _ = run(capsys, "table", "rho", "--dfao", str(path), "--n", "1..5")
    assert code == 0 and out.strip() == "2,4,6,10,12"
    bad = tmp_path / "bad.dfao"
    bad.write_text("base 2 alphabet 2 initial a\nstate a output 0\n")
    assert run(capsys, "prefix", "--dfao", str(bad), "5")[0] == 2


def test_prefix_factors_classes(capsys):
    assert run(capsys, "prefix", "--seq", "t", "12")[1].strip() == "011010011001"
    code, out, _ = run(capsys, "factors", "--seq", "f", "--n", "8")
    assert code == 0 and len(out.split()) == 32
    code, out, _ = run(capsys, "classes", "--seq", "t", "--n", "58")
    assert code == 0 and len(json.loads(out)["nontrivial_classes"]) == 2


def test_parse_range():
    assert parse_range("3") == (3, 3)
    assert parse_range("1..15") == (1, 15)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "wordsort", "word", "tortoise", "11011000"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "10110001"
