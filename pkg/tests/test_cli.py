import json
import subprocess
import sys

import pytest

from sspcm.cli import InputError, main, parse_range


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_range_is_inclusive():
    assert parse_range("5..13") == [5, 7, 11, 13]
    assert parse_range("2..2") == [2]
    for bad in ("7", "a..b", "13..5"):
        with pytest.raises(InputError):
            parse_range(bad)


def test_classify_row(capsys):
    code, out, _ = _run(capsys, "classify", "--p", "7", "--format", "csv")
    assert code == 0
    assert any(line.startswith("7,sqrtP_zeta3,F_7,surfacesCML-2,") for line in out.splitlines())


def test_classify_range_json(capsys):
    code, out, _ = _run(capsys, "classify", "--p-range", "2..13", "--format", "json")
    data = json.loads(out)
    assert code == 0 and {d["p"] for d in data} == {2, 3, 5, 7, 11, 13}
    assert all(d["consistent"] for d in data)


def test_lmfdb(capsys):
    code, out, _ = _run(capsys, "lmfdb", "--label", "2.5.a_af", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["family"] == "sqrtP_zeta12" and data["p"] == 5
    code, out, _ = _run(capsys, "lmfdb", "--label", "2.25.a_az", "--format", "json")
    assert code == 0 and json.loads(out)["family"] is None


@pytest.mark.parametrize("argv", [
    ["catalog", "--p", "7"], ["splitting", "--p", "7", "--family", "sqrtP_zeta3"],
    ["lie", "--p", "11", "--family", "sqrtP_zeta8"], ["cmtypes", "--p", "5", "--family", "sqrtP_zeta12"],
    ["rrc", "--p", "5", "--family", "sqrtP_zeta3", "--q", "25"], ["reproduce", "--table", "sqrt7zeta3"],
])
@pytest.mark.parametrize("fmt", ["json", "csv", "md"])
def test_commands_succeed(capsys, argv, fmt):
    code, out, _ = _run(capsys, *argv, "--format", fmt)
    assert code == 0 and out.strip()
    if fmt == "json":
        json.loads(out)


@pytest.mark.parametrize("argv", [
    ["catalog", "--p", "9"], ["catalog"], ["catalog", "--p", "7", "--p-range", "2..5"],
    ["splitting", "--p", "7"], ["splitting", "--p", "7", "--family", "zeta7"],
    ["splitting", "--p", "7", "--family", "sqrt5_zeta5_plus"],
    ["lie", "--p", "3", "--family", "sqrtP_zeta3"], ["lie", "--p", "7", "--family", "sqrtP"],
    ["rrc", "--p", "7", "--family", "sqrtP_zeta3", "--q", "25"],
    ["reproduce", "--table", "nope"], ["lmfdb", "--label", "2.6.a_a"], ["bogus"],
    ["classify", "--p-range", "9..2"],
])
def test_invalid_input_exits_2(capsys, argv):
    code, _, err = _run(capsys, *argv)
    assert code == 2 and err


def test_output_is_deterministic_and_out_file(tmp_path, capsys):
    a = _run(capsys, "classify", "--p-range", "2..40", "--format", "csv")[1]
    b = _run(capsys, "classify", "--p-range", "2..40", "--format", "csv")[1]
    assert a == b
    path = tmp_path / "sweep.csv"
    code, out, _ = _run(capsys, "classify", "--p-range", "2..40", "--format", "csv", "--out", str(path))
    assert code == 0 and out == "" and path.read_text() == a


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "sspcm", "rrc", "--p", "7", "--family", "sqrtP_zeta3",
                          "--format", "json"], capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert json.loads(res.stdout)["satisfiable"] is True


def test_table_mismatch_exits_3(monkeypatch, capsys):
    import sspcm.cli
    from sspcm.tables import TableMismatch

    def broken(_):
        raise TableMismatch("expected 3, got 4")

    monkeypatch.setattr(sspcm.cli, "reproduce", broken)
    code, _, err = _run(capsys, "reproduce", "--table", "indices")
    assert code == 3 and "mismatch" in err
