import csv
import io
import json

import pytest

from hyperbell import oeis_io
from hyperbell.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bell_plain(capsys):
    code, out, _ = run(capsys, "bell", "--L", "3", "--n-max", "6")
    assert code == 0
    assert out == "1 1 9 298 25097 4383626 1394519922\n"
    assert run(capsys, "bell", "--L", "0", "--n-max", "6")[1] == "1 1 2 5 15 52 203\n"
    assert run(capsys, "bell", "--L", "1", "--n-max", "0")[1] == "1\n"


def test_bell_formats(capsys):
    _, out, _ = run(capsys, "bell", "--L", "6", "--n-max", "6", "--format", "json")
    assert json.loads(out)[-1] == "173566857025139312"
    _, out, _ = run(capsys, "bell", "--L", "1", "--n-max", "3", "--format", "csv")
    assert list(csv.reader(io.StringIO(out))) == [["index", "value"], ["0", "1"], ["1", "1"], ["2", "3"], ["3", "16"]]
    _, out, _ = run(capsys, "bell", "--L", "1", "--n-max", "3", "--format", "bfile")
    assert out == "0 1\n1 1\n2 3\n3 16\n"


def test_stirling(capsys):
    _, out, _ = run(capsys, "stirling", "--L", "1", "--n-max", "4")
    assert out.splitlines()[-1] == "1 34 72 24"
    _, out, _ = run(capsys, "stirling", "--L", "2", "--n-max", "3")
    assert out.splitlines()[-1] == "1 27 36"
    _, out, _ = run(capsys, "stirling", "--L", "0", "--n-max", "2")
    assert out == "1\n1 1\n"


def test_stirling_formats(capsys):
    _, out, _ = run(capsys, "stirling", "--L", "1", "--n-max", "3", "--format", "json")
    assert json.loads(out) == [{"n": 1, "values": ["1"]}, {"n": 2, "values": ["1", "2"]},
                               {"n": 3, "values": ["1", "9", "6"]}]
    _, out, _ = run(capsys, "stirling", "--L", "1", "--n-max", "2", "--format", "csv")
    assert out.splitlines() == ["n,l,value", "1,1,1", "2,1,1", "2,2,2"]
    _, out, _ = run(capsys, "stirling", "--L", "1", "--n-max", "2", "--format", "bfile")
    assert out == "1 1\n2 1\n3 2\n"


@pytest.mark.parametrize(
    "L,p,n_max,last",
    [("0", "3", "10", "337"), ("1", "1", "9", "11893597"), ("2", "2", "8", "347117")],
)
def test_restricted(capsys, L, p, n_max, last):
    code, out, _ = run(capsys, "restricted", "--L", L, "--p", p, "--n-max", n_max)
    assert code == 0
    assert out.split()[-1] == last


def test_supra(capsys):
    _, out, _ = run(capsys, "supra", "--L", "1", "--p", "1", "--n-max", "5", "--format", "bfile")
    assert out == "1 1\n2 9\n3 72\n4 600\n5 5400\n"


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "bell", "--L", "2", "--order", "20")
    assert (code, out) == (0, "OK 21/21\n")
    code, out, _ = run(capsys, "oracle", "general", "--params", "1,2", "--order", "7")
    assert code == 0
    assert out.splitlines() == ["1 1 4 37 641 18276 789377 48681011", "integrality OK"]
    code, out, _ = run(capsys, "oracle", "stirling", "--L", "1", "--l", "2", "--order", "8")
    assert (code, out) == (0, "OK 9/9\n")
    _, out, _ = run(capsys, "oracle", "stirling", "--L", "1", "--l", "2", "--order", "8", "--format", "json")
    assert json.loads(out)["oracle"] == ["0", "0", "2", "9", "34", "125", "461", "1715", "6434"]
    code, out, _ = run(capsys, "oracle", "restricted", "--L", "1", "--p", "2", "--order", "9")
    assert (code, out) == (0, "OK 10/10\n")


def test_oracle_integrality_violation(capsys):
    code, out, _ = run(capsys, "oracle", "general", "--params", "2", "--order", "5")
    assert code == 1
    assert "n=2" in out and "5/2" in out


def test_oracle_missing_argument(capsys):
    code, _, err = run(capsys, "oracle", "stirling", "--L", "1", "--order", "5")
    assert code == 2 and "--l" in err


def test_identity(capsys):
    code, out, _ = run(capsys, "identity", "L1-first", "--terms", "60")
    assert code == 0
    assert "overlap=true" in out and "within_tol=true" in out
    code, out, _ = run(capsys, "identity", "L0-second", "--terms", "40", "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["overlap"] is True
    code, _, err = run(capsys, "identity", "bogus")
    assert code == 2 and "unknown identity" in err


def test_oeis_commands(capsys):
    code, out, _ = run(capsys, "oeis", "bell", "--L", "1", "--id", "A023998")
    assert code == 0 and "match" in out
    code, out, _ = run(capsys, "oeis", "supra", "--L", "1", "--p", "1", "--id", "A001809", "--offset", "2")
    assert code == 0
    code, out, _ = run(capsys, "oeis", "restricted", "--L", "0", "--p", "2", "--id", "A006505")
    assert code == 0
    code, out, _ = run(capsys, "oeis", "bell", "--L", "2", "--id", "A023998")
    assert code == 1 and "MISMATCH at index 2" in out


def test_oeis_missing_fixture_and_network(capsys, monkeypatch, tmp_path):
    code, _, err = run(capsys, "oeis", "bell", "--L", "1", "--id", "A999999")
    assert code == 3
    def offline(url, timeout):
        raise oeis_io.urllib.error.URLError("offline")
    monkeypatch.setattr(oeis_io.urllib.request, "urlopen", offline)
    code, _, err = run(capsys, "oeis", "bell", "--L", "1", "--id", "A023998", "--fetch",
                       "--cache-dir", str(tmp_path))
    assert code == 3 and "I/O error" in err


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as info:
        main(["bell", "--L", "-1", "--n-max", "3"])
    assert info.value.code == 2
    code, _, err = run(capsys, "oeis", "bell", "--L", "1", "--id", "X123")
    assert code == 2


def test_max_bits_guard(capsys):
    code, out, err = run(capsys, "bell", "--L", "6", "--n-max", "40", "--max-bits", "64")
    assert code == 2 and out == "" and "max-bits" in err


def test_deterministic_output(capsys):
    a = run(capsys, "stirling", "--L", "2", "--n-max", "8", "--format", "json")
    b = run(capsys, "stirling", "--L", "2", "--n-max", "8", "--format", "json")
    assert a == b


@pytest.mark.parametrize("fmt", ["plain", "csv", "json", "bfile"])
@pytest.mark.parametrize(
    "argv",
    [
        ["bell", "--L", "1", "--n-max", "5"],
        ["stirling", "--L", "1", "--n-max", "4"],
        ["restricted", "--L", "0", "--p", "1", "--n-max", "6"],
        ["supra", "--L", "2", "--p", "2", "--n-max", "4"],
        ["oracle", "bell", "--L", "1", "--order", "6"],
        ["identity", "F2-general", "--terms", "20"],
        ["oeis", "bell", "--L", "0", "--id", "A000110"],
    ],
)
def test_every_command_every_format(capsys, argv, fmt):
    code, out, _ = run(capsys, *argv, "--format", fmt)
    assert code == 0
    assert out.endswith("\n")
    if fmt == "json":
        json.loads(out)
