import json
import subprocess
import sys

import pytest

from ringelhall.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err.strip()


def test_hall_mul_text(capsys):
    assert run(capsys, "hall", "mul", "S1", "S2", "--quiver", "a2.json", "--q", "2") == (
        0,
        "v^-1 [P1] + v^-1 [S1+S2]",
        "",
    )


def test_hall_mul_reversed(capsys):
    assert run(capsys, "hall", "mul", "S2", "S1")[1] == "[S1+S2]"


def test_hall_comul(capsys):
    code, out, _ = run(capsys, "hall", "comul", "P1")
    assert code == 0
    assert "v^-1 [S1]⊗[S2]" in out


def test_word_w0(capsys):
    assert run(capsys, "word", "w0", "--quiver", "a2.json")[1] == "1,2,1"


def test_roots_a1(capsys):
    code, out, _ = run(capsys, "roots", "--quiver", "a1.json", "--format", "json")
    assert code == 0
    assert json.loads(out)["roots"] == [[1]]


def test_roots_from_file(capsys, tmp_path):
    path = tmp_path / "mine.json"
    path.write_text(json.dumps({"n": 2, "arrows": [[1, 2]], "d": {"1,2": 1, "2,1": 1}, "f": [1, 1]}))
    code, out, _ = run(capsys, "roots", "--quiver", str(path), "--format", "json")
    assert code == 0 and len(json.loads(out)["roots"]) == 3


def test_malformed_json_exits_2(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"n": 2,\n "arrows": [[1, 2]')
    code, _, err = run(capsys, "roots", "--quiver", str(path))
    assert code == 2 and "line 2" in err


def test_kronecker_exits_2(capsys, tmp_path):
    path = tmp_path / "kronecker.json"
    path.write_text(json.dumps({"n": 2, "arrows": [[1, 2]], "d": {"1,2": 2, "2,1": 2}, "f": [1, 1]}))
    code, _, err = run(capsys, "roots", "--quiver", str(path))
    assert code == 2 and "finite type" in err


@pytest.mark.parametrize(
    "argv",
    [
        ("hall", "mul", "S7", "S1"),
        ("roots", "--q", "6"),
        ("roots", "--cap", "-1"),
        ("verify", "nonsense"),
        ("feigin", "x1 +"),
        ("roots", "--word", "1,9"),
    ],
)
def test_input_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_omega_intw(capsys):
    assert run(capsys, "omega", "P1")[1] == "v^-1 y(1 2)"
    assert run(capsys, "intw", "S1+S2")[1] == "t^[0,1,1] + v^-1 t^[1,1,0]"


def test_feigin(capsys):
    assert run(capsys, "feigin", "serre(1,2)")[1] == "0"
    assert run(capsys, "feigin", "x1")[1] == "t^[0,0,1] + t^[1,0,0]"


def test_monomial_table(capsys):
    code, out, _ = run(capsys, "monomial", "P1")
    assert code == 0
    assert "E^(M) = [P1] + [S1+S2]" in out


def test_charset(capsys):
    code, out, _ = run(capsys, "charset", "S1+S2", "--format", "json")
    assert code == 0
    assert sorted(map(tuple, json.loads(out)["set"])) == [(0, 1, 1), (1, 1, 0)]


def test_list_classes(capsys):
    code, out, _ = run(capsys, "roots", "--list-classes", "--cap", "1")
    assert code == 0 and "S1" in out and "P1" not in out


def test_verify_all_a2(capsys):
    code, out, _ = run(capsys, "verify", "all", "--quiver", "a2.json", "--q", "2", "--cap", "4")
    assert code == 0
    assert "violation" not in out


def test_verify_serre_b2(capsys):
    assert run(capsys, "verify", "serre", "--quiver", "b2.json", "--q", "2")[0] == 0


def test_verify_cap_zero(capsys):
    code, out, _ = run(capsys, "verify", "all", "--cap", "0")
    assert code == 0
    assert "(no checks in range)" in out


def test_json_deterministic():
    argv = [sys.executable, "-m", "ringelhall", "verify", "--suite", "bialgebra", "--cap", "3", "--format", "json"]
    first = subprocess.run(argv, capture_output=True, text=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, text=True, check=True).stdout
    assert first == second
    payload = json.loads(first)
    assert payload["violations"] == 0 and payload["checked"] > 0
