import subprocess
import sys

import pytest

from cobordism.cli import main, run
from cobordism.expr import parse_class
from cobordism.models import chern_coordinates, cp_vector
from cobordism.toric import CORPUS_DIR


def test_coords_of_cp2():
    assert run("coords", ["CP(2)"]) == ("3 t1^2 + 3 t2 + 3 t1 w1 + w2\n", 0)


def test_coords_conventions():
    assert run("coords", ["CP(1)", "--convention", "normal"]) == ("-2 t1 + w1\n", 0)


def test_decompose_output_and_reparse():
    text, code = run("decompose-cpn", ["2"])
    assert (text, code) == ("k=2; CP2 = (CP2,2w) - 3 CP1 X - 2 X^2\n", 0)
    for n in (1, 2, 3, 4):
        text, _ = run("decompose-cpn", [str(n)])
        rhs = text.strip().split(" = ", 1)[1]
        assert chern_coordinates(parse_class(rhs)) == cp_vector(n)


def test_json_like_records():
    text, code = run("decompose-cpn", ["1", "--json-like"])
    assert code == 0
    assert text.splitlines() == ["k = 1", "identity = CP1 = (CP1,w) - X", "residual = 0"]
    text, _ = run("coords", ["--json-like", "X"])
    assert text == "coords = w1\n"


def test_fgl_listing_and_integrality():
    text, code = run("fgl", ["--degree", "3"])
    assert code == 0
    assert text.splitlines() == ["a[1,1] = -CP1", "a[1,2] = CP1^2 - CP2", "a[2,1] = CP1^2 - CP2"]
    text, code = run("fgl", ["--degree", "8", "--report", "integrality"])
    assert code == 0
    assert text.splitlines()[-1] == "integrality through degree 8: PASS"


def test_degree_comes_from_environment(monkeypatch):
    monkeypatch.setenv("COBORDISM_DEGREE", "3")
    text, _ = run("fgl", [])
    assert len(text.splitlines()) == 3
    monkeypatch.setenv("COBORDISM_DEGREE", "three")
    assert run("fgl", [])[1] == 2
    monkeypatch.delenv("COBORDISM_DEGREE")
    text, _ = run("fgl", [])
    assert len(text.splitlines()) == sum(1 for i in range(1, 8) for j in range(1, 9 - i))


def test_checks():
    assert run("cartier-check", ["--degree", "5"]) == ("cartier identity through degree 5: PASS\n", 0)
    assert run("exp-hbar-check", ["--dim", "4"]) == ("Exp(hbar) = q through dimension 4: PASS\n", 0)


def test_basis():
    text, code = run("basis", ["--b", "1"])
    assert code == 0
    assert text.splitlines() == ["b1 = -CP1 + (CP1,w)", "coords b1 = w1"]
    assert run("basis", ["--beta", "1"])[0].splitlines()[1] == "coords beta1 = 2 t1 + w1"
    assert run("basis", [])[1] == 2


def test_hbar_and_index():
    assert run("hbar", ["--manifold", "CP(2,2)"]) == ("6 t1\n", 0)
    assert run("index", ["--manifold", "CP(2)"]) == ("1/2 n^2 + 1\n", 0)
    assert run("index", ["--manifold", "CP(2)", "--poly"]) == ("1/2 n^2 + 1\n", 0)
    assert run("index", ["--manifold", "CP(1)*CP(1)", "--twist", "3"]) == ("9\n", 0)


def test_toric_commands():
    square = str(CORPUS_DIR / "square.poly")
    assert run("toric", ["--file", square]) == ("4 t1^2 + 4 t1 w1 + 2 w2\n", 0)
    assert run("toric", ["--file", square, "--class"]) == ("4 t1^2 + 4 t1 w1 + 2 w2\n", 0)
    assert run("toric", ["--file", square, "--exhaustive"]) == ("z0 z1 + z0 z3 + z1 z2 + z2 z3\n", 0)
    assert run("toric", ["--file", square, "--ray", "2"]) == ("4 t1^2 + 8 t1 w1 + 8 w2\n", 0)


def test_toric_exit_codes(tmp_path):
    sheared = tmp_path / "sheared.poly"
    sheared.write_text("dim 2\nfacets 3\nf 1 0 0\nf 1 2 0\nf -1 -1 1\n")
    text, code = run("toric", ["--file", str(sheared)])
    assert code == 1 and text.startswith("validation error:")
    broken = tmp_path / "broken.poly"
    broken.write_text("dim 2\nfacets 1\nf 1 0\n")
    text, code = run("toric", ["--file", str(broken)])
    assert code == 2 and text.startswith("parse error:")
    assert run("toric", ["--file", str(tmp_path / "missing.poly")])[1] == 1


@pytest.mark.parametrize("args, code", [
    (["coords", "CP(1,0)"], 2),
    (["coords", "Y"], 2),
    (["decompose-cpn", "0"], 1),
    (["decompose-cpn", "two"], 2),
    (["fgl", "--degree", "1"], 1),
    (["cartier-check", "--degree", "1"], 1),
    (["nonsense"], 2),
    ([], 2),
])
def test_error_exit_codes(args, code):
    assert main(args) == code


def test_report_lists_three_findings():
    text, code = run("report", [])
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "3 discrepancies"
    assert "[1] coordinates of (CP3,w), coefficient of t3" in lines
    assert "[2] coordinates of (CP3,w), coefficient of t2 w1" in lines
    assert "[3] decomposition of CP3" in lines


def test_output_is_byte_stable():
    first = [run(c, a) for c, a in [("report", []), ("fgl", ["--degree", "6"]), ("coords", ["CP(3) X"])]]
    second = [run(c, a) for c, a in [("report", []), ("fgl", ["--degree", "6"]), ("coords", ["CP(3) X"])]]
    assert first == second


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cobordism", "coords", "CP(1)"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout == "2 t1 + w1\n"
    proc = subprocess.run([sys.executable, "-m", "cobordism", "coords", "CP("],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 2
    assert proc.stdout == "" and "parse error" in proc.stderr
