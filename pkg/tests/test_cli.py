import io
import json
import subprocess
import sys

import pytest

from distint.cli import main
from distint.familygen import FamilyParams, family_params
from distint.integrality import SolutionRow, is_distance_integral
from distint.model import parse_spec
from distint.search import SearchBounds, read_rows, search
from distint.serialize import report_from_dict, spectrum_from_dict
from distint.spectral import spectrum

ROW1 = "1302x1,254x3,185x5,70x12,132x20"


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def test_spectrum_text():
    assert run("spectrum", "2x2", "--format", "table") == (0, "4:1 0:1 -2:2\ndistance integral\n")
    assert run("spectrum", "3x1", "--format", "table")[1].splitlines()[0] == "2:1 -1:2"
    code, text = run("spectrum", "1x1,1x2", "--format", "table")
    assert code == 0
    assert text == "(5/2,3):1 (-1,-1/2):1 -2:1\nnot distance integral\n"


def test_check_text():
    assert run("check", ROW1, "--format", "table") == (0, "distance integral; mu = 0 2 7 13 6478\n")
    code, text = run("check", "1x1,1x2", "--format", "table")
    assert code == 1 and text.startswith("not distance integral")


def test_parse_error_names_token(capsys):
    code, text = run("spectrum", "2x2,1xq")
    assert code == 2 and text == ""
    assert "1xq" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv,code",
    [
        (["spectrum", "2x2"], 0),
        (["spectrum", "0x2"], 2),
        (["spectrum", "2x3,1x2"], 2),
        (["check", ROW1], 0),
        (["check", "1x1,1x2"], 1),
        (["check", "1,1,2,3", "--max-s", "2"], 2),
        (["verify", "--p", "1,3", "--a", "7,2", "--mu", "0,13"], 0),
        (["verify", "--p", "1,3", "--a", "7,2", "--mu", "0,13", "--n", "14"], 1),
        (["verify", "--p", "1,3", "--a", "7,2"], 2),
        (["verify", "--p", "1,x"], 2),
        (["verify", "--corpus"], 1),
        (["errata"], 1),
        (["family", "--p", "1,4,8,18,31", "--mu", "1,5,14,20,9298", "--emit-formulas"], 0),
        (["family", "--p", "1,3", "--mu", "0,14"], 2),
        (["search", "--s", "2", "--pmax", "1,3", "--mumax", "13"], 0),
        (["search", "--s", "2", "--pmax", "1", "--mumax", "13"], 2),
        (["search", "--s", "5", "--pmax", "7,15,20,24,50", "--mumax", "9999"], 2),
        (["oracle", "2x2"], 0),
        (["oracle", "1x2"], 2),
        (["oracle", "1x600"], 2),
        (["nosuch"], 2),
        ([], 2),
    ],
)
def test_exit_code_matrix(argv, code):
    assert run(*argv)[0] == code


def test_family_formulas():
    code, text = run("family", "--p", "1,4,8,18,31", "--mu", "1,5,14,20,9298", "--emit-formulas", "--format", "table")
    lines = text.splitlines()
    assert code == 0
    assert lines[0] == "step 13236132"
    assert lines[1] == "mu_5(t) = 13236132t + 9298"
    assert [l.split(" = ")[0] for l in lines[2:7]] == [f"a_{k}(t)" for k in range(1, 6)]
    assert "errata Theorem 3.2: n_slope printed 324632 derived 13236132" in lines


def test_spectrum_json_roundtrip():
    for text in ("2x2", "1x1,1x2", ROW1):
        code, out = run("spectrum", text, "--format", "json")
        assert code == 0
        assert spectrum_from_dict(json.loads(out)) == spectrum(parse_spec(text))


def test_check_json_roundtrip():
    for text in (ROW1, "1x1,1x2"):
        _, out = run("check", text, "--format", "json")
        assert report_from_dict(json.loads(out)) == is_distance_integral(parse_spec(text))


def test_family_json_roundtrip():
    _, out = run("family", "--p", "1,4,8,18,31", "--mu", "1,5,14,20,9298", "--format", "json", "--t", "1")
    d = json.loads(out)
    assert FamilyParams.from_dict(d) == family_params((1, 4, 8, 18, 31), (1, 5, 14, 20, 9298))
    assert d["instance"]["mu"][-1] == 13245430
    assert d["errata"][0]["source"] == "Theorem 3.2"


def test_verify_json_roundtrip():
    _, out = run("verify", "--p", "1,3", "--a", "7,2", "--mu", "0,13", "--format", "json")
    d = json.loads(out)
    assert d["ok"] and SolutionRow.from_dict(d["row"]) == SolutionRow.build((1, 3), (7, 2), (0, 13))


def test_search_formats_roundtrip():
    want = list(search(SearchBounds.box((6, 10, 14), 300)))
    for fmt in ("json", "csv"):
        code, out = run("search", "--s", "3", "--pmax", "6,10,14", "--mumax", "300", "--format", fmt)
        assert code == 0 and read_rows(out, fmt) == want


def test_search_resume(tmp_path):
    state = str(tmp_path / "cp.json")
    args = ["search", "--s", "3", "--pmax", "5,9,14", "--mumax", "300", "--format", "csv"]
    _, full = run(*args, "--checkpoint", state)
    code, rest = run("search", "--resume", state, "--format", "csv")
    # a finished checkpoint leaves only the header to print
    assert code == 0 and rest.splitlines() == full.splitlines()[:1]


def test_errata_json_matches_golden():
    from pathlib import Path

    code, out = run("errata", "--format", "json")
    assert code == 1
    assert out == (Path(__file__).parent / "golden" / "errata.json").read_text()


def test_identical_invocations_identical_bytes():
    argv = ["search", "--s", "3", "--pmax", "5,9,14", "--mumax", "200", "--format", "json"]
    assert run(*argv) == run(*argv) == run(*argv, "--workers", "3")


def test_entry_point_pipes_json():
    proc = subprocess.run(
        [sys.executable, "-m", "distint", "check", ROW1], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["mu"] == [0, 2, 7, 13, 6478]
    proc = subprocess.run([sys.executable, "-m", "distint", "spectrum", "x"], capture_output=True, text=True)
    assert proc.returncode == 2 and proc.stdout == "" and "error" in proc.stderr
