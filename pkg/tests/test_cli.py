import json
import subprocess
import sys

import pytest

from k3lat.cli import main

SWAP = [[int(i == j) for j in range(18)] for i in range(18)]
for _i in range(8):
    SWAP[2 + _i][2 + _i] = SWAP[10 + _i][10 + _i] = 0
    SWAP[2 + _i][10 + _i] = SWAP[10 + _i][2 + _i] = 1


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out else None), err


def test_lattice_info(capsys):
    code, rep, err = run(capsys, "lattice", "info", "--construct", "U+U+U+E8(-1)+E8(-1)")
    assert code == 0
    assert rep["schema"] == "k3lat/1"
    assert rep["signature"] == {"positive": 3, "negative": 19, "null": 0}
    assert rep["even"] and rep["unimodular"]
    assert "signature (3,19)" in err


def test_json_only_suppresses_summary(capsys):
    code, _, err = run(capsys, "--json-only", "lattice", "info", "--construct", "U")
    assert code == 0 and err == ""
    code, _, err = run(capsys, "lattice", "disc", "--construct", "<-2>", "--json-only")
    assert err == ""


def test_lattice_file_input(tmp_path, capsys):
    p = tmp_path / "l.json"
    p.write_text(json.dumps({"gram": [[-2]]}))
    code, rep, _ = run(capsys, "lattice", "disc", "--lattice", str(p))
    assert code == 0
    assert rep["divisors"] == [2] and rep["generators"] == [["1/2"]]


def test_enum(capsys):
    code, rep, _ = run(capsys, "lattice", "enum", "--construct", "U", "--enum-bound", "2")
    assert rep["vectors"] == [[-1, 1], [1, -1]] and rep["count"] == 2


def test_unknown_command_and_bad_input(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2
    code, _, err = run(capsys, "lattice", "info", "--construct", "U+X7")
    assert code == 2 and "X7" in err
    code, _, _ = run(capsys, "lattice", "info", "--lattice", "{not json")
    assert code == 2
    code, _, _ = run(capsys, "theorem5", "--construct", "E8(-1)", "--f", "[[1]]")
    assert code == 2


def test_isometry_commands(capsys):
    args = ["--construct", "U", "--isometry", "[[0,1],[1,0]]"]
    assert run(capsys, "isometry", "check", *args)[1]["determinant"] == -1
    assert run(capsys, "isometry", "spinor", *args)[1]["spinor"] == 1
    rep = run(capsys, "isometry", "factor", *args)[1]
    assert rep["spinor"] == 1 and rep["length"] <= 4
    assert run(capsys, "isometry", "fixed", *args)[1]["rank"] == 1
    code, _, err = run(capsys, "isometry", "check", "--construct", "U", "--isometry", "[[1,1],[0,1]]")
    assert code == 2 and "[1][1]" in err


def test_orientation_command(capsys):
    rep = run(capsys, "isometry", "orientation", "--construct", "U", "--isometry", "[[0,-1],[-1,0]]",
              "--plane", "[[1,1]]")[1]
    assert rep["orientation"] == -1


def test_kneser_and_weyl(capsys):
    rep = run(capsys, "kneser", "check", "--construct", "U+U+E8(-1)", "--enum-bound", "1")[1]
    assert rep["report"]["hypotheses_met"] and rep["report"]["rk2"] == 12
    iso = json.dumps({"matrix": [[0, -1] + [0] * 10, [-1, 0] + [0] * 10]
                      + [[0] * (i + 2) + [1] + [0] * (9 - i) for i in range(10)]})
    code, rep, err = run(capsys, "weyl", "member", "--construct", "U+U+E8(-1)", "--isometry", iso,
                         "--enum-bound", "1")
    assert code == 0 and rep["is_member"] is False and rep["spinor"] == -1
    code, rep, _ = run(capsys, "weyl", "factor", "--construct", "U+U+E8(-1)", "--isometry",
                       json.dumps([[0, 1] + [0] * 10, [1, 0] + [0] * 10]
                                  + [[0] * (i + 2) + [1] + [0] * (9 - i) for i in range(10)]),
                       "--enum-bound", "1")
    assert rep["factorization"] == [[1, -1] + [0] * 10]


def test_k3_commands(capsys):
    rep = run(capsys, "k3", "extend", "--construct", "<2>")[1]
    assert rep["signature"]["positive"] == 2 and rep["determinant"] == -2
    rep = run(capsys, "k3", "mukai", "--construct", "<2>", "--line-bundle", "[1]")[1]
    assert rep["mukai_vector"] == {"r": 1, "l": [1], "s": 2} and rep["square"] == -2
    rep = run(capsys, "k3", "mukai", "--construct", "U", "--curve", "[1,-1]")[1]
    assert rep["mukai_vector"] == {"r": 0, "l": [1, -1], "s": 0}
    rep = run(capsys, "k3", "twist-action", "--construct", "<2>", "--mukai", '{"r":1,"l":[0],"s":1}')[1]
    assert rep["matrix"] == [[0, 0, -1], [0, 1, 0], [-1, 0, 0]]
    data = json.dumps({"ns": {"gram": [[0, 1], [1, 0]]}, "ample": [1, 2], "curves": [[1, -1]]})
    rep = run(capsys, "k3", "chamber", "--data", data, "--alpha", "[2,1]")[1]
    assert rep["alpha"] == [1, 2] and rep["word"] == [[1, -1]]
    rep = run(capsys, "k3", "p0", "--construct", "<2>", "--x", "[0,1,0]", "--y", "[1,0,-1]")[1]
    assert rep["verdict"]["inside"] is False
    assert rep["verdict"]["witness"] == {"r": 1, "l": [0], "s": 1}


def test_bv_commands(capsys):
    rep = run(capsys, "bv", "mul", "--construct", "<2>", "--u", '{"a":0,"l":[1],"m":0}',
              "--v", '{"a":0,"l":[1],"m":0}')[1]
    assert rep["product"] == {"a": 0, "l": [0], "m": 2}
    rep = run(capsys, "bv", "vch", "--construct", "<2>", "--l", "[1]")[1]
    assert rep["vch"] == {"a": 1, "l": [1], "m": 2}
    rep = run(capsys, "bv", "act", "--construct", "<2>", "--isometry", "[[0,0,-1],[0,1,0],[-1,0,0]]",
              "--u", '{"a":1,"l":[0],"m":1}')[1]
    assert rep["image"] == {"a": -1, "l": [0], "m": -1}


def test_theorem5_exit_codes(tmp_path, capsys):
    ns = tmp_path / "ns.json"
    f = tmp_path / "f.json"
    ns.write_text(json.dumps({"gram": [list(r) for r in __import__("k3lat").parse_construct("U+E8(-1)+E8(-1)").gram]}))
    f.write_text(json.dumps({"matrix": SWAP}))
    code, rep, err = run(capsys, "theorem5", "--ns", str(ns), "--f", str(f), "--ample",
                         json.dumps([1, 1] + [0] * 16), "--factor-budget", "50")
    assert code == 0 and rep["report"]["conclusion"] == "TRIVIAL_ON_CH2" and rep["exit_code"] == 0
    assert "TRIVIAL_ON_CH2" in err
    ident9 = json.dumps([[int(i == j) for j in range(9)] for i in range(9)])
    code, rep, _ = run(capsys, "theorem5", "--construct", "<4>+E8(-2)", "--f", ident9)
    assert code == 3 and rep["report"]["conclusion"] == "CRITERION_INAPPLICABLE"
    m = [row[:] for row in SWAP]
    m[0][1] = 1
    code, rep, _ = run(capsys, "theorem5", "--construct", "U+E8(-1)+E8(-1)", "--f", json.dumps(m))
    assert code == 4


def test_byte_stable_subprocess(tmp_path):
    args = [sys.executable, "-m", "k3lat.cli", "theorem5", "--construct", "U+E8(-1)+E8(-1)",
            "--f", json.dumps(SWAP), "--factor-budget", "20", "--json-only"]
    a = subprocess.run(args, capture_output=True)
    b = subprocess.run(args, capture_output=True)
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout and a.stdout
