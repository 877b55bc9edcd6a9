import json
import subprocess
import sys

import pytest
from hypothesis import given, settings

from cluster_finite.cli import main
from cluster_finite.errors import ParseError
from cluster_finite.io import MatrixDocument, parse_edge_list, parse_matrix, render_json, render_text
from cluster_finite.roots import bn_matrix

from helpers import skew_matrices


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return _write


def bn_file(write, n):
    return write(f"bn{n}.txt", render_text(MatrixDocument(bn_matrix(n).b)))


PATH3 = "3\n0 1 0\n-1 0 1\n0 -1 0\n"


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_recognize_exit_codes(capsys, write):
    code, out, _ = run(capsys, "recognize", bn_file(write, 8))
    assert code == 0 and out.splitlines()[0] == "Finite, type E8"
    code, out, _ = run(capsys, "recognize", bn_file(write, 9))
    assert code == 1 and out.startswith("NotFinite (companion not positive")
    code, _, err = run(capsys, "recognize", write("garbage.txt", "3\n0 1 x\n"))
    assert code == 2 and "line 2, column 5" in err


def test_recognize_non_skew_symmetrizable(capsys, write):
    code, _, err = run(capsys, "recognize", write("bad.txt", "2\n0 1\n1 0\n"))
    assert code == 2 and "not skew-symmetrizable" in err


def test_recognize_json(capsys, write):
    code, out, _ = run(capsys, "--json", "recognize", bn_file(write, 7))
    d = json.loads(out)
    assert code == 0 and d["verdict"] == "Finite" and d["type"] == "E7"
    assert d["schema"].endswith("/1")
    # flags are also accepted after the subcommand
    code2, out2, _ = run(capsys, "recognize", bn_file(write, 7), "--json")
    assert json.loads(out2)["type"] == "E7"


def test_recognize_non_oriented_cycle(capsys, write):
    f = write("sq.txt", "4\n0 1 0 1\n-1 0 1 0\n0 -1 0 1\n-1 0 -1 0\n")
    code, out, _ = run(capsys, "recognize", f)
    assert code == 1 and "1-2-3-4 is not cyclically oriented" in out


def test_mutate(capsys, write):
    f = write("p.txt", PATH3)
    code, out, _ = run(capsys, "mutate", f, "1", "1")
    assert code == 0 and out == PATH3
    code, out, _ = run(capsys, "mutate", f, "2")
    assert out == "3\n0 -1 1\n1 0 -1\n-1 1 0\n"
    code, _, err = run(capsys, "mutate", f, "99")
    assert code == 2 and "out of range" in err


def test_orient(capsys, write):
    k4 = write("k4.txt", "1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n")
    code, out, _ = run(capsys, "orient", k4)
    assert code == 1 and out.startswith("not cyclically orientable")
    assert out.count("False") == 4
    tri = write("tri.txt", "1 2\n2 3\n3 1\n")
    code, out, _ = run(capsys, "--json", "orient", tri)
    d = json.loads(out)
    assert code == 0 and d["orientable"]
    assert [s for *_, s in d["signs"]].count(-1) % 2 == 1
    forest = write("forest.txt", "6\n1 2\n2 3\n4 5 2\n")
    code, out, _ = run(capsys, "--json", "orient", forest)
    d = json.loads(out)
    assert d["orientable"] and all(s == 1 for *_, s in d["signs"])


def test_orient_parse_errors(capsys, write):
    code, _, err = run(capsys, "orient", write("e.txt", "1 2\n2 two\n"))
    assert code == 2 and "line 2, column 3" in err
    code, _, err = run(capsys, "orient", write("e.txt", "1 2\n1 2\n"))
    assert code == 2


def test_diagram_and_cycles(capsys, write):
    f = write("p.txt", PATH3)
    code, out, _ = run(capsys, "diagram", f, "--dot")
    assert code == 0 and "1 -> 2;" in out and out.startswith("digraph")
    code, out, _ = run(capsys, "cycles", bn_file(write, 5))
    assert code == 0 and out.startswith("3 chordless cycle(s)")


def test_companion_and_type(capsys, write):
    code, out, _ = run(capsys, "companion", bn_file(write, 9))
    assert code == 1 and "not positive" in out
    code, out, _ = run(capsys, "type", bn_file(write, 6), "--cross-check")
    assert code == 0 and out.startswith("E6 (cross-checked")
    code, out, _ = run(capsys, "type", bn_file(write, 10))
    assert code == 1


def test_explore_and_env_cap(capsys, write, monkeypatch):
    f = write("p.txt", PATH3)
    code, out, _ = run(capsys, "explore", f)
    assert code == 0 and out.startswith("ClassClosed")
    monkeypatch.setenv("CLUSTER_FINITE_MAX_VISITED", "1")
    code, out, _ = run(capsys, "explore", f)
    assert code == 3 and out.startswith("CapExceeded")
    code, out, _ = run(capsys, "explore", f, "--max-visited", "1000")
    assert code == 0
    code, out, _ = run(capsys, "--json", "explore", write("k.txt", "2\n0 2\n-2 0\n"))
    assert code == 1 and json.loads(out)["status"] == "WeightExceeded"


def test_selftest(capsys):
    assert run(capsys, "selftest", "table1")[0] == 0
    code, out, _ = run(capsys, "--seed", "3", "selftest", "criteria", "--max-vertices", "4", "--random", "20")
    assert code == 0 and out.startswith("PASS")
    code, out, _ = run(capsys, "selftest", "oracle", "--n", "3")
    assert code == 0 and "0 disagreements" in out


def test_missing_file(capsys):
    code, _, err = run(capsys, "recognize", "/nonexistent/matrix.txt")
    assert code == 2 and "cannot read" in err


def test_module_entry_point(tmp_path):
    f = tmp_path / "b.txt"
    f.write_text(render_text(MatrixDocument(bn_matrix(4).b)))
    proc = subprocess.run([sys.executable, "-m", "cluster_finite", "recognize", "--quiet", str(f)], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "Finite, type D4"


# formats


def test_text_and_json_round_trip_examples():
    text = "# name: demo\n# d: 2 1\n2\n0 1\n-2 0\n"
    doc = parse_matrix(text)
    assert doc.name == "demo" and doc.symmetrizer == (2, 1)
    assert render_text(doc) == text
    js = render_json(doc)
    assert parse_matrix(js) == doc
    assert render_json(parse_matrix(js)) == js


@settings(max_examples=100)
@given(skew_matrices(max_n=6))
def test_round_trip(B):
    doc = MatrixDocument(B.b)
    assert render_text(parse_matrix(render_text(doc))) == render_text(doc)
    assert parse_matrix(render_json(doc)) == doc


@pytest.mark.parametrize(
    "text, line, col",
    [
        ("", 1, 1),
        ("2 3\n", 1, 3),
        ("2\n0 1\n", 3, 1),
        ("2\n0 1 2\n-1 0\n", 2, 5),
        ("2\n0 1\n-1 0\n5 5\n", 4, 1),
        ('{"n": 2, "rows": [[0, 1], [-1, 0]]', 1, 35),
        ('{"n": 2,\n "rows": [[0, 1], [-1 0]]}', 2, 23),
    ],
)
def test_parse_error_positions(text, line, col):
    with pytest.raises(ParseError) as exc:
        parse_matrix(text)
    assert (exc.value.line, exc.value.column) == (line, col)


def test_edge_list_format():
    g = parse_edge_list("# triangle\n4\n1 2\n2 3 2\n1 3 2\n")
    assert g.n == 4 and g.weight(1, 2) == 2 and g.weight(0, 1) == 1
    with pytest.raises(ParseError):
        parse_edge_list("1 1\n")
    with pytest.raises(ParseError):
        parse_edge_list("3\n1 4\n")
