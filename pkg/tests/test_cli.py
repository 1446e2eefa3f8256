"""
Tests for the `nilop` command line.
"""

import json

import pytest

from nilop.cli import build_parser, run
from nilop.modules.pair import picket
from nilop.utils.parser import serialize_pair

E22 = '{"n":3,"p":2,"lambda":[3,1],"gens":[[0,1,0,1]]}'


@pytest.fixture
def e22_file(tmp_path):
    path = tmp_path / "e22.json"
    path.write_text(E22)
    return str(path)


def test_invariants(e22_file, capsys):
    """Invariants are one compact JSON line."""
    assert run(["invariants", "--file", e22_file]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["uwb"] == [2, 2, 2]
    assert doc["pr"] == ["1", "1"]
    assert doc["par"] == [[2], [3, 1], [2]]


def test_dual_and_tau(e22_file, tmp_path, capsys):
    """dual keeps E_2^2's triple; τ^6 of a picket is reported as fixed."""
    assert run(["dual", "--file", e22_file]) == 0
    assert json.loads(capsys.readouterr().out)["par"] == [[2], [3, 1], [2]]

    path = tmp_path / "picket.json"
    path.write_text(serialize_pair(picket(1, 2, 3, 2)))
    assert run(["tau", "--file", str(path), "--power", "6", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["tau6_fixed"] is True
    assert doc["par"] == [[1], [2], [1]]
    assert list(doc)[:4] == ["n", "p", "lambda", "gens"]


def test_tau_summary(e22_file, capsys):
    """Without --json, tau prints the partition triple and uwb of the result."""
    assert run(["tau", "--file", e22_file, "--power", "2"]) == 0
    assert capsys.readouterr().out.strip() == "par ([2],[3,1],[2]) uwb (2, 2, 2)"
    assert run(["tau", "--file", e22_file, "--power", "6"]) == 0
    assert capsys.readouterr().out.strip().endswith("tau6_fixed true")


def test_decompose_and_isom(e22_file, capsys):
    """An indecomposable decomposes into itself and is isomorphic to itself."""
    assert run(["decompose", "--file", e22_file]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 1
    assert run(["isom", "--file", e22_file, "--other", e22_file]) == 0
    assert json.loads(capsys.readouterr().out) == {"isomorphic": True}


def test_enumerate(capsys):
    """S(2) has five indecomposables."""
    assert run(["enumerate", "--n", "2", "--vmax", "2"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 5
    assert all("par" in json.loads(line) for line in lines)


def test_count(capsys):
    """Pickets of S(3)."""
    assert run(["count", "--kind", "pickets", "--n", "3"]) == 0
    assert capsys.readouterr().out.strip() == "9"


def test_family(capsys):
    """A parameterless width-6 object and a graded operation on a family."""
    assert run(["family", "--name", "width6_c"]) == 0
    assert json.loads(capsys.readouterr().out)["uwb"] == [2, 3, 1]
    assert run(["family", "--name", "standard_s6", "--c", "1,1", "--op", "G_z", "--z", "6"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["lambda"] == [5, 4, 2]


def test_filtration(e22_file, capsys):
    """Telescope factors of E_2^2."""
    assert run(["filtration", "--file", e22_file]) == 0
    assert json.loads(capsys.readouterr().out)["factors"] == [[[1], [3], [2]], [[1], [1], []]]


def test_roots(capsys):
    """The root table prints 120 rows and has no differences."""
    assert run(["roots"]) == 0
    assert len(capsys.readouterr().out.strip().splitlines()) == 120
    assert run(["roots", "--diff"]) == 0
    assert capsys.readouterr().out.strip() == "no differences"


def test_triangle_svg(tmp_path, capsys):
    """An SVG document, with an optional overlay."""
    overlay = tmp_path / "overlay.json"
    overlay.write_text(json.dumps({"points": [[1, 1, "E"]]}))
    assert run(["triangle-svg", "--n", "3", "--overlay", str(overlay)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("<?xml")
    assert "<circle" in out


def test_accept_subset(capsys):
    """A fast subset of the acceptance checks passes."""
    assert run(["accept", "--only", "tau_partitions", "bijections", "root_table"]) == 0
    assert "3/3 checks passed" in capsys.readouterr().out


def test_errors_exit_with_one(tmp_path, capsys):
    """Bad input and missing files exit with 1 and a message on stderr."""
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 3}')
    assert run(["invariants", "--file", str(bad)]) == 1
    assert "missing keys" in capsys.readouterr().err
    assert run(["invariants", "--file", str(tmp_path / "nope.json")]) == 1
    assert run(["family", "--name", "standard_s6", "--c", "a,b"]) == 1


def test_budget_exceeded_exits_with_two(capsys):
    """An exhausted scan budget has its own exit code."""
    assert run(["--budget", "1", "enumerate", "--n", "3", "--vmax", "4"]) == 2
    assert "budget exceeded" in capsys.readouterr().err


def test_parser_rejects_unknown_choices():
    """argparse validates kinds and commands."""
    with pytest.raises(SystemExit):
        build_parser().parse_args(["count", "--kind", "triangles"])
    with pytest.raises(SystemExit):
        build_parser().parse_args(["frobnicate"])
