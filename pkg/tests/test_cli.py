from __future__ import annotations

import json
import subprocess
import sys

import pytest

from confluent.cli import main
from confluent.graph import parse_graph


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def write(tmp_path, capsys):
    def _write(name, *gen_args):
        path = tmp_path / name
        assert main(["generate", *gen_args, "-o", str(path)]) == 0
        capsys.readouterr()
        return str(path)

    return _write


def test_generate_stdout(capsys):
    code, out, _ = run(capsys, "generate", "hypercube", "4")
    g = parse_graph(out)
    assert code == 0 and (g.n, g.m) == (16, 32)


def test_generate_sources(capsys):
    code, out, _ = run(capsys, "generate", "interval", "0,2", "1,4", "3,5", "--source")
    assert code == 0 and out.splitlines() == ["0 2", "1 4", "3 5"]
    code, out, _ = run(capsys, "generate", "cograph", "~U(a, b)", "--source")
    assert code == 0 and "U(" in out
    code, out, _ = run(capsys, "generate", "cograph", "~U(a, b)")
    assert parse_graph(out).labels == {0: "a", 1: "b"}


def test_generate_random_tree_uses_seed(capsys, monkeypatch):
    monkeypatch.setenv("CONFLUENT_SEED", "7")
    a = run(capsys, "generate", "random_tree", "9")[1]
    b = run(capsys, "generate", "random_tree", "9")[1]
    assert a == b


def test_generate_usage_errors(capsys):
    assert run(capsys, "generate", "complete", "x")[0] == 2
    assert run(capsys, "generate", "complete", "0")[0] == 2
    assert run(capsys, "generate", "petersen", "--source")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["generate", "nonsense"])
    assert exc.value.code == 2


def test_check_planar(capsys, write):
    assert run(capsys, "check", write("k4.g", "complete", "4"), "--planar")[:2] == (0, "planar\n")
    assert run(capsys, "check", write("k5.g", "complete", "5"), "--planar")[:2] == (1, "non-planar\n")


def test_check_oracle(capsys, write, tmp_path):
    witness = tmp_path / "w.json"
    code, out, _ = run(capsys, "check", write("k5.g", "complete", "5"), "--oracle", "--witness", str(witness))
    assert code == 0 and out.startswith("reducible")
    assert json.loads(witness.read_text())["status"] == "planar"
    code, out, _ = run(capsys, "check", write("q4.g", "hypercube", "4"), "--oracle")
    assert code == 1 and out.splitlines()[0] == "not-reducible"
    code, out, _ = run(capsys, "check", write("k6.g", "complete", "6"), "--oracle", "--max-depth", "0")
    assert code == 1 and out.startswith("inconclusive(depth-budget)")


def test_enumerate(capsys, write):
    code, out, _ = run(capsys, "enumerate", write("k33.g", "complete_bipartite", "3", "3"), "--bicliques")
    assert code == 0 and out == "0 1 2 | 3 4 5\n"
    code, out, _ = run(capsys, "enumerate", write("k5.g", "complete", "5"), "--cliques", "--min-size", "4")
    assert out == "0 1 2 3 4\n"
    assert run(capsys, "enumerate", write("k5b.g", "complete", "5"), "--directed-bicliques")[0] == 2


def test_enumerate_directed(capsys, tmp_path):
    path = tmp_path / "d.g"
    path.write_text("4 4 directed\n0 2\n0 3\n1 2\n1 3\n")
    code, out, _ = run(capsys, "enumerate", str(path), "--directed-bicliques")
    assert code == 0 and out == "0 1 | 2 3\n"


def test_reduce(capsys, write, tmp_path):
    log = tmp_path / "log.json"
    code, _, _ = run(capsys, "reduce", write("k5.g", "complete", "5"), "-o", str(log))
    data = json.loads(log.read_text())
    assert code == 0 and data["status"] == "planar" and len(data["steps"]) == 1
    code, out, err = run(capsys, "reduce", write("pv.g", "petersen_minus_vertex"))
    assert code == 1 and json.loads(out)["status"] == "failed"


def test_draw_and_failure(capsys, write, tmp_path):
    out_svg = tmp_path / "k5.svg"
    code, _, _ = run(capsys, "draw", write("k5.g", "complete", "5"), "-o", str(out_svg))
    assert code == 0 and out_svg.read_text().startswith("<?xml")
    code, out, err = run(capsys, "draw", write("pv.g", "petersen_minus_vertex"))
    assert code == 1 and "heuristic failed" in err and "check" in err and "--oracle" in err


@pytest.mark.parametrize(
    "construction, gen",
    [
        ("interval", ["interval", "0,5", "1,6", "2,7", "3,8", "4,9", "--source"]),
        ("cograph", ["cograph", "~U(~U(a, b), ~U(~U(c, d), ~U(e, f), g))", "--source"]),
        ("cotree", ["tree", "3", "3", "4", "4"]),
        ("cocycle", ["cycle", "8"]),
    ],
)
def test_draw_constructions(capsys, tmp_path, construction, gen):
    src = tmp_path / "in.txt"
    assert main(["generate", *gen, "-o", str(src)]) == 0
    net = tmp_path / "net.json"
    code, out, _ = run(capsys, "draw", str(src), "--construction", construction, "--network", str(net))
    assert code == 0 and "</svg>" in out
    assert json.loads(net.read_text())["nodes"]


def test_bad_input_is_usage_error(capsys, tmp_path):
    path = tmp_path / "bad.g"
    path.write_text("2 1 undirected\n0 0\n")
    code, _, err = run(capsys, "draw", str(path))
    assert code == 2 and "line 2" in err
    assert run(capsys, "check", str(tmp_path / "missing.g"), "--planar")[0] == 2


@pytest.mark.parametrize(
    "family, draw_args",
    [
        (["complete", "6"], []),
        (["complete_bipartite", "3", "4"], []),
        (["interval", "0,3", "1,4", "2,5", "2,6", "3,3"], []),
        (["interval", "0,3", "1,4", "2,5", "2,6", "3,3", "--source"], ["--construction", "interval"]),
        (["tree", "0", "0", "1"], ["--construction", "cotree"]),
        (["cograph", "~U(a, U(b, c), ~U(d, e))", "--source"], ["--construction", "cograph"]),
        (["cycle", "7"], ["--construction", "cocycle"]),
    ],
)
def test_generate_pipe_draw(family, draw_args):
    gen = subprocess.run(
        [sys.executable, "-m", "confluent", "generate", *family], capture_output=True, text=True, check=True
    )
    draw = subprocess.run(
        [sys.executable, "-m", "confluent", "draw", "-", *draw_args], input=gen.stdout, capture_output=True, text=True
    )
    assert draw.returncode == 0, draw.stderr
    assert draw.stdout.rstrip().endswith("</svg>")
