import json
import subprocess
import sys

import pytest

from graphfactor import cli, formats
from graphfactor.formats import graph_from_dict
from graphfactor.graph import SimpleGraph, grid_graph, make_complete_bipartite, make_cycle, make_path
from graphfactor.product import Factorization, verify_factorization

CIRCULANT_12 = SimpleGraph.from_edges(12, [(i, (i + d) % 12) for i in range(12) for d in (1, 2)])


@pytest.fixture
def write(tmp_path):
    def _write(g, name, fmt="json"):
        path = tmp_path / name
        path.write_text(formats.to_json(g) if fmt == "json" else formats.to_graph6(g) + "\n")
        return str(path)

    return _write


def run(capsys, *argv):
    code = cli.run([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


class TestVerify:
    def test_k22(self, capsys, write):
        k22 = make_complete_bipartite(2, 2)
        m = SimpleGraph.from_edges(4, [(0, 1), (2, 3)])
        code, _, err = run(capsys, "verify", write(k22, "a"), write(m, "b"), write(k22, "c"))
        assert code == 0 and "verified" in err

    def test_cube_of_c4_fails(self, capsys, write):
        c4 = make_cycle(4)
        code, _, err = run(capsys, "verify", write(c4, "a"), write(c4, "b"), write(c4, "c"), "--verbose")
        assert code == 1 and "residual" in err


class TestFactor:
    def test_k22_certificates_reverify(self, capsys, write):
        k22 = make_complete_bipartite(2, 2)
        code, out, err = run(capsys, "factor", write(k22, "g"), "--all")
        assert code == 0 and json.loads(err)["verdict"] == "factorable"
        certs = json.loads(out)
        assert certs
        for d in certs:
            f = verify_factorization(k22, graph_from_dict(d["H"]), graph_from_dict(d["K"]))
            assert isinstance(f, Factorization)

    def test_path_is_negative(self, capsys, write):
        code, out, err = run(capsys, "factor", write(make_path(3), "g"))
        assert code == 1 and json.loads(out) == []
        assert json.loads(err)["trail"]

    def test_budget_exhaustion(self, capsys, write):
        path = write(CIRCULANT_12, "g")
        code, _, err = run(capsys, "factor", path, "--budget-nodes", "10", "--max-vertices", "12", "--method", "oracle")
        assert code == 3 and json.loads(err)["verdict"] == "exhausted"

    def test_stats_flag(self, capsys, write):
        code, _, err = run(capsys, "factor", write(make_cycle(4), "g"), "--stats")
        assert code == 0 and "stats" in json.loads(err)


class TestClassify:
    def test_c4_is_prime(self, capsys, write):
        code, out, _ = run(capsys, "classify", write(make_cycle(4), "g"))
        assert code == 0 and json.loads(out)["status"] == "prime-matching"

    def test_unknown(self, capsys, write):
        code, out, _ = run(capsys, "classify", write(CIRCULANT_12, "g"), "--budget-nodes", "10")
        assert code == 3 and json.loads(out)["status"] == "unknown"


def test_product_and_diamond(capsys, write):
    k22 = make_complete_bipartite(2, 2)
    m = SimpleGraph.from_edges(4, [(0, 1), (2, 3)])
    code, out, _ = run(capsys, "product", write(m, "h"), write(k22, "k"))
    assert code == 0 and json.loads(out)
    code, out, _ = run(capsys, "diamond", write(m, "h"), write(k22, "k"))
    assert code == 0 and json.loads(out) == {"diamond": True, "violations": []}
    code, _, _ = run(capsys, "diamond", write(k22, "h"), write(k22, "k"))
    assert code == 1


def test_aut_prints_cycle_notation(capsys, write):
    code, out, err = run(capsys, "aut", write(make_cycle(4), "g"), "--involutions")
    # the swaps (0 1)(2 3) and (0 3)(1 2) fix an edge, so only the half-turn remains
    assert code == 0 and out.splitlines() == ["(0 2)(1 3)"] and "permutation" in err
    code, out, _ = run(capsys, "aut", write(make_cycle(4), "g"))
    assert len(out.splitlines()) == 8
    code, _, _ = run(capsys, "aut", write(make_cycle(13), "g"))
    assert code == 3


def test_construct(capsys, write):
    code, out, _ = run(capsys, "construct", "grid", 2, 4)
    d = json.loads(out)
    assert code == 0 and graph_from_dict(d["G"]) == grid_graph(2, 4)
    code, _, err = run(capsys, "construct", "grid", 3, 4)
    assert code == 1 and "even" in err
    code, out, _ = run(capsys, "construct", "torus", 3, 3, "--dot")
    assert code == 0 and out.startswith("graph")
    code, _, _ = run(capsys, "construct", "torus", 2, 5)
    assert code == 2
    two = SimpleGraph.from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5)])
    code, out, _ = run(capsys, "construct", "double-forest", write(two, "f"))
    assert code == 0 and json.loads(out)["provenance"]


def test_census_output_is_byte_deterministic(capsys, tmp_path):
    first, second = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    assert run(capsys, "census", 5, "--out", first)[0] == 0
    assert run(capsys, "census", 5, "--out", second)[0] == 0
    assert first.read_bytes() == second.read_bytes()
    assert len(first.read_text().splitlines()) == 21
    assert run(capsys, "census", 8)[0] == 2


def test_convert_round_trip(capsys, write):
    g = grid_graph(2, 3)
    code, out, _ = run(capsys, "convert", "graph6", write(g, "g"))
    assert code == 0
    code, out, _ = run(capsys, "convert", "json", write(formats.from_graph6(out.strip()), "h"))
    assert formats.from_json(out) == g
    code, out, _ = run(capsys, "convert", "dot", write(g, "g6", fmt="graph6"))
    assert code == 0 and "--" in out


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "factor", tmp_path / "missing.json")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "classify", bad)[0] == 2


def test_stdin_through_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "graphfactor", "factor", "-"],
        input=formats.to_json(make_complete_bipartite(2, 2)),
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)
