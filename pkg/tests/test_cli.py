import json
import subprocess
import sys

import pytest

from conftest import counterexample_p
from gsynth import branchings as br
from gsynth import realize as rz
from gsynth.cli import main, run
from gsynth.graph import Bigraph, Digraph, max_matching
from gsynth.jsonio import bigraph_from_json, load_json

PATH = '{"n": 3, "arcs": [[0, 1], [1, 2]]}'


def _graph(doc):
    return bigraph_from_json(doc["witness"])


def test_termrank_example():
    code, doc = run(["termrank", "--spec", '{"m_s":[1,1],"m_t":[1,1]}', "--ell", "2"])
    assert code == 0 and doc["status"] == "feasible"
    G = _graph(doc)
    assert len(G.edges) == 2 and max_matching(G)[1] == 2
    assert "seconds" in doc["stats"] and doc["command"] == "termrank"


def test_counterexample_from_files(tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"m_s": [4, 4, 3, 2], "m_t": [4, 4, 3, 2]}))
    p = tmp_path / "p.json"
    p.write_text(json.dumps(counterexample_p().to_json()))
    code, doc = run(["check", "cover-full", "--spec", str(spec), "--p", str(p)])
    assert code == 2
    cert = doc["certificate"]
    assert (cert["lhs"], cert["rhs"]) == (14, 13)
    assert "witness" not in doc


def test_branching_sizes_infeasible():
    code, doc = run(["branchings", "--mode", "sizes", "--digraph", PATH, "--k", "2", "--mu", "2,2"])
    assert code == 2
    assert sorted(doc["certificate"]["parts"]) == [[0], [1], [2]]


def test_branching_witness_round_trip():
    arcs = "[[0,1],[1,2],[0,2],[2,1]]"
    code, doc = run(["branchings", "--digraph", '{"n":3,"arcs":%s}' % arcs, "--k", "2", "--mu", "2,2"])
    assert code == 0
    D = Digraph(3, ((0, 1), (1, 2), (0, 2), (2, 1)))
    packing = [br.Branching(sum(1 << v for v in B["roots"]), tuple(map(tuple, B["arcs"]))) for B in doc["witness"]]
    assert br.verify_packing(D, packing) is None


def test_malformed_json_reports_position():
    code, doc = run(["check", "gale-ryser", "--spec", '{"m_s": [1,'])
    assert code == 1
    msg = doc["error"]["message"]
    assert "line" in msg and "column" in msg


def test_usage_error():
    code, doc = run(["nonsense"])
    assert code == 1 and doc["error"]["type"] == "usage"


def test_precondition_error_exit_code():
    code, doc = run(["check", "gale-ryser", "--spec", '{"m_s":[1],"m_t":[2]}'])
    assert code == 1 and doc["error"]["type"] == "PreconditionError"


def test_input_document_fills_flags():
    code, doc = run(["realize", "gale-ryser", "--input", '{"spec": {"m_s":[2,2],"m_t":[2,2]}}'])
    assert code == 0 and len(_graph(doc).edges) == 4


def test_certificate_flag_off():
    code, doc = run(["check", "gale-ryser", "--spec", '{"m_s":[2],"m_t":[2]}', "--no-certificate"])
    assert code == 2 and set(doc["certificate"]) == {"condition"}


def test_matrix_format():
    code, doc = run(["termrank", "--spec", '{"m_s":[2,1],"m_t":[1,1,1]}', "--ell", "2", "--format", "matrix"])
    assert code == 0
    assert doc["witness"]["row_sums"] == [2, 1] and doc["witness"]["term_rank"] == 2


def test_bounds_witness_round_trip():
    bounds = '{"f_s":[0,0],"g_s":[1,1],"f_t":[0,0],"g_t":[1,1],"alpha":2,"beta":2}'
    code, doc = run(["realize", "bounds-edges", "--bounds", bounds])
    assert code == 0
    G = _graph(doc)
    b = rz.DegreeBounds((0, 0), (1, 1), (0, 0), (1, 1), 2, 2)
    assert rz.verify_bounds(G, b)


def test_forest_and_wooded_commands():
    code, doc = run(["forest", "--spec", '{"m_s":[2,1,1],"m_t":[2,2]}'])
    assert code == 0 and len(doc["witness"]["forest"]) == 4
    code, doc = run(["forest", "--graph", '{"s":2,"t":2,"edges":[[0,0],[0,1],[1,0],[1,1]]}'])
    assert code == 2 and doc["certificate"]["y"] == [0, 1]
    code, doc = run(["wooded", "--m-s", "2,1,1", "--ell", "2"])
    assert code == 0 and sorted(doc["witness"]["hypergraph"]["edges"]) == [[0, 1], [0, 2]]
    code, doc = run(["wooded", "--m-s", "2,2", "--ell", "2"])
    assert code == 2 and doc["certificate"]["condition"] == "tau_above_support"


def test_oracle_command(tmp_path):
    code, doc = run(["oracle", "pack-sizes", "--digraph", PATH, "--mu", "2,2", "--k", "2"])
    assert code == 2
    code, doc = run(["oracle", "termrank", "--bounds",
                     '{"f_s":[0,0],"g_s":[2,2],"f_t":[0,0],"g_t":[2,2],"alpha":null,"beta":1}', "--ell", "2"])
    assert code == 2


def test_infinite_bounds_in_json():
    bounds = '{"f_s":["-inf",0],"g_s":["+inf",null],"f_t":[0,0],"g_t":[null,null],"alpha":"−inf","beta":"+inf"}'
    code, doc = run(["check", "bounds", "--bounds", bounds])
    assert code == 0


def test_selftest_command():
    code, doc = run(["selftest", "--rounds", "10", "--seed", "3"])
    assert code == 0 and doc["witness"]["failures"] == []


def test_output_file(tmp_path, capsys):
    out = tmp_path / "out.json"
    code = main(["check", "gale-ryser", "--spec", '{"m_s":[1],"m_t":[1]}', "--output", str(out)])
    assert code == 0
    assert load_json(str(out))["status"] == "feasible"
    assert capsys.readouterr().out == ""


@pytest.mark.slow
def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "gsynth", "check", "gale-ryser", "--spec", '{"m_s":[2],"m_t":[2]}'],
        capture_output=True, text=True,
    )
    assert proc.returncode == 2
    doc = json.loads(proc.stdout)
    assert doc["status"] == "infeasible" and doc["certificate"]["lhs"] == 3


def test_every_witness_reverifies():
    code, doc = run(["realize", "cover-full", "--spec", '{"m_s":[2,1,1],"m_t":[2,2]}',
                     "--p", '{"kind":"forest","m_for":[2,2]}'])
    assert code == 0
    G = _graph(doc)
    assert isinstance(G, Bigraph) and G.degrees_s() == [2, 1, 1] and G.degrees_t() == [2, 2]
