import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gsynth import forests as fo
from gsynth import oracle as orc
from gsynth.errors import Infeasible, InputError, PreconditionError
from gsynth.generators import random_spec
from gsynth.graph import Bigraph
from gsynth.realize import DegreeSpec

K22 = Bigraph(2, 2, ((0, 0), (0, 1), (1, 0), (1, 1)))
K32 = Bigraph(3, 2, tuple((s, t) for s in range(3) for t in range(2)))
STAR = Bigraph(2, 1, ((0, 0), (1, 0)))


def test_check_examples():
    assert fo.check_t2_forest(STAR) is None
    viol = fo.check_t2_forest(K22)
    assert viol.y == (0, 1) and (viol.neighbors, viol.demand) == (2, 3)
    assert fo.check_t2_forest(K32) is None


def test_extract_examples():
    assert sorted(fo.extract_forest(STAR, [2])) == [(0, 0), (1, 0)]
    F = fo.extract_forest(K32)
    assert len(F) == 4 and fo.verify_forest(K32, F, [2, 2]) is None
    with pytest.raises(Infeasible) as exc:
        fo.extract_forest(K22)
    assert exc.value.certificate.y == (0, 1)


def test_forest_parents_encode_the_forest():
    F = fo.extract_forest(K32)
    parents = fo.forest_parents(F, 3, 2)
    assert len(parents) == 5
    edges = {tuple(sorted((v, p))) for v, p in enumerate(parents) if p >= 0}
    assert edges == {tuple(sorted((s, 3 + t))) for s, t in F}


def test_realize_examples():
    res = fo.realize_with_forest(DegreeSpec((2, 1, 1), (2, 2)))
    assert len(res.graph.edges) == 4 and fo.verify_forest(res.graph, res.forest, [2, 2]) is None
    assert res.flags["wooded_hypotheses"]
    cert = fo.check_forest_condition(DegreeSpec((2, 2), (2, 2)), [2, 2])
    assert cert.condition == "t2fax" and cert.x == (0, 1) and (cert.lhs, cert.rhs) == (5, 4)
    res = fo.realize_with_forest(DegreeSpec((1, 1), (2,)), [2])
    assert len(res.forest) == 2


def test_m_for_above_m_t():
    with pytest.raises(PreconditionError):
        fo.check_forest_condition(DegreeSpec((1,), (1,)), [2])


def test_wooded_flag_when_hypotheses_fail():
    res = fo.realize_with_forest(DegreeSpec((1, 1, 1, 1), (2, 2)))
    assert res.flags["wooded_hypotheses"]
    res = fo.realize_with_forest(DegreeSpec((2, 1, 1, 1, 1), (2, 2, 2)), [2, 2, 2])
    assert "wooded_hypotheses" in res.flags


def test_wooded_uniform_examples():
    res = fo.realize_wooded_uniform((1, 1, 1), 3)
    assert res.hypergraph.edges == ((0, 1, 2),) and len(res.trimmed) == 1
    viol = fo.check_wooded_uniform((2, 2), 2)
    assert viol.condition == "tau_above_support"
    res = fo.realize_wooded_uniform((2, 1, 1), 2)
    assert sorted(res.hypergraph.edges) == [(0, 1), (0, 2)]
    assert fo.check_wooded_uniform((1, 1, 1), 2).condition == "divisibility"
    assert fo.check_wooded_uniform((3, 1, 1, 1), 2) is None
    assert fo.check_wooded_uniform((4, 1, 1), 2).condition == "degree_above_tau"


def test_wooded_uniform_needs_size_two():
    with pytest.raises(PreconditionError):
        fo.check_wooded_uniform((1,), 1)


def test_hypergraph_validation():
    with pytest.raises(InputError):
        fo.Hypergraph(3, ((0,),))
    with pytest.raises(InputError):
        fo.Hypergraph(2, ((0, 2),))


def _hypergraphs():
    for n in range(2, 6):
        cands = [e for r in range(2, n + 1) for e in itertools.combinations(range(n), r)]
        for j in range(1, 4):
            for edges in itertools.combinations_with_replacement(cands, j):
                yield n, edges


def test_wooded_union_rule_biconditional():
    rng = random.Random(9)
    cases = list(_hypergraphs())
    for n, edges in rng.sample(cases, 1500):
        direct = orc.is_wooded(n, edges)
        assert direct == orc.union_rule_wooded(n, edges)
        assert fo.Hypergraph(n, edges).is_wooded() == direct


def test_wooded_union_rule_four_edges():
    rng = random.Random(10)
    for _ in range(300):
        n = rng.randint(3, 5)
        edges = [tuple(sorted(rng.sample(range(n), rng.randint(2, 3)))) for _ in range(4)]
        assert orc.is_wooded(n, edges) == orc.union_rule_wooded(n, edges) == fo.Hypergraph(n, edges).is_wooded()


@given(st.integers(0, 2**32))
@settings(max_examples=200, deadline=None)
def test_general_forest_biconditional(seed):
    # m_for arbitrary with m_for <= m_T, no size or degree hypotheses on S and T
    rng = random.Random(seed)
    s, t = rng.randint(1, 4), rng.randint(1, 3)
    m = random_spec(rng, s, t)
    m_for = [rng.randint(0, x) for x in m.m_t]
    ours = fo.check_forest_condition(m, m_for) is None
    assert ours == orc.oracle_bigraphs(s, t, orc.forest_pred(m_for), m=m).exists
    if ours:
        res = fo.realize_with_forest(m, m_for)
        assert fo.verify_forest(res.graph, res.forest, m_for) is None
        assert res.graph.degrees_s() == list(m.m_s) and res.graph.degrees_t() == list(m.m_t)


@given(st.integers(0, 2**32))
@settings(max_examples=200, deadline=None)
def test_generalized_forest_check_matches_oracle(seed):
    rng = random.Random(seed)
    s, t = rng.randint(1, 5), rng.randint(1, 4)
    cells = [(i, j) for i in range(s) for j in range(t)]
    G = Bigraph(s, t, tuple(rng.sample(cells, rng.randint(0, min(10, len(cells))))))
    m_for = [rng.randint(0, 3) for _ in range(t)]
    ours = fo.check_t2_forest(G, m_for) is None
    assert ours == orc.has_forest(G, m_for)
    if ours:
        F = fo.extract_forest(G, m_for)
        assert fo.verify_forest(G, F, m_for) is None


def test_verify_forest_rejects_cycle():
    assert fo.verify_forest(K22, K22.edges, [2, 2]) is not None


@given(st.integers(0, 2**32))
@settings(max_examples=150, deadline=None)
def test_forest_condition_shortcut_matches_full_sweep(seed):
    from gsynth import realize as rz

    rng = random.Random(seed)
    s, t = rng.randint(1, 4), rng.randint(1, 4)
    m = random_spec(rng, s, t)
    if rz.check_gale_ryser(m) is not None:
        return
    m_for = [rng.randint(0, x) for x in m.m_t]
    cert = fo.check_forest_condition(m, m_for)
    worst = orc.oracle_condition("t2fax", s, t, m=m, m_for=m_for)
    worst = worst[0] if worst is not None else 0
    assert (cert is None) == (worst <= 0)
    if cert is not None:
        assert cert.violation == worst
        Z = sum(1 << v for v in cert.parts[0])
        X = sum(1 << v for v in cert.x)
        Y = sum(1 << v for v in cert.y)
        assert fo.forest_condition_sides(m, m_for, X, Y, Z) == (cert.lhs, cert.rhs)
