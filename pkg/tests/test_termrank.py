import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gsynth import oracle as orc
from gsynth import realize as rz
from gsynth import termrank as tr
from gsynth.errors import Infeasible, PreconditionError
from gsynth.generators import random_bounds, random_spec
from gsynth.graph import Bigraph, max_matching
from gsynth.realize import DegreeBounds, DegreeSpec

INF = float("inf")


def test_check_examples(m_counter):
    assert tr.check_termrank(DegreeSpec((1, 1), (1, 1)), 2) is None
    cert = tr.check_termrank(DegreeSpec((1, 1), (2, 0)), 2)
    assert (cert.x, cert.y, cert.lhs, cert.rhs) == ((), (0,), 3, 2)
    assert tr.check_termrank(m_counter, 4) is None


def test_ell_range():
    with pytest.raises(PreconditionError):
        tr.check_termrank(DegreeSpec((1, 1), (2,)), 2)


def test_check_bounds_examples():
    b = DegreeBounds((0, 0, 0), (INF,) * 3, (0, 0), (INF, INF))
    for ell in range(3):
        assert tr.check_termrank_bounds(b, ell) is None
    b = DegreeBounds((0, 0), (1, 1), (2, 2, 2), (INF,) * 3)
    assert tr.check_termrank_bounds(b, 0).condition == "termrank_ftgs"
    b = DegreeBounds((0, 0), (2, 2), (0, 0), (2, 2), -INF, 1)
    cert = tr.check_termrank_bounds(b, 2)
    assert cert.condition == "termrank_fbeta" and (cert.lhs, cert.rhs) == (2, 1)


def test_construct_examples():
    G = tr.construct_termrank(DegreeSpec((1, 1), (1, 1)), 2)
    assert sorted(G.edges) in ([(0, 0), (1, 1)], [(0, 1), (1, 0)])
    G = tr.construct_termrank(DegreeSpec((2, 2), (2, 2)), 2)
    assert len(G.edges) == 4
    b = DegreeBounds((1,) * 3, (2,) * 3, (1,) * 3, (2,) * 3, 3, 4)
    G = tr.construct_termrank(b, 3)
    assert max_matching(G)[1] == 3 and 3 <= len(G.edges) <= 4
    assert all(1 <= d <= 2 for d in G.degrees_s() + G.degrees_t())


def test_construct_infeasible():
    with pytest.raises(Infeasible):
        tr.construct_termrank(DegreeSpec((1, 1), (2, 0)), 2)


def test_interchange_examples():
    assert tr.interchange_step(Bigraph(2, 2, ((0, 0), (0, 1), (1, 0)))) is None
    assert tr.interchange_step(Bigraph(2, 4, ((0, 0), (0, 1), (1, 2), (1, 3)))) is None
    assert tr.interchange_step(Bigraph(2, 2, ((0, 0), (1, 0)))) is None


def test_interchange_raises_nu():
    G = Bigraph(2, 2, ((0, 0), (1, 0)), simple=True)
    assert tr.interchange_step(G) is None
    G = Bigraph(3, 3, ((0, 0), (0, 1), (1, 0), (1, 1), (2, 2)))
    assert tr.interchange_step(G) is None  # nu = 3 already
    G = Bigraph(2, 3, ((0, 0), (1, 0), (0, 1), (1, 2)))
    assert max_matching(G)[1] == 2 and tr.interchange_step(G) is None


@given(st.integers(0, 2**32))
@settings(max_examples=150, deadline=None)
def test_interchange_preserves_degrees(seed):
    rng = random.Random(seed)
    m = random_spec(rng, rng.randint(2, 4), rng.randint(2, 4))
    if rz.check_gale_ryser(m) is not None:
        return
    G = rz.construct_gale_ryser(m)
    H = tr.interchange_step(G)
    if H is not None:
        assert H.is_simple
        assert H.degrees_s() == G.degrees_s() and H.degrees_t() == G.degrees_t()
        assert max_matching(H)[1] > max_matching(G)[1]


def test_large_t_uses_interchange_path():
    m = DegreeSpec((1,) * 10, (1,) * 10)
    G = tr.construct_termrank(m, 10)
    assert max_matching(G)[1] == 10


def test_sorted_prefix_equals_full_sweep_up_to_four():
    rng = random.Random(5)
    for _ in range(150):
        s, t = rng.randint(1, 4), rng.randint(1, 4)
        m = random_spec(rng, s, t)
        ell = rng.randint(0, min(s, t))
        from gsynth.setfunc import TermRank

        full = orc.oracle_condition("cover", s, t, TermRank(t, ell).table(), m=m)[0]
        assert (tr.check_termrank(m, ell) is None) == (full <= 0)


@given(st.integers(0, 2**32))
@settings(max_examples=100, deadline=None)
def test_bounds_checker_matches_oracle_and_construction_verifies(seed):
    rng = random.Random(seed)
    s, t = rng.randint(1, 3), rng.randint(1, 4)
    b = random_bounds(rng, s, t)
    ell = rng.randint(0, min(s, t))
    ok = tr.check_termrank_bounds(b, ell) is None
    assert ok == orc.oracle_bigraphs(s, t, orc.nu_at_least(ell), bounds=b).exists
    if ok:
        G, info = tr.construct_termrank(b, ell, return_info=True)
        assert rz.verify_bounds(G, b.clamped()) and max_matching(G)[1] >= ell
        assert not info["fallback"]


def test_max_term_rank_small_exhaustive():
    for m_s in itertools.product(range(3), repeat=2):
        for m_t in itertools.product(range(3), repeat=3):
            m = DegreeSpec(m_s, m_t)
            if not m.balanced:
                continue
            ours = tr.max_term_rank(m) if rz.check_gale_ryser(m) is None else -1
            assert ours == orc.max_term_rank(m)


def test_matrix_report():
    G = tr.construct_termrank(DegreeSpec((2, 1), (1, 1, 1)), 2)
    rep = tr.matrix_report(G)
    assert rep["row_sums"] == [2, 1] and rep["col_sums"] == [1, 1, 1] and rep["term_rank"] == 2


def test_interchange_finds_improving_switch():
    G = Bigraph(3, 3, ((0, 0), (1, 0), (2, 1), (2, 2)))
    assert max_matching(G)[1] == 2
    H = tr.interchange_step(G)
    assert H is not None and max_matching(H)[1] == 3
    assert H.degrees_s() == G.degrees_s() and H.degrees_t() == G.degrees_t()
