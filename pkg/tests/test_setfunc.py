import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import counterexample_p, tmask
from gsynth import oracle as orc
from gsynth.errors import InputError, PreconditionError
from gsynth.generators import random_intersecting_supermodular
from gsynth.graph import Digraph, enumerate_subpartitions
from gsynth.realize import DegreeSpec
from gsynth.setfunc import (
    BranchingIndeg,
    Explicit,
    Forest,
    MasterFunction,
    TermRank,
    Zero,
    classify,
    eval_b0,
    eval_p,
    hall,
    member_in_B0,
    subpartition_max,
)


def test_closed_form_values(path3):
    assert eval_p(TermRank(3, 2), 0b001) == 0
    assert eval_p(Forest([2, 2, 2]), 0b011) == 3
    assert eval_p(BranchingIndeg(path3, 2), 0b110) == 1


@pytest.mark.parametrize("p", [
    TermRank(3, 2), Forest([2, 1, 2]), hall(3), Zero(2), BranchingIndeg(Digraph(3, ((0, 1),)), 2),
])
def test_empty_set_is_zero(p):
    assert eval_p(p, 0) == 0


def test_classify_examples():
    f = classify(TermRank(4, 2))
    assert f.intersecting_supermodular and f.fully_supermodular and f.monotone
    f = classify(Forest([2, 2, 2, 2]), exhaustive=True)
    assert f.intersecting_supermodular and not f.fully_supermodular
    assert classify(counterexample_p(), exhaustive=True).intersecting_supermodular


def test_closed_form_flags_match_exhaustive():
    for p in (TermRank(4, 0), TermRank(4, 3), Forest([2, 2, 2, 2]), Forest([1, 2, 3])):
        assert classify(p, exhaustive=True) == classify(p)


def test_branching_indeg_precondition(path3):
    with pytest.raises(PreconditionError):
        classify(BranchingIndeg(path3, 1, m_in=(1, 1, 0)))


def test_explicit_requires_full_table():
    with pytest.raises(InputError):
        Explicit.from_dict(2, {1: 1, 2: 1})


def test_subpartition_max_examples():
    assert subpartition_max(counterexample_p(), 0b1111, 0) == 0
    assert subpartition_max(TermRank(3, 3), 0b111, 1) == 3
    assert subpartition_max(counterexample_p(), tmask("cd"), 1) == 4
    assert subpartition_max(TermRank(2, 1), 0b11, 3) == float("-inf")


def _enum_max(p, ground, q):
    table = p.table()
    vals = [sum(table[P] for P in sp.parts) for sp in enumerate_subpartitions(ground) if len(sp) == q]
    return max(vals) if vals else float("-inf")


@given(st.integers(0, 2**32), st.integers(1, 5))
@settings(max_examples=40, deadline=None)
def test_subpartition_dp_matches_enumeration(seed, t):
    rng = random.Random(seed)
    values = [0] + [rng.randint(-3, 4) for _ in range((1 << t) - 1)]
    p = Explicit(t, values)
    ground = rng.randrange(1 << t)
    for q in range(0, t + 1):
        assert subpartition_max(p, ground, q) == (_enum_max(p, ground, q) if q else 0)


def test_b0_examples(p_counter):
    M = MasterFunction(2, hall(2))
    assert eval_b0(M, 0) == 0
    assert eval_b0(M, M.full) == 0
    assert eval_b0(M, 0b0101) == 1  # s0 and t0
    assert eval_b0(M, 0b0101) == orc.oracle_b0(2, 2, hall(2).table(), 0b0101)


def test_b0_precondition():
    with pytest.raises(PreconditionError):
        MasterFunction(1, hall(2))


def test_membership_examples(p_counter, m_counter):
    assert member_in_B0(MasterFunction(1, Zero(1)), DegreeSpec((1,), (1,)))[0]
    assert member_in_B0(MasterFunction(2, hall(2)), DegreeSpec((1, 1), (1, 1)))[0]
    ok, U = member_in_B0(MasterFunction(4, p_counter), m_counter)
    assert not ok
    M = MasterFunction(4, p_counter)
    X, Z = M.split(U)
    assert (X, Z) == (0b0011, tmask("cd"))


def test_membership_unbalanced():
    with pytest.raises(PreconditionError):
        member_in_B0(MasterFunction(1, Zero(1)), DegreeSpec((1,), (0,)))


@given(st.integers(0, 2**32))
@settings(max_examples=25, deadline=None)
def test_p0_supermodular(seed):
    rng = random.Random(seed)
    s = rng.randint(1, 4)
    t = rng.randint(1, min(4, 8 - s))
    M = MasterFunction(s, random_intersecting_supermodular(rng, t, cap=s))
    p0 = np.array([M.p0(U) for U in range(M.full + 1)])
    U = np.arange(M.full + 1)
    assert (p0[:, None] + p0[None, :] <= p0[U[:, None] & U[None, :]] + p0[U[:, None] | U[None, :]]).all()


def test_json_round_trip():
    from gsynth.jsonio import setfunc_from_json

    for p in (TermRank(3, 2), Forest([2, 1]), counterexample_p()):
        q = setfunc_from_json(p.to_json(), p.t_size)
        assert q.table() == p.table()
