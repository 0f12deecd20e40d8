import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gsynth import branchings as br
from gsynth import oracle as orc
from gsynth.errors import Infeasible, PreconditionError
from gsynth.generators import random_digraph
from gsynth.graph import Digraph, members

INF = float("inf")


def test_edmonds_examples(path3):
    assert br.check_edmonds(path3, [0b001]) is None
    viol = br.check_edmonds(path3, [0b001, 0b010])
    assert viol.x == (0,) and (viol.indeg, viol.demand) == (0, 1)
    assert br.check_edmonds(path3, [0b111, 0b111]) is None


def test_pack_edmonds_examples(path3, d4):
    (B,) = br.pack_edmonds(path3, [0b001])
    assert sorted(B.arcs) == [(0, 1), (1, 2)]
    packing = br.pack_edmonds(d4, [0b001, 0b001])
    assert sorted(sorted(B.arcs) for B in packing) == [[(0, 1), (1, 2)], [(0, 2), (2, 1)]]
    B1, B2 = br.pack_edmonds(path3, [0b001, 0b111])
    assert B1.size == 2 and B2.size == 0


def test_pack_edmonds_infeasible(path3):
    with pytest.raises(Infeasible):
        br.pack_edmonds(path3, [0b001, 0b010])


def test_sizes_examples(path3, d4):
    assert br.check_pack_sizes(path3, 1, (2,)) is None
    cert = br.check_pack_sizes(path3, 2, (2, 2))
    assert sorted(cert.parts) == [(0,), (1,), (2,)]
    assert (cert.lhs, cert.rhs) == (4, 2)
    assert br.check_pack_sizes(d4, 2, (2, 2)) is None


def test_pack_sizes_examples(path3, d4):
    (B,) = br.pack_sizes(path3, 1, (2,))
    assert sorted(B.arcs) == [(0, 1), (1, 2)]
    packing = br.pack_sizes(d4, 2, (2, 2))
    assert br.verify_packing(d4, packing) is None and [B.size for B in packing] == [2, 2]
    D = Digraph(4, ((0, 1), (0, 2), (2, 3), (1, 3)))
    (B,) = br.pack_sizes(D, 1, (3,))
    assert B.size == 3 and br.verify_packing(D, [B]) is None


def test_pack_sizes_indeg_examples(path3, d4):
    packing = br.pack_sizes_indeg(path3, 1, (2,), (0, 1, 1))
    assert br.packing_indegrees(path3, packing) == [0, 1, 1]
    packing = br.pack_sizes_indeg(d4, 2, (2, 2), (0, 2, 2))
    assert br.packing_indegrees(d4, packing) == [0, 2, 2]
    with pytest.raises(PreconditionError):
        br.pack_sizes_indeg(path3, 1, (2,), (1, 1, 0))


def test_pack_bounds_examples(path3, d4):
    packing = br.pack_bounds(d4, 2, br.Bounds((2, 2), (2, 2)))
    assert [B.size for B in packing] == [2, 2]
    packing = br.arborescences_with_root_counts(d4, 2, (0, 0, 0), (2, 2, 2))
    assert all(B.root_set == 0b001 and B.size == 2 for B in packing)
    assert br.verify_packing(d4, packing) is None
    with pytest.raises(Infeasible) as exc:
        br.pack_bounds(path3, 2, br.Bounds((0, 0), (2, 2), alpha_u=4))
    cert = exc.value.certificate
    assert cert.condition == "fbeta" and cert.lhs > cert.rhs
    assert all(len(P) >= 1 for P in cert.parts)


def test_equal_size_preset(d4):
    packing = br.equal_size_branchings(d4, 2, 1)
    assert [B.size for B in packing] == [1, 1]


def test_verifier_catches_shared_arc(path3):
    B = br.Branching(0b001, ((0, 1), (1, 2)))
    assert br.verify_packing(path3, [B, B]) is not None
    assert br.verify_packing(Digraph(3, ((0, 1), (1, 2)) * 2), [B, B]) is None


def test_verifier_catches_cycle():
    D = Digraph(3, ((0, 1), (1, 0), (1, 2)))
    assert br.verify_packing(D, [br.Branching(0b100, ((0, 1), (1, 0)))]) is not None


@given(st.integers(0, 2**32))
@settings(max_examples=150, deadline=None)
def test_edmonds_violation_is_exact(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 4)
    D = random_digraph(rng, n, rng.randint(0, 6))
    roots = [rng.randrange(1, 1 << n) for _ in range(rng.randint(1, 2))]
    viol = br.check_edmonds(D, roots)
    if viol is None:
        assert orc.oracle_edmonds(D, roots)
        assert br.verify_packing(D, br.pack_edmonds(D, roots)) is None
    else:
        X = sum(1 << v for v in viol.x)
        assert D.in_degree(X) == viol.indeg < viol.demand == sum(1 for R in roots if not R & X)
        assert not orc.oracle_edmonds(D, roots)


@given(st.integers(0, 2**32))
@settings(max_examples=150, deadline=None)
def test_pack_bounds_matches_oracle(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 4)
    D = random_digraph(rng, n, rng.randint(1, 6))
    k = rng.randint(1, 2)
    phi = [rng.randint(0, n - 1) for _ in range(k)]
    gam = [rng.randint(x, n - 1) for x in phi]
    f_in = [rng.randint(0, 1) for _ in range(n)] if rng.random() < 0.5 else None
    g_in = [rng.randint(1, k) for _ in range(n)] if rng.random() < 0.5 else None
    alpha = rng.choice([0, rng.randint(0, 4)])
    beta = rng.choice([INF, rng.randint(alpha, 6)])
    req = br.Bounds(tuple(phi), tuple(gam), f_in and tuple(f_in), g_in and tuple(g_in), alpha, beta)
    ours = br.check_pack_bounds(D, k, req) is None
    assert ours == orc.oracle_pack_bounds(D, k, phi, gam, f_in, g_in, alpha, beta).exists
    if ours:
        packing = br.pack_bounds(D, k, req)
        assert br.verify_packing(D, packing) is None


@given(st.integers(0, 2**32))
@settings(max_examples=100, deadline=None)
def test_spanning_sizes_match_freeroot_count(seed):
    # with every size n - 1 the condition is sum rho(V_i) >= k (q - 1) over all subpartitions
    rng = random.Random(seed)
    n = rng.randint(2, 4)
    D = random_digraph(rng, n, rng.randint(1, 7))
    k = rng.randint(1, 2)
    ours = br.check_pack_sizes(D, k, (n - 1,) * k) is None
    from gsynth.graph import enumerate_subpartitions

    direct = all(
        sum(D.in_degree(P) for P in sp.parts) >= k * (len(sp) - 1)
        for sp in enumerate_subpartitions((1 << n) - 1)
    )
    assert ours == direct == orc.oracle_pack_sizes(D, k, (n - 1,) * k).exists


def test_certificate_json(path3):
    cert = br.check_pack_sizes(path3, 2, (2, 2))
    doc = cert.to_json()
    assert doc["lhs"] == 4 and doc["rhs"] == 2 and sorted(doc["parts"]) == [[0], [1], [2]]
    assert members(0b101) == [0, 2]
