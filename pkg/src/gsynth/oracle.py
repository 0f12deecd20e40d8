"""Exhaustive ground truth at desk scale.

Nothing here reuses the main-path condition evaluators, subpartition DP or
constructions: helpers are re-implemented locally so that a bug in one side
cannot hide the same bug in the other.  Enumeration is lexicographic and the
first witness found is returned.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .errors import CapacityError
from .graph import Bigraph, Digraph


@dataclass(frozen=True)
class OracleBudget:
    max_s: int = 6
    max_t: int = 6
    max_n: int = 5
    max_arcs: int = 9
    max_edges: int = 20
    max_k: int = 3

    def bigraph(self, s: int, t: int) -> None:
        if s > self.max_s or t > self.max_t or s * t > self.max_edges:
            raise CapacityError(f"{s}x{t} bigraph enumeration exceeds oracle budget")

    def digraph(self, n: int, arcs: int, k: int) -> None:
        if n > self.max_n or arcs > self.max_arcs or k > self.max_k:
            raise CapacityError(f"packing search (n={n}, arcs={arcs}, k={k}) exceeds oracle budget")


DEFAULT_BUDGET = OracleBudget()


@dataclass(frozen=True)
class OracleResult:
    exists: bool
    witness: object = None


def _bits(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def _pc(mask: int) -> int:
    return bin(mask).count("1")


def _subparts(elems: Sequence[int]) -> Iterator[list[int]]:
    """All subpartitions (as lists of bitmasks) of the element list."""
    if not elems:
        yield []
        return
    head, rest = elems[0], elems[1:]
    for sp in _subparts(rest):
        yield sp
        yield sp + [1 << head]
        for i in range(len(sp)):
            yield sp[:i] + [sp[i] | (1 << head)] + sp[i + 1:]


# ---------------------------------------------------------------------------
# bipartite search


def _deg_ok(d: int, lo, hi) -> bool:
    return (lo is None or d >= lo) and (hi is None or d <= hi)


def oracle_bigraphs(
    s_size: int,
    t_size: int,
    predicate: Callable[[Bigraph], bool] | None = None,
    m=None,
    bounds=None,
    budget: OracleBudget = DEFAULT_BUDGET,
) -> OracleResult:
    """First simple bigraph (rows in lexicographic order) meeting the degree
    constraint and the predicate.  ``m`` is exact degrees, ``bounds`` is a
    DegreeBounds-like object (f_s, g_s, f_t, g_t, alpha, beta); infinite
    entries are fine."""
    budget.bigraph(s_size, t_size)
    if m is not None:
        lo_s, hi_s, lo_t, hi_t = m.m_s, m.m_s, m.m_t, m.m_t
        alpha = beta = None
    elif bounds is not None:
        lo_s, hi_s, lo_t, hi_t = bounds.f_s, bounds.g_s, bounds.f_t, bounds.g_t
        alpha, beta = bounds.alpha, bounds.beta
    else:
        lo_s = hi_s = [None] * s_size
        lo_t = hi_t = [None] * t_size
        alpha = beta = None
    options = [
        [r for r in range(1 << t_size) if _deg_ok(_pc(r), lo_s[s], hi_s[s])] for s in range(s_size)
    ]
    for rows in itertools.product(*options):
        col = [0] * t_size
        for r in rows:
            for t in _bits(r):
                col[t] += 1
        if not all(_deg_ok(col[t], lo_t[t], hi_t[t]) for t in range(t_size)):
            continue
        total = sum(col)
        if (alpha is not None and total < alpha) or (beta is not None and total > beta):
            continue
        G = Bigraph(s_size, t_size, tuple((s, t) for s, r in enumerate(rows) for t in _bits(r)))
        if predicate is None or predicate(G):
            return OracleResult(True, G)
    return OracleResult(False)


def _rows(G: Bigraph) -> list[int]:
    rows = [0] * G.s_size
    for s, t in G.edges:
        rows[s] |= 1 << t
    return rows


def covers_table(table: Sequence[int]) -> Callable[[Bigraph], bool]:
    """Predicate: |Gamma(Y)| >= table[Y] for every Y."""

    def pred(G: Bigraph) -> bool:
        rows = _rows(G)
        for Y in range(1, 1 << G.t_size):
            if sum(1 for r in rows if r & Y) < table[Y]:
                return False
        return True

    return pred


def matching_number(G: Bigraph) -> int:
    """Largest matching, by trying every way to match S-nodes in order."""
    rows = _rows(G)

    def rec(i: int, used: int) -> int:
        if i == len(rows):
            return 0
        best = rec(i + 1, used)
        for t in _bits(rows[i] & ~used):
            best = max(best, 1 + rec(i + 1, used | (1 << t)))
        return best

    return rec(0, 0)


def nu_at_least(ell: int) -> Callable[[Bigraph], bool]:
    return lambda G: matching_number(G) >= ell


def _forest_edges_ok(edges, s_size: int) -> bool:
    comp = list(range(s_size + 64))

    def root(x):
        while comp[x] != x:
            x = comp[x]
        return x

    for s, t in edges:
        a, b = root(s), root(s_size + t)
        if a == b:
            return False
        comp[a] = b
    return True


def has_forest(G: Bigraph, m_for=None) -> bool:
    """Pick m_for(t) neighbours for every t and test acyclicity, exhaustively."""
    m_for = [2] * G.t_size if m_for is None else list(m_for)
    rows = _rows(G)
    nbrs = [[s for s in range(G.s_size) if rows[s] >> t & 1] for t in range(G.t_size)]
    choices = [list(itertools.combinations(nbrs[t], m_for[t])) for t in range(G.t_size)]
    for pick in itertools.product(*choices):
        edges = [(s, t) for t, ss in enumerate(pick) for s in ss]
        if _forest_edges_ok(edges, G.s_size):
            return True
    return False


def forest_pred(m_for=None) -> Callable[[Bigraph], bool]:
    return lambda G: has_forest(G, m_for)


def max_term_rank(m, budget: OracleBudget = DEFAULT_BUDGET) -> int:
    """Largest nu over all simple realizations of m; -1 if none exists."""
    best = -1

    def pred(G):
        nonlocal best
        best = max(best, matching_number(G))
        return False

    oracle_bigraphs(len(m.m_s), len(m.m_t), pred, m=m, budget=budget)
    return best


# ---------------------------------------------------------------------------
# raw condition sweeps


def _sum(vec, mask):
    return sum(vec[i] for i in _bits(mask))


def oracle_condition(
    condition: str,
    s_size: int,
    t_size: int,
    p_table: Sequence[int] | None = None,
    m=None,
    bounds=None,
    m_for=None,
    max_parts: int | None = None,
    budget: OracleBudget = DEFAULT_BUDGET,
):
    """Maximum of lhs - rhs over every X, Y and subpartition of T - Y.

    Returns (violation, X, Y, parts) with bitmasks; violation <= 0 means
    the condition holds.  Bounds must already be finite.
    """
    budget.bigraph(s_size, t_size)
    table = p_table if p_table is not None else [0] * (1 << t_size)
    t_all = (1 << t_size) - 1
    s_all = (1 << s_size) - 1
    best = None
    for X in range(1 << s_size):
        x = _pc(X)
        for Y in range(1 << t_size):
            y = _pc(Y)
            if condition in ("B1", "B2") and Y:
                continue
            if condition == "t2fax":
                if X == 0:
                    continue
                rest = t_all & ~Y
                for Z in range(1, rest + 1):
                    if Z & ~rest:
                        continue
                    lhs = _sum(m.m_s, X) + _sum(m.m_t, Y) - x * y + _sum(m_for, Z) - _pc(Z) - x + 1
                    cand = (lhs - m.gamma, X, Y, [Z])
                    if best is None or cand[0] > best[0]:
                        best = cand
                continue
            for parts in _subparts(_bits(t_all & ~Y)):
                q = len(parts)
                if max_parts is not None and q > max_parts:
                    continue
                ps = sum(table[P] for P in parts)
                sub = ps - q * x
                if condition in ("gale_ryser", "cover"):
                    if condition == "gale_ryser" and q:
                        continue
                    val = _sum(m.m_s, X) + _sum(m.m_t, Y) - x * y + sub - m.gamma
                elif condition == "B1":
                    val = _sum(m.m_s, X) + sub - m.gamma
                elif condition == "B2":
                    if X:
                        continue
                    val = ps - sum(min(v, q) for v in m.m_s)
                elif condition == "ftgs":
                    val = _sum(bounds.f_t, Y) - x * y + sub - _sum(bounds.g_s, s_all & ~X)
                elif condition == "fsgt":
                    val = _sum(bounds.f_s, X) - x * y + sub - _sum(bounds.g_t, t_all & ~Y)
                elif condition == "galfa":
                    val = bounds.alpha - (
                        _sum(bounds.g_s, s_all & ~X) + _sum(bounds.g_t, t_all & ~Y) + x * y - sub
                    )
                elif condition == "fbeta":
                    val = _sum(bounds.f_s, X) + _sum(bounds.f_t, Y) - x * y + sub - bounds.beta
                else:
                    raise ValueError(f"unknown condition {condition!r}")
                if best is None or val > best[0]:
                    best = (val, X, Y, sorted(parts))
    return best


def oracle_b0(s_size: int, t_size: int, p_table: Sequence[int], U: int) -> int:
    """b0 straight from its definition, by enumerating subpartitions of Z."""
    X = U & ((1 << s_size) - 1)
    Z = U >> s_size
    x = _pc(X)
    best = None
    for parts in _subparts(_bits(Z)):
        val = (t_size - _pc(Z)) * x - sum(p_table[P] for P in parts) + len(parts) * x
        best = val if best is None else min(best, val)
    return best


# ---------------------------------------------------------------------------
# branchings


def _is_branching(arcs, n: int) -> bool:
    parent = {}
    for u, v in arcs:
        if v in parent:
            return False
        parent[v] = u
    for v in parent:
        seen = set()
        w = v
        while w in parent:
            if w in seen:
                return False
            seen.add(w)
            w = parent[w]
    return True


def oracle_pack_branchings(
    D: Digraph,
    k: int,
    sizes: Sequence[Sequence[int]],
    final: Callable[[list[list[tuple[int, int]]]], bool] | None = None,
    budget: OracleBudget = DEFAULT_BUDGET,
) -> OracleResult:
    """Arc-disjoint branchings B_1..B_k with |B_j| in ``sizes[j]`` and ``final`` true.

    Branchings are chosen in order, each as a combination of unused arc
    indices with distinct heads and no cycle.
    """
    budget.digraph(D.n, len(D.arcs), k)
    arcs = list(D.arcs)

    def rec(j: int, free: list[int], chosen: list[list[tuple[int, int]]]):
        if j == k:
            return chosen if final is None or final(chosen) else None
        for size in sizes[j]:
            for combo in itertools.combinations(free, size):
                sel = [arcs[a] for a in combo]
                if not _is_branching(sel, D.n):
                    continue
                left = [a for a in free if a not in combo]
                res = rec(j + 1, left, chosen + [sel])
                if res is not None:
                    return res
        return None

    res = rec(0, list(range(len(arcs))), [])
    return OracleResult(res is not None, res)


def _indeg(packing, n):
    r = [0] * n
    for B in packing:
        for _, v in B:
            r[v] += 1
    return r


def oracle_pack_sizes(D: Digraph, k: int, mu, budget: OracleBudget = DEFAULT_BUDGET) -> OracleResult:
    return oracle_pack_branchings(D, k, [[x] for x in mu], budget=budget)


def oracle_pack_sizes_indeg(D: Digraph, k: int, mu, m_in, budget: OracleBudget = DEFAULT_BUDGET) -> OracleResult:
    return oracle_pack_branchings(
        D, k, [[x] for x in mu], lambda P: _indeg(P, D.n) == list(m_in), budget=budget
    )


def oracle_pack_bounds(D: Digraph, k: int, phi, gamma_up, f_in=None, g_in=None, alpha_u=0,
                       beta_u=float("inf"), budget: OracleBudget = DEFAULT_BUDGET) -> OracleResult:
    f_in = [0] * D.n if f_in is None else list(f_in)
    g_in = [k] * D.n if g_in is None else list(g_in)

    def final(P):
        r = _indeg(P, D.n)
        total = sum(len(B) for B in P)
        return all(f_in[v] <= r[v] <= g_in[v] for v in range(D.n)) and alpha_u <= total <= beta_u

    return oracle_pack_branchings(D, k, [range(lo, hi + 1) for lo, hi in zip(phi, gamma_up)], final, budget)


def oracle_edmonds(D: Digraph, root_sets) -> bool:
    """Packing with exactly these root sets exists (sizes n - |R_j|, roots checked)."""
    sizes = [[D.n - _pc(R)] for R in root_sets]

    def final(P):
        for R, B in zip(root_sets, P):
            heads = {v for _, v in B}
            if any((R >> v & 1) == (v in heads) for v in range(D.n)):
                return False
        return True

    return oracle_pack_branchings(D, len(root_sets), sizes, final).exists


# ---------------------------------------------------------------------------
# wooded hypergraphs


def is_wooded(n: int, edges) -> bool:
    """Trim every hyperedge to a pair, exhaustively, and test for a forest."""
    for pick in itertools.product(*[list(itertools.combinations(e, 2)) for e in edges]):
        comp = list(range(n))

        def root(x):
            while comp[x] != x:
                x = comp[x]
            return x

        ok = True
        for a, b in pick:
            ra, rb = root(a), root(b)
            if ra == rb:
                ok = False
                break
            comp[ra] = rb
        if ok:
            return True
    return False


def union_rule_wooded(n: int, edges) -> bool:
    """Every j > 0 hyperedges together cover at least j + 1 vertices."""
    for j in range(1, len(edges) + 1):
        for group in itertools.combinations(edges, j):
            if len(set().union(*map(set, group))) < j + 1:
                return False
    return True


def oracle_wooded_uniform(m_s, ell: int) -> OracleResult:
    """Search all multisets of ell-subsets fitting m_s for a wooded one."""
    n = len(m_s)
    gamma = sum(m_s)
    if gamma == 0:
        return OracleResult(True, [])
    if gamma % ell:
        return OracleResult(False)
    tau = gamma // ell
    cands = list(itertools.combinations(range(n), ell))
    for multiset in itertools.combinations_with_replacement(cands, tau):
        deg = [0] * n
        for e in multiset:
            for v in e:
                deg[v] += 1
        if deg == list(m_s) and is_wooded(n, multiset):
            return OracleResult(True, list(multiset))
    return OracleResult(False)
