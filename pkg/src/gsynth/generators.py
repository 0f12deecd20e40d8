"""Random desk-scale instances for property tests and the selftest command."""

from __future__ import annotations

import random

from .graph import Digraph, popcount
from .realize import DegreeBounds, DegreeSpec
from .setfunc import Explicit, Forest, SetFunction, TermRank, Zero, hall

INF = float("inf")


def random_intersecting_supermodular(rng: random.Random, t_size: int, cap: int | None = None) -> Explicit:
    """max(0, c + w(Y) - coverage(Y) - cut(Y)): intersecting supermodular and
    kept so by truncation at 0, since only pairs with positive values count.

    ``cap`` rejects tables with a value above it (resampling).
    """
    while True:
        c = rng.randint(0, 3)
        w = [rng.randint(-1, 3) for _ in range(t_size)]
        blocks = [rng.randrange(1, 1 << t_size) for _ in range(rng.randint(0, 3))]
        arcs = [(rng.randrange(t_size + 1), rng.randrange(t_size)) for _ in range(rng.randint(0, 4))]
        table = [0]
        for Y in range(1, 1 << t_size):
            h = c + sum(w[t] for t in range(t_size) if Y >> t & 1)
            h -= sum(1 for B in blocks if B & Y)
            # an arc from index t_size comes from outside T
            h -= sum(1 for u, v in arcs if Y >> v & 1 and not (u < t_size and Y >> u & 1))
            table.append(max(0, h))
        if cap is None or max(table) <= cap:
            return Explicit(t_size, table)


def random_setfunc(rng: random.Random, t_size: int, cap: int | None = None) -> SetFunction:
    kind = rng.choice(("zero", "hall", "termrank", "forest", "random", "random"))
    if kind == "zero":
        return Zero(t_size)
    if kind == "hall":
        return hall(t_size)
    if kind == "termrank":
        return TermRank(t_size, rng.randint(0, min(3, t_size)))
    if kind == "forest":
        return Forest([rng.randint(1, 2) for _ in range(t_size)])
    return random_intersecting_supermodular(rng, t_size, cap)


def random_spec(rng: random.Random, s_size: int, t_size: int, max_deg: int = 4) -> DegreeSpec:
    """Balanced degree vectors with entries at most min(max_deg, other side size)."""
    while True:
        m_s = [rng.randint(0, min(max_deg, t_size)) for _ in range(s_size)]
        m_t = [rng.randint(0, min(max_deg, s_size)) for _ in range(t_size)]
        diff = sum(m_s) - sum(m_t)
        order = list(range(t_size))
        rng.shuffle(order)
        for t in order:
            if diff > 0:
                step = min(diff, min(max_deg, s_size) - m_t[t])
                m_t[t] += step
                diff -= step
            elif diff < 0:
                step = min(-diff, m_t[t])
                m_t[t] -= step
                diff += step
        if diff == 0:
            return DegreeSpec(m_s, m_t)


def random_bounds(rng: random.Random, s_size: int, t_size: int, edges: bool = True) -> DegreeBounds:
    def pair(cap):
        lo = rng.choice([-INF, 0, 0, 1, 2])
        lo_f = 0 if lo == -INF else min(lo, cap)
        hi = rng.choice([INF, lo_f, lo_f + 1, lo_f + 2, cap])
        return (lo if lo == -INF else lo_f), max(hi, lo_f)

    fs, gs = zip(*[pair(t_size) for _ in range(s_size)])
    ft, gt = zip(*[pair(s_size) for _ in range(t_size)])
    alpha, beta = -INF, INF
    if edges:
        alpha = rng.choice([-INF, 0, rng.randint(0, s_size * t_size)])
        beta = rng.choice([INF, rng.randint(0, s_size * t_size)])
        if alpha > beta:
            alpha, beta = beta, alpha
    return DegreeBounds(fs, gs, ft, gt, alpha, beta)


def random_digraph(rng: random.Random, n: int, arcs: int) -> Digraph:
    out = []
    while len(out) < arcs:
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            out.append((u, v))
    return Digraph(n, tuple(out))


def bounded_p(p: SetFunction, s_size: int) -> bool:
    return max(p.table()) <= s_size


__all__ = [
    "random_intersecting_supermodular",
    "random_setfunc",
    "random_spec",
    "random_bounds",
    "random_digraph",
    "bounded_p",
    "popcount",
]
