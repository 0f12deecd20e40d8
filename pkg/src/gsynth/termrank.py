"""Maximum term rank: degree-specified and degree-bounded realizations with nu(G) >= ell.

With p = TermRank(ell) the subpartition term of every covering condition
collapses to (ell - |X| - |Y|)^+, and the optimal X, Y are prefixes of the
nodes sorted by the relevant key.  All checks here run on the
(|S|+1) x (|T|+1) grid of prefix pairs, vectorized with numpy.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .errors import DefectError, Infeasible, PreconditionError
from .graph import Bigraph, mask_of, max_matching
from .realize import (
    Certificate,
    DegreeBounds,
    DegreeSpec,
    _box_fallback,
    _make_cert,
    condition_sides,
    construct_cover_full,
    construct_gale_ryser,
    verify_bounds,
)
from .setfunc import TermRank

log = logging.getLogger(__name__)

# above this |T| the covering reduction is too slow and the interchange path is used
COVER_T_CAP = 8


@dataclass(frozen=True)
class TermRankInstance:
    spec: DegreeSpec | DegreeBounds
    ell: int

    def __post_init__(self):
        s = len(self.spec.m_s) if isinstance(self.spec, DegreeSpec) else self.spec.s_size
        t = len(self.spec.m_t) if isinstance(self.spec, DegreeSpec) else self.spec.t_size
        if not 0 <= self.ell <= min(s, t):
            raise PreconditionError(f"ell={self.ell} outside [0, min(|S|,|T|)={min(s, t)}]")


def _check_ell(ell: int, s: int, t: int) -> None:
    if not 0 <= ell <= min(s, t):
        raise PreconditionError(f"ell={ell} outside [0, min(|S|,|T|)={min(s, t)}]")


def _prefix(values, order):
    return np.concatenate(([0], np.cumsum(np.asarray(values, dtype=np.int64)[order])))


def _order(values):
    # decreasing value, ties by smallest index (stable sort on the negation)
    return np.argsort(-np.asarray(values, dtype=np.int64), kind="stable")


def _grid(a_prefix, b_prefix, ell: int):
    i = np.arange(len(a_prefix))[:, None]
    j = np.arange(len(b_prefix))[None, :]
    return a_prefix[:, None] + b_prefix[None, :] - i * j + np.maximum(0, ell - i - j)


def _argmax(V):
    # first maximal entry in row-major order: smallest i, then smallest j
    k = int(np.argmax(V))
    return divmod(k, V.shape[1])


def _termrank_cert(cond, i, j, xord, yord, s, t, ell, p, **ctx) -> Certificate:
    X = mask_of(int(v) for v in xord[:i])
    Y = mask_of(int(v) for v in yord[:j])
    rest = ((1 << t) - 1) & ~Y
    parts = (rest,) if ell - i - j > 0 else ()
    lhs, rhs = condition_sides(cond, X, Y, parts, p=p, **ctx)
    if lhs <= rhs:
        raise DefectError(f"{cond}: prefix violation does not re-evaluate as a violation")
    return _make_cert("termrank_" + cond, X, Y, parts, lhs, rhs)


def check_termrank(m: DegreeSpec, ell: int) -> Certificate | None:
    """Simple graph fitting m with a matching of size ell."""
    m.require_balanced()
    s, t = len(m.m_s), len(m.m_t)
    _check_ell(ell, s, t)
    xo, yo = _order(m.m_s), _order(m.m_t)
    V = _grid(_prefix(m.m_s, xo), _prefix(m.m_t, yo), ell) - m.gamma
    i, j = _argmax(V)
    if V[i, j] <= 0:
        return None
    return _termrank_cert("cover", i, j, xo, yo, s, t, ell, TermRank(t, ell), m=m)


class _BoundsGrid:
    """Prefix-grid evaluator of the four bounded conditions for fixed ell."""

    def __init__(self, b: DegreeBounds, ell: int):
        self.b = b
        self.ell = ell

    def value(self, cond: str):
        b, ell = self.b, self.ell
        if cond == "ftgs":
            xk, yk = b.g_s, b.f_t
            const = -sum(b.g_s)
        elif cond == "fsgt":
            xk, yk = b.f_s, b.g_t
            const = -sum(b.g_t)
        elif cond == "galfa":
            xk, yk = b.g_s, b.g_t
            const = b.alpha - sum(b.g_s) - sum(b.g_t)
        elif cond == "fbeta":
            xk, yk = b.f_s, b.f_t
            const = -b.beta
        else:
            raise ValueError(cond)
        xo, yo = _order(xk), _order(yk)
        V = _grid(_prefix(xk, xo), _prefix(yk, yo), ell) + const
        return V, xo, yo

    def violated(self, cond: str) -> bool:
        V, _, _ = self.value(cond)
        return bool(V.max() > 0)

    def certificate(self, cond: str) -> Certificate | None:
        V, xo, yo = self.value(cond)
        i, j = _argmax(V)
        if V[i, j] <= 0:
            return None
        t = self.b.t_size
        return _termrank_cert(cond, i, j, xo, yo, self.b.s_size, t, self.ell, TermRank(t, self.ell), bounds=self.b)


def check_termrank_bounds(b: DegreeBounds, ell: int, edges: bool = True) -> Certificate | None:
    """Degree bounds (and the edge interval when ``edges``) with nu >= ell."""
    _check_ell(ell, b.s_size, b.t_size)
    grid = _BoundsGrid(b.clamped(), ell)
    conds = ("ftgs", "fsgt", "galfa", "fbeta") if edges else ("ftgs", "fsgt")
    for cond in conds:
        cert = grid.certificate(cond)
        if cert is not None:
            return cert
    return None


def lift_bounds_termrank(b: DegreeBounds, ell: int) -> tuple[DegreeSpec, bool]:
    """Loose-node lifting against the term rank conditions.

    Each loose node is raised once, by bisection, to the largest lower bound
    keeping the conditions true.  Raising f on S can only break the two
    conditions that contain f_S, and likewise on T, so only those are
    re-evaluated.  Returns the lifted degree spec and a fallback flag.
    """
    cert = check_termrank_bounds(b, ell)
    if cert is not None:
        raise Infeasible(cert)
    cb = b.clamped()
    f_s = np.array(cb.f_s, dtype=np.int64)
    f_t = np.array(cb.f_t, dtype=np.int64)
    g_s_pre = _prefix(cb.g_s, _order(cb.g_s))
    g_t_pre = _prefix(cb.g_t, _order(cb.g_t))
    G_S, G_T = int(sum(cb.g_s)), int(sum(cb.g_t))
    si = np.arange(cb.s_size + 1)[:, None]
    tj = np.arange(cb.t_size + 1)[None, :]
    base = np.maximum(0, ell - si - tj) - si * tj

    def ok_s():
        fs = np.sort(f_s)[::-1]
        fsp = np.concatenate(([0], np.cumsum(fs)))
        ftp = np.concatenate(([0], np.cumsum(np.sort(f_t)[::-1])))
        fsgt = fsp[:, None] + g_t_pre[None, :] + base - G_T
        fbeta = fsp[:, None] + ftp[None, :] + base - cb.beta
        return fsgt.max() <= 0 and fbeta.max() <= 0

    def ok_t():
        fsp = np.concatenate(([0], np.cumsum(np.sort(f_s)[::-1])))
        ftp = np.concatenate(([0], np.cumsum(np.sort(f_t)[::-1])))
        ftgs = g_s_pre[:, None] + ftp[None, :] + base - G_S
        fbeta = fsp[:, None] + ftp[None, :] + base - cb.beta
        return ftgs.max() <= 0 and fbeta.max() <= 0

    for f, g, ok in ((f_s, cb.g_s, ok_s), (f_t, cb.g_t, ok_t)):
        for v in range(len(f)):
            lo, hi = int(f[v]), int(g[v])
            while lo < hi:
                mid = (lo + hi + 1) // 2
                f[v] = mid
                if ok():
                    lo = mid
                else:
                    hi = mid - 1
            f[v] = lo
    m = DegreeSpec(f_s.tolist(), f_t.tolist())
    if m.balanced and check_termrank(m, ell) is None:
        return m, False
    log.warning("lifted bounds unbalanced or infeasible; searching the box")
    p = TermRank(cb.t_size, ell)
    return _box_fallback(cb, p), True


def interchange_step(G: Bigraph) -> Bigraph | None:
    """A 2-switch that keeps all degrees and strictly raises nu, or None."""
    if not G.is_simple:
        raise PreconditionError("interchange needs a simple graph")
    edges = set(G.edges)
    nu = max_matching(G)[1]
    el = sorted(edges)
    for a in range(len(el)):
        s1, t1 = el[a]
        for b in range(a + 1, len(el)):
            s2, t2 = el[b]
            if s1 == s2 or t1 == t2 or (s1, t2) in edges or (s2, t1) in edges:
                continue
            new = (edges - {(s1, t1), (s2, t2)}) | {(s1, t2), (s2, t1)}
            H = Bigraph(G.s_size, G.t_size, tuple(new))
            if max_matching(H)[1] > nu:
                return H
    return None


def _verify(G: Bigraph, ell: int) -> None:
    if max_matching(G)[1] < ell:
        raise DefectError(f"constructed graph has matching number below {ell}")


def construct_termrank_spec(m: DegreeSpec, ell: int) -> Bigraph:
    cert = check_termrank(m, ell)
    if cert is not None:
        raise Infeasible(cert)
    t = len(m.m_t)
    if t <= COVER_T_CAP:
        G = construct_cover_full(m, TermRank(t, ell))
    else:
        G = construct_gale_ryser(m)
        while max_matching(G)[1] < ell:
            H = interchange_step(G)
            if H is None:
                raise DefectError("no nu-increasing interchange although the term rank condition holds")
            G = H
    if G.degrees_s() != list(m.m_s) or G.degrees_t() != list(m.m_t) or not G.is_simple:
        raise DefectError("term rank construction does not fit m")
    _verify(G, ell)
    return G


def construct_termrank(inst: TermRankInstance | DegreeSpec | DegreeBounds, ell: int | None = None,
                       return_info: bool = False):
    """Simple bigraph with nu >= ell under exact degrees or bounds."""
    if not isinstance(inst, TermRankInstance):
        inst = TermRankInstance(inst, ell)
    if isinstance(inst.spec, DegreeSpec):
        G = construct_termrank_spec(inst.spec, inst.ell)
        info = {"m": inst.spec, "fallback": False}
    else:
        m, fallback = lift_bounds_termrank(inst.spec, inst.ell)
        G = construct_termrank_spec(m, inst.ell)
        if not verify_bounds(G, inst.spec.clamped()):
            raise DefectError("term rank construction violates the bounds")
        info = {"m": m, "fallback": fallback}
    return (G, info) if return_info else G


def matrix_report(G: Bigraph) -> dict:
    """0-1 matrix (rows = S) with row and column sums echoed."""
    M = G.to_matrix()
    return {
        "matrix": M,
        "row_sums": [sum(r) for r in M],
        "col_sums": [sum(M[i][j] for i in range(G.s_size)) for j in range(G.t_size)],
        "term_rank": max_matching(G)[1],
    }


def max_term_rank(m: DegreeSpec) -> int:
    """Largest ell for which some realization of m has nu >= ell (-1 if m is not realizable)."""
    best = -1
    for ell in range(min(len(m.m_s), len(m.m_t)) + 1):
        if check_termrank(m, ell) is None:
            best = ell
        else:
            break
    return best
