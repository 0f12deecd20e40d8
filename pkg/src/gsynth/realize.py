"""Simple bipartite graphs covering a set function under degree constraints.

Checkers return ``None`` when the instance is feasible and a
:class:`Certificate` otherwise.  Constructors return a verified
:class:`~gsynth.graph.Bigraph` or raise :class:`~gsynth.errors.Infeasible`.

Every covering condition handled here has the shape

    xterm(X) + yterm(Y) - |X||Y| + max over subpartitions P of T-Y of
        sum_{P_i in P} (p(P_i) - |X|)  >  0      (violation)

where the set function part depends on X only through |X|.  So for each
size i only the i "heaviest" S-nodes need to be tried, while Y ranges over
all subsets of T and the subpartition maximum comes from a subset DP.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import CapacityError, DefectError, Infeasible, InputError, PreconditionError
from .graph import SUBSET_DP_CAP, Bigraph, mask_of, members, popcount, top_indices
from .setfunc import (
    NEG_INF,
    Explicit,
    Flags,
    SetFunction,
    SingleTable,
    SubpartitionTable,
    TermRank,
    Zero,
    classify,
)

log = logging.getLogger(__name__)

INF = math.inf


@dataclass(frozen=True)
class DegreeSpec:
    """Exact degree vectors; ``m_t`` may be omitted for the S-only problem."""

    m_s: tuple[int, ...]
    m_t: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "m_s", tuple(int(x) for x in self.m_s))
        if self.m_t is not None:
            object.__setattr__(self, "m_t", tuple(int(x) for x in self.m_t))
        if any(x < 0 for x in self.m_s) or any(x < 0 for x in (self.m_t or ())):
            raise InputError("degree entries must be non-negative")

    @property
    def gamma(self) -> int:
        return sum(self.m_s)

    @property
    def balanced(self) -> bool:
        return self.m_t is not None and sum(self.m_s) == sum(self.m_t)

    def require_balanced(self) -> None:
        if self.m_t is None:
            raise PreconditionError("degree spec has no T side")
        if not self.balanced:
            raise PreconditionError(f"unbalanced degree spec: sum m_s={sum(self.m_s)}, sum m_t={sum(self.m_t)}")

    def to_json(self) -> dict:
        return {"m_s": list(self.m_s), "m_t": None if self.m_t is None else list(self.m_t)}


def _num(x):
    if x is None:
        return None
    if isinstance(x, float) and math.isinf(x):
        return x
    return int(x)


@dataclass(frozen=True)
class DegreeBounds:
    """Lower/upper degree bounds on S and T plus an edge-count interval.

    Entries may be ``-inf``/``+inf``; :meth:`clamped` turns them into the
    finite equivalents implied by simplicity.
    """

    f_s: tuple
    g_s: tuple
    f_t: tuple
    g_t: tuple
    alpha: float = -INF
    beta: float = INF

    def __post_init__(self):
        for name in ("f_s", "g_s", "f_t", "g_t"):
            object.__setattr__(self, name, tuple(_num(x) for x in getattr(self, name)))
        object.__setattr__(self, "alpha", _num(self.alpha))
        object.__setattr__(self, "beta", _num(self.beta))
        if len(self.f_s) != len(self.g_s) or len(self.f_t) != len(self.g_t):
            raise InputError("bound vectors on the same side must have equal length")
        for side, f, g in (("S", self.f_s, self.g_s), ("T", self.f_t, self.g_t)):
            for v, (lo, hi) in enumerate(zip(f, g)):
                if lo > hi:
                    raise PreconditionError(f"f > g at {side}-node {v}: {lo} > {hi}")
        if self.alpha > self.beta:
            raise PreconditionError(f"alpha={self.alpha} > beta={self.beta}")

    @property
    def s_size(self) -> int:
        return len(self.f_s)

    @property
    def t_size(self) -> int:
        return len(self.f_t)

    @classmethod
    def exact(cls, m: DegreeSpec) -> "DegreeBounds":
        return cls(m.m_s, m.m_s, m.m_t, m.m_t)

    def clamped(self) -> "DegreeBounds":
        """Finite bounds: f >= 0, g_S <= |T|, g_T <= |S|, 0 <= alpha, beta <= |S||T|."""
        s, t = self.s_size, self.t_size

        def lo(x):
            return max(0, x) if not math.isinf(x) else 0

        def hi(x, cap):
            return int(min(x, cap))

        return DegreeBounds.__new_unchecked(
            tuple(lo(x) for x in self.f_s),
            tuple(hi(x, t) for x in self.g_s),
            tuple(lo(x) for x in self.f_t),
            tuple(hi(x, s) for x in self.g_t),
            lo(self.alpha),
            hi(self.beta, s * t),
        )

    @classmethod
    def __new_unchecked(cls, f_s, g_s, f_t, g_t, alpha, beta):
        # clamping may push f above g (e.g. f_S(s) > |T|); the covering
        # conditions report that case, so skip the f <= g validation here
        obj = object.__new__(cls)
        for name, val in zip(("f_s", "g_s", "f_t", "g_t", "alpha", "beta"), (f_s, g_s, f_t, g_t, alpha, beta)):
            object.__setattr__(obj, name, val)
        return obj

    def with_f(self, f_s, f_t) -> "DegreeBounds":
        return DegreeBounds.__new_unchecked(tuple(f_s), self.g_s, tuple(f_t), self.g_t, self.alpha, self.beta)

    def to_json(self) -> dict:
        def enc(x):
            if isinstance(x, float) and math.isinf(x):
                return None
            return x

        return {
            "f_s": [enc(x) for x in self.f_s],
            "g_s": [enc(x) for x in self.g_s],
            "f_t": [enc(x) for x in self.f_t],
            "g_t": [enc(x) for x in self.g_t],
            "alpha": "-inf" if self.alpha == -INF else self.alpha,
            "beta": "+inf" if self.beta == INF else self.beta,
        }


@dataclass(frozen=True)
class Certificate:
    """A violated inequality: the triple (X, Y, parts) and both of its sides.

    ``x``, ``y`` and ``parts`` hold node indices (S-indices for ``x``,
    T-indices for ``y`` and ``parts``).  ``lhs > rhs`` always.
    """

    condition: str
    x: tuple[int, ...]
    y: tuple[int, ...]
    parts: tuple[tuple[int, ...], ...]
    lhs: int
    rhs: int

    @property
    def violation(self) -> int:
        return self.lhs - self.rhs

    def to_json(self) -> dict:
        return {
            "condition": self.condition,
            "x": list(self.x),
            "y": list(self.y),
            "parts": [list(p) for p in self.parts],
            "lhs": self.lhs,
            "rhs": self.rhs,
        }

    @classmethod
    def from_json(cls, d: dict) -> "Certificate":
        return cls(
            d["condition"],
            tuple(d["x"]),
            tuple(d["y"]),
            tuple(tuple(p) for p in d["parts"]),
            d["lhs"],
            d["rhs"],
        )


def _make_cert(condition, X: int, Y: int, parts: Sequence[int], lhs, rhs) -> Certificate:
    return Certificate(
        condition,
        tuple(members(X)),
        tuple(members(Y)),
        tuple(tuple(members(P)) for P in sorted(parts)),
        int(lhs),
        int(rhs),
    )


# ---------------------------------------------------------------------------
# condition sides, evaluated directly from a triple


def _tilde(vec, mask: int):
    return sum(vec[i] for i in members(mask))


def condition_sides(
    condition: str,
    X: int,
    Y: int,
    parts: Sequence[int],
    p: SetFunction | None = None,
    m: DegreeSpec | None = None,
    bounds: DegreeBounds | None = None,
) -> tuple[int, int]:
    """(lhs, rhs) of a named condition at (X, Y, parts); violated iff lhs > rhs."""
    x, y, q = popcount(X), popcount(Y), len(parts)
    psum = sum(p(P) for P in parts) if parts else 0
    if condition in ("gale_ryser", "cover"):
        lhs = _tilde(m.m_s, X) + _tilde(m.m_t, Y) - x * y + psum - q * x
        return lhs, m.gamma
    if condition == "B1":
        return _tilde(m.m_s, X) + psum - q * x, m.gamma
    if condition == "B2":
        return psum, sum(min(v, q) for v in m.m_s)
    b = bounds
    s_all = (1 << b.s_size) - 1
    t_all = (1 << b.t_size) - 1
    if condition == "ftgs":
        return _tilde(b.f_t, Y) - x * y + psum - q * x, _tilde(b.g_s, s_all & ~X)
    if condition == "fsgt":
        return _tilde(b.f_s, X) - x * y + psum - q * x, _tilde(b.g_t, t_all & ~Y)
    if condition == "galfa":
        rhs = _tilde(b.g_s, s_all & ~X) + _tilde(b.g_t, t_all & ~Y) + x * y - (psum - q * x)
        return b.alpha, rhs
    if condition == "fbeta":
        return _tilde(b.f_s, X) + _tilde(b.f_t, Y) - x * y + psum - q * x, b.beta
    raise InputError(f"unknown condition {condition!r}")


def recheck(cert: Certificate, p: SetFunction | None = None, m=None, bounds=None) -> tuple[int, int]:
    """Re-evaluate a certificate's condition from its triple."""
    parts = [mask_of(P) for P in cert.parts]
    return condition_sides(cert.condition, mask_of(cert.x), mask_of(cert.y), parts, p=p, m=m, bounds=bounds)


# ---------------------------------------------------------------------------
# sweep engine


class _Subpart:
    """max over admissible subpartitions of W of sum(p(P) - shift), by mode."""

    def __init__(self, p: SetFunction | None, mode: str):
        self.p = p
        self.mode = "zero" if p is None or isinstance(p, Zero) else mode
        if self.mode == "full":
            self.dp = SubpartitionTable(p)
        elif self.mode == "single":
            self.single = SingleTable(p)

    def __call__(self, W: int, shift: int) -> tuple[int, tuple[int, ...]]:
        if self.mode == "zero" or W == 0:
            return 0, ()
        if self.mode == "full":
            v, q = self.dp.shifted(W, shift)
            return (int(v), self.dp.parts(W, q)) if q else (0, ())
        if self.mode == "single":
            v = self.single.smax[W] - shift
            return (int(v), (self.single.arg[W],)) if v > 0 else (0, ())
        v = self.p(W) - shift  # "whole": only {} and {W}
        return (v, (W,)) if v > 0 else (0, ())


def fast_path_mode(p: SetFunction | None, flags: Flags | None = None, enabled: bool | str = True) -> str:
    """Subpartition family to search: "full", "single" (at most one part) or
    "whole" (nothing, or all of T - Y).  A string ``enabled`` forces that mode."""
    if isinstance(enabled, str):
        if enabled not in ("full", "single", "whole"):
            raise InputError(f"unknown fast-path mode {enabled!r}")
        return enabled
    if p is None or not enabled:
        return "full"
    flags = flags or classify(p)
    if flags.fully_supermodular and flags.monotone:
        return "whole"
    if flags.fully_supermodular:
        return "single"
    return "full"


def _sweep(
    s_size: int,
    t_size: int,
    xkey: Sequence,
    xterm: Callable[[int], int],
    yterm: Callable[[int], int],
    sub: _Subpart,
):
    """Maximum of the violation expression; returns (value, X, Y, parts)."""
    if t_size > SUBSET_DP_CAP:
        raise CapacityError(f"|T|={t_size} exceeds the subset sweep cap {SUBSET_DP_CAP}")
    t_all = (1 << t_size) - 1
    ys = [(Y, yterm(Y), popcount(Y)) for Y in range(1 << t_size)]
    best = None
    for i in range(s_size + 1):
        X = mask_of(top_indices(list(xkey), i))
        xv = xterm(X)
        for Y, yv, ny in ys:
            sv, parts = sub(t_all & ~Y, i)
            val = xv + yv - i * ny + sv
            if best is None or val > best[0]:
                best = (val, X, Y, parts)
    return best


def _cert_or_none(condition, best, **ctx) -> Certificate | None:
    val, X, Y, parts = best
    if val <= 0:
        return None
    lhs, rhs = condition_sides(condition, X, Y, parts, **ctx)
    if lhs - rhs != val:
        raise DefectError(f"{condition}: sweep value {val} disagrees with direct evaluation {lhs}-{rhs}")
    return _make_cert(condition, X, Y, parts, lhs, rhs)


def _require_intersecting(p: SetFunction | None) -> Flags | None:
    if p is None:
        return None
    flags = classify(p)
    if flags.intersecting_supermodular is False:
        raise PreconditionError(f"{p!r} is not positively intersecting supermodular")
    return flags


def _require_at_most_s(p: SetFunction | None, s_size: int) -> None:
    """p(Y) <= |S| for every Y; a larger demand can never be met by a simple graph."""
    if p is None:
        return
    if isinstance(p, TermRank):
        top = p.ell
    elif p.t_size <= SUBSET_DP_CAP:
        table = p.table()
        Y = max(range(len(table)), key=table.__getitem__)
        if table[Y] > s_size:
            raise PreconditionError(f"p({members(Y)})={table[Y]} exceeds |S|={s_size}")
        return
    else:
        return
    if top > s_size:
        raise PreconditionError(f"p(T)={top} exceeds |S|={s_size}")


def check_gale_ryser(m: DegreeSpec) -> Certificate | None:
    """Realizability of (m_S, m_T) by a simple bigraph, via sorted prefixes."""
    m.require_balanced()
    s_order = top_indices(list(m.m_s), len(m.m_s))
    t_order = top_indices(list(m.m_t), len(m.m_t))
    gamma = m.gamma
    best = (0, 0, 0)
    ps = 0
    for i in range(len(s_order) + 1):
        if i:
            ps += m.m_s[s_order[i - 1]]
        pt = 0
        for j in range(len(t_order) + 1):
            if j:
                pt += m.m_t[t_order[j - 1]]
            val = ps + pt - i * j - gamma
            if val > best[0]:
                best = (val, i, j)
    if best[0] <= 0:
        return None
    _, i, j = best
    X, Y = mask_of(s_order[:i]), mask_of(t_order[:j])
    lhs, rhs = condition_sides("gale_ryser", X, Y, (), m=m)
    return _make_cert("gale_ryser", X, Y, (), lhs, rhs)


def construct_gale_ryser(m: DegreeSpec) -> Bigraph:
    """Canonical greedy realization: S in decreasing degree order, each joined
    to the T-nodes of largest residual demand (ties by index)."""
    cert = check_gale_ryser(m)
    if cert is not None:
        raise Infeasible(cert)
    resid = list(m.m_t)
    rows = [0] * len(m.m_s)
    for s in top_indices(list(m.m_s), len(m.m_s)):
        chosen = top_indices(resid, m.m_s[s])
        for t in chosen:
            resid[t] -= 1
        rows[s] = mask_of(chosen)
    G = Bigraph.from_neighbor_sets(len(m.m_t), rows)
    if not fits(G, m):
        raise DefectError("greedy Gale-Ryser construction does not fit the degree spec")
    return G


# ---------------------------------------------------------------------------
# verification helpers


def fits(G: Bigraph, m: DegreeSpec) -> bool:
    if not G.is_simple or G.degrees_s() != list(m.m_s):
        return False
    return m.m_t is None or G.degrees_t() == list(m.m_t)


def neighborhood_sizes(G: Bigraph) -> list[int]:
    """|Gamma_G(Y)| for every Y, indexed by bitmask."""
    gam = [0] * (1 << G.t_size)
    for Y in range(1, 1 << G.t_size):
        low = (Y & -Y).bit_length() - 1
        gam[Y] = gam[Y & (Y - 1)] | G.t_neighborhood(low)
    return [popcount(g) for g in gam]


def uncovered_set(G: Bigraph, p: SetFunction) -> int | None:
    """First Y with |Gamma_G(Y)| < p(Y), or None if G covers p."""
    sizes = neighborhood_sizes(G)
    table = p.table()
    for Y in range(1 << G.t_size):
        if sizes[Y] < table[Y]:
            return Y
    return None


def covers(G: Bigraph, p: SetFunction) -> bool:
    return uncovered_set(G, p) is None


def simplify(G: Bigraph) -> Bigraph:
    """Rewire parallel edges to non-adjacent T-nodes (smallest index first).

    Neighbourhoods only grow, so covering is preserved; S-degrees are kept.
    Requires d_G(s) <= |T| for every s.
    """
    if any(d > G.t_size for d in G.degrees_s()):
        raise PreconditionError("an S-node has degree above |T|; cannot simplify")
    rows: list[list[int]] = [[] for _ in range(G.s_size)]
    for s, t in G.edges:
        rows[s].append(t)
    out = []
    for s, ts in enumerate(rows):
        seen: set[int] = set()
        extra = 0
        for t in ts:
            if t in seen:
                extra += 1
            else:
                seen.add(t)
        for t in range(G.t_size):
            if extra == 0:
                break
            if t not in seen:
                seen.add(t)
                extra -= 1
        out.extend((s, t) for t in sorted(seen))
    return Bigraph(G.s_size, G.t_size, tuple(out))


# ---------------------------------------------------------------------------
# degree specification on S only


def _b2_best(m_s: Sequence[int], table_fn: SetFunction):
    """Most violated q in the subpartition form; returns (excess, q, parts) or None."""
    t_size = table_fn.t_size
    dp = SubpartitionTable(table_fn)
    t_all = (1 << t_size) - 1
    best = None
    for q in range(1, t_size + 1):
        sp = dp.best(t_all, q)
        if sp == NEG_INF:
            continue
        excess = sp - sum(min(v, q) for v in m_s)
        if excess > 0 and (best is None or excess > best[0]):
            best = (int(excess), q, dp.parts(t_all, q))
    return best


def _check_ms(m_s: Sequence[int], t_size: int) -> None:
    for s, v in enumerate(m_s):
        if v > t_size:
            raise PreconditionError(f"m_S({s})={v} exceeds |T|={t_size}")


def check_cover_S(m_s: Sequence[int], p: SetFunction) -> Certificate | None:
    """Simple bigraph with S-degrees m_s covering p, via the q-part form.

    The certificate's X is {s : m_S(s) > q}, the set that turns the q-part
    violation into a violation of the (X, subpartition) form.
    """
    m_s = tuple(m_s)
    _check_ms(m_s, p.t_size)
    _require_intersecting(p)
    best = _b2_best(m_s, p)
    if best is None:
        return None
    _, q, parts = best
    X = mask_of(s for s, v in enumerate(m_s) if v > q)
    lhs, rhs = condition_sides("B2", X, 0, parts, p=p, m=DegreeSpec(m_s))
    return _make_cert("B2", X, 0, parts, lhs, rhs)


def check_cover_S_b1(m_s: Sequence[int], p: SetFunction) -> Certificate | None:
    """Same question through the (X, subpartition of T) form, evaluated independently."""
    m_s = tuple(m_s)
    _check_ms(m_s, p.t_size)
    _require_intersecting(p)
    m = DegreeSpec(m_s)
    t_all = (1 << p.t_size) - 1
    sub = _Subpart(p, "full")
    best = None
    for i in range(len(m_s) + 1):
        X = mask_of(top_indices(list(m_s), i))
        sv, parts = sub(t_all, i)
        val = _tilde(m_s, X) + sv - m.gamma
        if best is None or val > best[0]:
            best = (val, X, 0, parts)
    return _cert_or_none("B1", best, p=p, m=m)


def construct_cover_S(m_s: Sequence[int], p: SetFunction, budget: int = 200_000) -> Bigraph:
    """Simple bigraph with S-degrees m_s covering p.

    S-nodes are assigned neighbour sets one at a time (decreasing m_S).  A
    choice is kept only if the residual instance, with demand
    max(0, p(Y) - |Gamma_partial(Y)|), still passes the q-part check; the
    same characterization then guarantees a completion, so the search
    backtracks only if that guarantee were broken.
    """
    cert = check_cover_S(m_s, p)
    if cert is not None:
        raise Infeasible(cert)
    return _construct_cover_S_unchecked(tuple(m_s), p.table(), p.t_size, budget)


def _construct_cover_S_unchecked(m_s, table, t_size: int, budget: int) -> Bigraph:
    s_size = len(m_s)
    full = 1 << t_size
    order = top_indices(list(m_s), s_size)
    rows = [0] * s_size
    cov = [0] * full
    spent = 0

    def residual(k: int) -> Explicit:
        return Explicit(t_size, [max(0, table[Y] - cov[Y]) for Y in range(full)])

    def feasible_rest(k: int) -> bool:
        rest = [m_s[s] for s in order[k:]]
        return _b2_best(rest, residual(k)) is None

    def apply(N: int, sign: int) -> None:
        for Y in range(1, full):
            if Y & N:
                cov[Y] += sign

    def dfs(k: int) -> bool:
        nonlocal spent
        if k == s_size:
            return True
        s = order[k]
        demand = residual(k).table()
        t_order = sorted(range(t_size), key=lambda t: (-demand[1 << t], t))
        for combo in itertools.combinations(t_order, m_s[s]):
            N = mask_of(combo)
            apply(N, +1)
            spent += 1
            if spent > budget:
                raise DefectError(f"cover construction exceeded node budget {budget}")
            if feasible_rest(k + 1):
                rows[s] = N
                if dfs(k + 1):
                    return True
            apply(N, -1)
        return False

    if not dfs(0):
        raise DefectError("no completion found although the covering condition holds")
    G = Bigraph.from_neighbor_sets(t_size, rows)
    p = Explicit(t_size, table)
    if G.degrees_s() != list(m_s) or not covers(G, p):
        raise DefectError("constructed graph fails degree or covering verification")
    return G


# ---------------------------------------------------------------------------
# degree specification on S and T


def check_cover_full(m: DegreeSpec, p: SetFunction | None, fast_paths: bool | str = True) -> Certificate | None:
    """Simple bigraph fitting m and covering p; most violated triple on failure."""
    m.require_balanced()
    flags = _require_intersecting(p)
    if p is not None and p.t_size != len(m.m_t):
        raise InputError("set function and degree spec disagree on |T|")
    _require_at_most_s(p, len(m.m_s))
    sub = _Subpart(p, fast_path_mode(p, flags, fast_paths))
    gamma = m.gamma
    best = _sweep(
        len(m.m_s), len(m.m_t), m.m_s,
        lambda X: _tilde(m.m_s, X),
        lambda Y: _tilde(m.m_t, Y) - gamma,
        sub,
    )
    return _cert_or_none("cover", best, p=p or Zero(len(m.m_t)), m=m)


def lift_singletons(p: SetFunction, m_t: Sequence[int]) -> Explicit:
    """p with each singleton value raised to max(p({t}), m_T(t))."""
    table = list(p.table())
    for t, v in enumerate(m_t):
        table[1 << t] = max(table[1 << t], v)
    return Explicit(p.t_size, table)


def construct_cover_full(m: DegreeSpec, p: SetFunction | None, budget: int = 200_000) -> Bigraph:
    """Fit m and cover p: lift singletons to m_T, then solve the S-only problem."""
    if p is None:
        p = Zero(len(m.m_t))
    cert = check_cover_full(m, p)
    if cert is not None:
        raise Infeasible(cert)
    lifted = lift_singletons(p, m.m_t)
    G = _construct_cover_S_unchecked(m.m_s, lifted.table(), p.t_size, budget)
    if not fits(G, m) or not covers(G, p):
        raise DefectError("lifted construction does not fit m or cover p")
    return G


# ---------------------------------------------------------------------------
# degree bounds and edge-count bounds


def _bounds_sweep(condition: str, b: DegreeBounds, p, sub: _Subpart):
    s_all = (1 << b.s_size) - 1
    t_all = (1 << b.t_size) - 1
    G_S = sum(b.g_s)
    if condition == "ftgs":
        xkey, xterm, yterm = b.g_s, (lambda X: _tilde(b.g_s, X) - G_S), (lambda Y: _tilde(b.f_t, Y))
    elif condition == "fsgt":
        xkey, xterm, yterm = b.f_s, (lambda X: _tilde(b.f_s, X)), (lambda Y: -_tilde(b.g_t, t_all & ~Y))
    elif condition == "galfa":
        xkey = b.g_s
        xterm = lambda X: b.alpha - _tilde(b.g_s, s_all & ~X)  # noqa: E731
        yterm = lambda Y: -_tilde(b.g_t, t_all & ~Y)  # noqa: E731
    elif condition == "fbeta":
        xkey, xterm, yterm = b.f_s, (lambda X: _tilde(b.f_s, X)), (lambda Y: _tilde(b.f_t, Y) - b.beta)
    else:
        raise InputError(condition)
    return _sweep(b.s_size, b.t_size, xkey, xterm, yterm, sub)


def _prepare(b: DegreeBounds, p: SetFunction | None, fast_paths: bool | str):
    if p is not None and p.t_size != b.t_size:
        raise InputError("set function and bounds disagree on |T|")
    flags = _require_intersecting(p)
    _require_at_most_s(p, b.s_size)
    cb = b.clamped()
    sub = _Subpart(p, fast_path_mode(p, flags, fast_paths))
    return cb, sub, p or Zero(b.t_size)


def _check_conditions(conditions, b, p, fast_paths=True) -> Certificate | None:
    cb, sub, pp = _prepare(b, p, fast_paths)
    for cond in conditions:
        cert = _cert_or_none(cond, _bounds_sweep(cond, cb, pp, sub), p=pp, bounds=cb)
        if cert is not None:
            return cert
    return None


def check_bounds(b: DegreeBounds, p: SetFunction | None, fast_paths: bool | str = True) -> Certificate | None:
    """Simple bigraph covering p with f <= d <= g (both degree conditions)."""
    return _check_conditions(("ftgs", "fsgt"), b, p, fast_paths)


def check_bounds_edges(b: DegreeBounds, p: SetFunction | None, fast_paths: bool | str = True) -> Certificate | None:
    """Adds alpha <= |E| <= beta; requires the degree conditions to hold."""
    if check_bounds(b, p, fast_paths) is not None:
        raise PreconditionError("degree-constrained covering graph does not exist; check_bounds first")
    return _check_conditions(("galfa", "fbeta"), b, p, fast_paths)


def min_edge_count(b: DegreeBounds, p: SetFunction | None) -> int:
    """Fewest edges of a simple covering bigraph within the degree bounds."""
    if check_bounds(b, p) is not None:
        raise PreconditionError("no degree-constrained covering graph exists")
    cb, sub, pp = _prepare(b, p, True)
    val = _bounds_sweep("fbeta", _with_beta(cb, 0), pp, sub)[0]
    return int(val)


def max_edge_count(b: DegreeBounds, p: SetFunction | None) -> int:
    """Most edges of a simple covering bigraph within the degree bounds."""
    if check_bounds(b, p) is not None:
        raise PreconditionError("no degree-constrained covering graph exists")
    cb, sub, pp = _prepare(b, p, True)
    val = _bounds_sweep("galfa", _with_alpha(cb, 0), pp, sub)[0]
    return int(-val)


def _with_beta(b: DegreeBounds, beta) -> DegreeBounds:
    return DegreeBounds._DegreeBounds__new_unchecked(b.f_s, b.g_s, b.f_t, b.g_t, b.alpha, beta)


def _with_alpha(b: DegreeBounds, alpha) -> DegreeBounds:
    return DegreeBounds._DegreeBounds__new_unchecked(b.f_s, b.g_s, b.f_t, b.g_t, alpha, b.beta)


# one-sided convenience forms: absent bounds become -inf / +inf


def _inf_vec(n, sign):
    return tuple([sign * INF] * n)


def check_linking_ftgs(f_t, g_s, p: SetFunction | None) -> Certificate | None:
    """Only lower bounds on T and upper bounds on S."""
    b = DegreeBounds(_inf_vec(len(g_s), -1), g_s, f_t, _inf_vec(len(f_t), 1))
    return check_bounds(b, p)


def check_linking_fsgt(f_s, g_t, p: SetFunction | None) -> Certificate | None:
    """Only lower bounds on S and upper bounds on T."""
    b = DegreeBounds(f_s, _inf_vec(len(f_s), 1), _inf_vec(len(g_t), -1), g_t)
    return check_bounds(b, p)


def check_ms_gt(m_s, g_t, p: SetFunction | None) -> Certificate | None:
    """Exact S-degrees and upper bounds on T."""
    b = DegreeBounds(m_s, m_s, _inf_vec(len(g_t), -1), g_t)
    return check_bounds(b, p)


def check_fs_gs(f_s, g_s, p: SetFunction) -> Certificate | None:
    """Bounds on S only."""
    b = DegreeBounds(f_s, g_s, _inf_vec(p.t_size, -1), _inf_vec(p.t_size, 1))
    return check_bounds(b, p)


def check_gt_only(g_t, p: SetFunction, s_size: int) -> Certificate | None:
    """Upper bounds on T only."""
    b = DegreeBounds(_inf_vec(s_size, -1), _inf_vec(s_size, 1), _inf_vec(len(g_t), -1), g_t)
    return check_bounds(b, p)


# ---------------------------------------------------------------------------
# construction under bounds


def _all_hold(b: DegreeBounds, p, sub) -> bool:
    for cond in ("ftgs", "fsgt", "galfa", "fbeta"):
        if _bounds_sweep(cond, b, p, sub)[0] > 0:
            return False
    return True


def lift_bounds(b: DegreeBounds, p: SetFunction | None) -> tuple[DegreeSpec, bool]:
    """Raise lower bounds at loose nodes as far as the four conditions allow.

    Nodes are visited once each, S before T, in index order; each is raised
    to the largest value that keeps all conditions (found by bisection,
    since the conditions only get harder as f grows).  Returns the final
    lower bound as a degree spec and whether the box fallback was needed.
    """
    cb, sub, pp = _prepare(b, p, True)
    cert = _check_conditions(("ftgs", "fsgt"), b, p) or _check_conditions(("galfa", "fbeta"), b, p)
    if cert is not None:
        raise Infeasible(cert)
    f_s, f_t = list(cb.f_s), list(cb.f_t)

    def ok(fs, ft):
        return _all_hold(cb.with_f(fs, ft), pp, sub)

    for side, f, g in (("s", f_s, cb.g_s), ("t", f_t, cb.g_t)):
        for v in range(len(f)):
            lo, hi = f[v], g[v]
            while lo < hi:
                mid = (lo + hi + 1) // 2
                f[v] = mid
                if ok(f_s, f_t):
                    lo = mid
                else:
                    hi = mid - 1
            f[v] = lo
    m = DegreeSpec(f_s, f_t)
    if m.balanced and check_cover_full(m, pp) is None:
        return m, False
    log.warning("lifted lower bounds are not realizable; searching the box")
    return _box_fallback(cb, pp), True


def _box_fallback(b: DegreeBounds, p: SetFunction, limit: int = 2_000_000) -> DegreeSpec:
    ranges_s = [range(lo, hi + 1) for lo, hi in zip(b.f_s, b.g_s)]
    ranges_t = [range(lo, hi + 1) for lo, hi in zip(b.f_t, b.g_t)]
    size = math.prod(len(r) for r in ranges_s + ranges_t)
    if size > limit:
        raise CapacityError(f"box of {size} degree vectors exceeds fallback limit {limit}")
    for m_s in itertools.product(*ranges_s):
        if not (b.alpha <= sum(m_s) <= b.beta):
            continue
        for m_t in itertools.product(*ranges_t):
            if sum(m_t) != sum(m_s):
                continue
            m = DegreeSpec(m_s, m_t)
            if check_cover_full(m, p) is None:
                return m
    raise DefectError("conditions hold but no degree vector in the box is realizable")


def construct_bounds(b: DegreeBounds, p: SetFunction | None, return_info: bool = False):
    """Simple bigraph covering p within degree bounds and the edge interval."""
    m, fallback = lift_bounds(b, p)
    G = construct_cover_full(m, p)
    cb = b.clamped()
    if not verify_bounds(G, cb) or (p is not None and not covers(G, p)):
        raise DefectError("bounded construction failed verification")
    if return_info:
        return G, {"m": m, "fallback": fallback}
    return G


def verify_bounds(G: Bigraph, b: DegreeBounds) -> bool:
    ds, dt = G.degrees_s(), G.degrees_t()
    return (
        G.is_simple
        and all(lo <= d <= hi for d, lo, hi in zip(ds, b.f_s, b.g_s))
        and all(lo <= d <= hi for d, lo, hi in zip(dt, b.f_t, b.g_t))
        and b.alpha <= len(G.edges) <= b.beta
    )
