"""Forests with prescribed T-degrees inside bigraphs, and wooded uniform hypergraphs."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import DefectError, Infeasible, InputError, PreconditionError
from .graph import Bigraph, mask_of, members, popcount, top_indices
from .realize import (
    Certificate,
    DegreeSpec,
    _make_cert,
    check_cover_full,
    check_gale_ryser,
    construct_cover_full,
    neighborhood_sizes,
)
from .setfunc import Forest


@dataclass(frozen=True)
class Hypergraph:
    """Hyperedges over vertices 0..n-1; a hyperedge is a sorted tuple of distinct vertices."""

    n: int
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        edges = tuple(tuple(sorted(int(v) for v in e)) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        for e in edges:
            if len(e) < 2:
                raise InputError(f"hyperedge {list(e)} has fewer than two vertices")
            if len(set(e)) != len(e):
                raise InputError(f"hyperedge {list(e)} repeats a vertex")
            if e[0] < 0 or e[-1] >= self.n:
                raise InputError(f"hyperedge {list(e)} out of range for n={self.n}")

    def to_bigraph(self) -> Bigraph:
        """Incidence bigraph: S = vertices, T = hyperedges."""
        return Bigraph(self.n, len(self.edges), tuple((v, t) for t, e in enumerate(self.edges) for v in e))

    @classmethod
    def from_bigraph(cls, G: Bigraph) -> "Hypergraph":
        return cls(G.s_size, tuple(tuple(members(G.t_neighborhood(t))) for t in range(G.t_size)))

    def degrees(self) -> list[int]:
        d = [0] * self.n
        for e in self.edges:
            for v in e:
                d[v] += 1
        return d

    def is_wooded(self) -> bool:
        return check_t2_forest(self.to_bigraph()) is None

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}


@dataclass(frozen=True)
class ForestViolation:
    """A set Y of T-nodes whose neighbourhood is too small for the requested forest."""

    y: tuple[int, ...]
    neighbors: int
    demand: int

    def to_json(self) -> dict:
        return {"condition": "forest", "y": list(self.y), "neighbors": self.neighbors, "demand": self.demand}


@dataclass(frozen=True)
class WoodedViolation:
    condition: str
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"condition": self.condition, **self.detail}


def _m_for(G_t: int, m_for) -> tuple[int, ...]:
    if m_for is None:
        return (2,) * G_t
    m_for = tuple(int(x) for x in m_for)
    if len(m_for) != G_t or any(x < 0 for x in m_for):
        raise InputError("m_for needs one non-negative entry per T-node")
    return m_for


def check_t2_forest(G: Bigraph, m_for=None) -> ForestViolation | None:
    """Forest with d_F(t) = m_for(t) exists iff |Gamma(Y)| >= m_for(Y) - |Y| + 1 for all Y != {}.

    ``m_for`` defaults to 2 everywhere.  On failure the most violated Y
    (smallest bitmask among ties) is returned.
    """
    m_for = _m_for(G.t_size, m_for)
    sizes = neighborhood_sizes(G)
    best = None
    for Y in range(1, 1 << G.t_size):
        demand = sum(m_for[t] for t in members(Y)) - popcount(Y) + 1
        gap = demand - sizes[Y]
        if gap > 0 and (best is None or gap > best[0]):
            best = (gap, Y, demand)
    if best is None:
        return None
    _, Y, demand = best
    return ForestViolation(tuple(members(Y)), sizes[Y], demand)


# ---------------------------------------------------------------------------
# matroid intersection: graphic matroid of G with a partition matroid on T


def _acyclic(edges, s_size: int) -> bool:
    parent: dict[int, int] = {}

    def find(x):
        while parent.get(x, x) != x:
            parent[x] = parent.get(parent[x], parent[x])
            x = parent[x]
        return x

    for s, t in edges:
        a, b = find(s), find(s_size + t)
        if a == b:
            return False
        parent[a] = b
    return True


def extract_forest(G: Bigraph, m_for=None) -> tuple[tuple[int, int], ...]:
    """Acyclic F subset of E(G) with d_F(t) = m_for(t), by matroid intersection.

    Starting from a greedy common independent set, shortest augmenting
    paths in the exchange graph are applied until the size reaches
    sum(m_for) (which the Hall-type condition guarantees).
    """
    m_for = _m_for(G.t_size, m_for)
    viol = check_t2_forest(G, m_for)
    if viol is not None:
        raise Infeasible(viol)
    E = list(G.edges)
    s_size = G.s_size

    def indep1(I):
        return _acyclic([E[i] for i in I], s_size)

    def indep2(I):
        cnt = [0] * G.t_size
        for i in I:
            cnt[E[i][1]] += 1
        return all(c <= m for c, m in zip(cnt, m_for))

    I: set[int] = set()
    for i in range(len(E)):
        if indep1(I | {i}) and indep2(I | {i}):
            I.add(i)
    target = sum(m_for)
    while len(I) < target:
        outside = [z for z in range(len(E)) if z not in I]
        sources = [z for z in outside if indep1(I | {z})]
        sinks = {z for z in outside if indep2(I | {z})}
        prev = {z: None for z in sources}
        queue = deque(sources)
        end = None
        while queue:
            a = queue.popleft()
            if a not in I and a in sinks:
                end = a
                break
            if a in I:
                nxt = [z for z in outside if z not in prev and indep1((I - {a}) | {z})]
            else:
                nxt = [y for y in sorted(I) if y not in prev and indep2((I - {y}) | {a})]
            for b in nxt:
                prev[b] = a
                queue.append(b)
        if end is None:
            raise DefectError("no augmenting path although the forest condition holds")
        node = end
        while node is not None:
            I ^= {node}
            node = prev[node]
    F = tuple(sorted(E[i] for i in I))
    problem = verify_forest(G, F, m_for)
    if problem:
        raise DefectError(problem)
    return F


def verify_forest(G: Bigraph, F, m_for) -> str | None:
    edges = set(G.edges)
    if any(e not in edges for e in F):
        return "forest uses an edge outside the graph"
    if not _acyclic(F, G.s_size):
        return "forest contains a cycle"
    deg = [0] * G.t_size
    for _, t in F:
        deg[t] += 1
    if deg != list(m_for):
        return f"forest T-degrees {deg} differ from {list(m_for)}"
    return None


def forest_parents(F, s_size: int, t_size: int) -> list[int]:
    """Parent array over S + T (T-nodes shifted by s_size); roots map to -1."""
    n = s_size + t_size
    adj: list[list[int]] = [[] for _ in range(n)]
    for s, t in F:
        adj[s].append(s_size + t)
        adj[s_size + t].append(s)
    parent = [-2] * n
    for r in range(n):
        if parent[r] != -2:
            continue
        parent[r] = -1
        queue = deque([r])
        while queue:
            u = queue.popleft()
            for w in sorted(adj[u]):
                if parent[w] == -2:
                    parent[w] = u
                    queue.append(w)
    return parent


# ---------------------------------------------------------------------------
# degree-specified bigraphs containing a forest


@dataclass(frozen=True)
class ForestRealization:
    graph: Bigraph
    forest: tuple[tuple[int, int], ...]
    flags: dict = field(default_factory=dict)


def check_forest_condition(m: DegreeSpec, m_for) -> Certificate | None:
    """The Gale-Ryser condition, then the forest inequality for non-empty X.

    For |X| = i each T-node independently goes to Y (worth m_T(t) - i), to
    the single part Z (worth m_for(t) - 1) or to neither (worth 0), so the
    sweep is linear per i.  Nodes with m_for(t) = 0 never help the part.
    """
    m.require_balanced()
    m_for = _m_for(len(m.m_t), m_for)
    if any(f > d for f, d in zip(m_for, m.m_t)):
        raise PreconditionError("m_for exceeds m_T somewhere")
    cert = check_gale_ryser(m)
    if cert is not None:
        return cert
    s, t = len(m.m_s), len(m.m_t)
    best = None
    for i in range(1, s + 1):
        X = mask_of(top_indices(list(m.m_s), i))
        Y = mask_of(v for v in range(t) if m.m_t[v] - i > max(m_for[v] - 1, 0))
        Z = mask_of(v for v in range(t) if not Y >> v & 1 and m_for[v] > 0)
        if not Z:
            # no part at all: this is the Gale-Ryser inequality, already checked
            continue
        lhs, rhs = forest_condition_sides(m, m_for, X, Y, Z)
        if lhs > rhs and (best is None or lhs - rhs > best[0]):
            best = (lhs - rhs, X, Y, Z, lhs, rhs)
    if best is None:
        return None
    _, X, Y, Z, lhs, rhs = best
    return _make_cert("t2fax", X, Y, (Z,), lhs, rhs)


def forest_condition_sides(m: DegreeSpec, m_for, X: int, Y: int, Z: int | None = None) -> tuple[int, int]:
    """Both sides of the forest inequality with the single part Z (default: T - Y)."""
    if Z is None:
        Z = ((1 << len(m.m_t)) - 1) & ~Y
    if Z & Y:
        raise InputError("the part must avoid Y")
    x, y = popcount(X), popcount(Y)
    lhs = (
        sum(m.m_s[i] for i in members(X))
        + sum(m.m_t[i] for i in members(Y))
        - x * y
        + sum(m_for[i] for i in members(Z))
        - popcount(Z)
        - x
        + 1
    )
    return lhs, m.gamma


def realize_with_forest(m: DegreeSpec, m_for=None) -> ForestRealization:
    """Simple bigraph fitting m that contains a forest with T-degrees m_for."""
    m_for = _m_for(len(m.m_t), m_for)
    cert = check_forest_condition(m, m_for)
    if cert is not None:
        raise Infeasible(cert)
    flags = {}
    if all(x == 2 for x in m_for):
        flags["wooded_hypotheses"] = len(m.m_s) >= len(m.m_t) + 1 and all(x >= 2 for x in m.m_t)
    p = Forest(m_for)
    if check_cover_full(m, p) is not None:
        raise DefectError("forest condition holds but the covering instance is infeasible")
    G = construct_cover_full(m, p)
    F = extract_forest(G, m_for)
    return ForestRealization(G, F, flags)


# ---------------------------------------------------------------------------
# wooded uniform hypergraphs


@dataclass(frozen=True)
class WoodedResult:
    hypergraph: Hypergraph
    trimmed: tuple[tuple[int, int], ...]  # the two selected vertices of each hyperedge

    def to_json(self) -> dict:
        return {"hypergraph": self.hypergraph.to_json(), "trimmed": [list(e) for e in self.trimmed]}


def check_wooded_uniform(m_s, ell: int) -> WoodedViolation | None:
    if ell < 2:
        raise PreconditionError("hyperedge size must be at least 2")
    m_s = [int(x) for x in m_s]
    gamma = sum(m_s)
    if gamma == 0:
        return None
    if gamma % ell:
        return WoodedViolation("divisibility", {"gamma": gamma, "ell": ell})
    tau = gamma // ell
    positive = [v for v, x in enumerate(m_s) if x > 0]
    for v in positive:
        if m_s[v] > tau:
            return WoodedViolation("degree_above_tau", {"node": v, "m_s": m_s[v], "tau": tau})
    if tau > len(positive) - 1:
        return WoodedViolation("tau_above_support", {"tau": tau, "support": len(positive)})
    return None


def realize_wooded_uniform(m_s, ell: int) -> WoodedResult:
    """ell-uniform wooded hypergraph with vertex degrees m_s, plus its trimming."""
    viol = check_wooded_uniform(m_s, ell)
    if viol is not None:
        raise Infeasible(viol)
    m_s = [int(x) for x in m_s]
    gamma = sum(m_s)
    if gamma == 0:
        return WoodedResult(Hypergraph(len(m_s), ()), ())
    tau = gamma // ell
    support = [v for v, x in enumerate(m_s) if x > 0]
    sub = DegreeSpec([m_s[v] for v in support], [ell] * tau)
    try:
        res = realize_with_forest(sub, [2] * tau)
    except Infeasible as exc:
        raise DefectError(f"degree conditions hold but realization failed: {exc.certificate}") from exc
    edges = tuple(tuple(support[v] for v in members(res.graph.t_neighborhood(t))) for t in range(tau))
    pairs: list[list[int]] = [[] for _ in range(tau)]
    for s, t in res.forest:
        pairs[t].append(support[s])
    H = Hypergraph(len(m_s), edges)
    if H.degrees() != m_s or not all(len(e) == ell for e in H.edges):
        raise DefectError("hypergraph does not fit the degree specification")
    return WoodedResult(H, tuple(tuple(sorted(p)) for p in pairs))
