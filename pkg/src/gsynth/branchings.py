"""Packing arc-disjoint branchings with prescribed root sets, sizes and indegrees.

Root sets come from a bipartite covering problem: S is the set of branchings,
T the node set, and a bigraph covering p(Y) = k - rho(Y) gives root sets
R_j = Gamma(s_j) satisfying Edmonds' cut condition.  The branchings are
then grown arc by arc by :func:`pack_edmonds`.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError, DefectError, Infeasible, InputError, PreconditionError
from .graph import SUBSET_DP_CAP, Bigraph, Digraph, members
from .realize import (
    Certificate,
    DegreeBounds,
    check_bounds,
    check_bounds_edges,
    check_cover_S,
    construct_bounds,
    construct_cover_S,
)
from .setfunc import BranchingIndeg, SubpartitionTable

INF = math.inf


@dataclass(frozen=True)
class Branching:
    root_set: int
    arcs: tuple[tuple[int, int], ...]

    @property
    def size(self) -> int:
        return len(self.arcs)

    def to_json(self) -> dict:
        return {"roots": members(self.root_set), "arcs": [list(a) for a in self.arcs]}


@dataclass(frozen=True)
class CutViolation:
    """A node set X entered by fewer arcs than the number of root sets avoiding it."""

    x: tuple[int, ...]
    indeg: int
    demand: int

    def to_json(self) -> dict:
        return {"condition": "edmonds", "x": list(self.x), "indeg": self.indeg, "demand": self.demand}


@dataclass(frozen=True)
class BranchingCertificate:
    """A violated condition restated for branchings.

    ``branchings`` and ``nodes`` are the S- and T-sides of the underlying
    bipartite certificate; ``parts`` is a subpartition of the node set.
    """

    condition: str
    branchings: tuple[int, ...]
    nodes: tuple[int, ...]
    parts: tuple[tuple[int, ...], ...]
    lhs: int
    rhs: int

    def to_json(self) -> dict:
        return {
            "condition": self.condition,
            "branchings": list(self.branchings),
            "nodes": list(self.nodes),
            "parts": [list(p) for p in self.parts],
            "lhs": self.lhs,
            "rhs": self.rhs,
        }

    @classmethod
    def from_bipartite(cls, cert: Certificate) -> "BranchingCertificate":
        return cls(cert.condition, cert.x, cert.y, cert.parts, cert.lhs, cert.rhs)


@dataclass(frozen=True)
class Sizes:
    mu: tuple[int, ...]


@dataclass(frozen=True)
class SizesIndeg:
    mu: tuple[int, ...]
    m_in: tuple[int, ...]


@dataclass(frozen=True)
class Bounds:
    phi: tuple[int, ...]
    gamma_up: tuple[int, ...]
    f_in: tuple[int, ...] | None = None
    g_in: tuple[int, ...] | None = None
    alpha_u: float = 0
    beta_u: float = INF


@dataclass(frozen=True)
class PackingRequest:
    D: Digraph
    k: int
    mode: Sizes | SizesIndeg | Bounds = field(default_factory=lambda: Sizes(()))


# ---------------------------------------------------------------------------
# Edmonds' condition and the arc-by-arc packer


def _masks(n: int):
    if n > SUBSET_DP_CAP:
        raise CapacityError(f"n={n} exceeds the subset cap {SUBSET_DP_CAP}")
    return np.arange(1 << n, dtype=np.int64)


def _avoid_count(masks, sets) -> np.ndarray:
    out = np.zeros(len(masks), dtype=np.int64)
    for R in sets:
        out += (masks & R) == 0
    return out


def _validate_roots(D: Digraph, root_sets) -> list[int]:
    full = (1 << D.n) - 1
    roots = [int(R) for R in root_sets]
    for R in roots:
        if R == 0 or R & ~full:
            raise InputError(f"root set {members(R)} must be a non-empty subset of the nodes")
    return roots


def check_edmonds(D: Digraph, root_sets) -> CutViolation | None:
    """rho(X) >= #{j : R_j misses X} for every non-empty X; the most deficient X otherwise."""
    roots = _validate_roots(D, root_sets)
    masks = _masks(D.n)
    deficit = _avoid_count(masks, roots) - D.in_degree_table()
    deficit[0] = 0
    X = int(np.argmax(deficit))
    if deficit[X] <= 0:
        return None
    return CutViolation(tuple(members(X)), D.in_degree(X), int(deficit[X] + D.in_degree(X)))


def pack_edmonds(D: Digraph, root_sets, budget: int = 100_000) -> list[Branching]:
    """Arc-disjoint branchings with the given root sets.

    Branchings are grown one arc at a time, always extending the lowest
    unfinished one by the first arc (in index order) after which Edmonds'
    condition still holds for the unused arcs and the current covered sets.
    """
    roots = _validate_roots(D, root_sets)
    cert = check_edmonds(D, roots)
    if cert is not None:
        raise Infeasible(cert)
    n, full = D.n, (1 << D.n) - 1
    masks = _masks(n)
    enters = [(((masks >> v) & 1) & (1 - ((masks >> u) & 1))).astype(np.int64) for u, v in D.arcs]
    rho = D.in_degree_table().copy()
    covered = list(roots)
    chosen: list[list[int]] = [[] for _ in roots]
    used = [False] * len(D.arcs)
    spent = 0

    def holds() -> bool:
        slack = rho - _avoid_count(masks, covered)
        slack[0] = 0
        return bool(slack.min() >= 0)

    def grow() -> bool:
        nonlocal spent
        open_j = [j for j, U in enumerate(covered) if U != full]
        if not open_j:
            return True
        j = open_j[0]
        U = covered[j]
        for a, (u, v) in enumerate(D.arcs):
            if used[a] or not (U >> u) & 1 or (U >> v) & 1:
                continue
            spent += 1
            if spent > budget:
                raise DefectError(f"branching packer exceeded budget {budget}")
            used[a] = True
            rho[:] -= enters[a]
            covered[j] = U | (1 << v)
            chosen[j].append(a)
            if holds() and grow():
                return True
            chosen[j].pop()
            covered[j] = U
            rho[:] += enters[a]
            used[a] = False
        return False

    if not grow():
        raise DefectError("no packing found although Edmonds' condition holds")
    out = [Branching(R, tuple(D.arcs[a] for a in arcs)) for R, arcs in zip(roots, chosen)]
    problem = verify_packing(D, out)
    if problem:
        raise DefectError(problem)
    return out


def verify_packing(D: Digraph, packing: list[Branching]) -> str | None:
    """Independent check: branching structure and arc-disjointness. Returns a problem or None."""
    avail = Counter(D.arcs)
    spent = Counter(a for B in packing for a in B.arcs)
    for arc, c in spent.items():
        if c > avail[arc]:
            return f"arc {arc} used {c} times but present {avail[arc]} times"
    for idx, B in enumerate(packing):
        parent = {}
        for u, v in B.arcs:
            if v in parent:
                return f"branching {idx}: node {v} has two entering arcs"
            parent[v] = u
        for v in range(D.n):
            in_root = (B.root_set >> v) & 1
            if in_root and v in parent:
                return f"branching {idx}: root {v} has an entering arc"
            if not in_root and v not in parent:
                return f"branching {idx}: non-root {v} has no entering arc"
        for v in parent:
            seen = set()
            w = v
            while w in parent:
                if w in seen:
                    return f"branching {idx}: cycle through {w}"
                seen.add(w)
                w = parent[w]
        if len(B.arcs) + bin(B.root_set).count("1") != D.n:
            return f"branching {idx}: size plus root count differs from n"
    return None


def packing_indegrees(D: Digraph, packing: list[Branching]) -> list[int]:
    rho = [0] * D.n
    for B in packing:
        for _, v in B.arcs:
            rho[v] += 1
    return rho


# ---------------------------------------------------------------------------
# prescribed sizes


def _check_mu(D: Digraph, mu, low: int = 1) -> tuple[int, ...]:
    mu = tuple(int(x) for x in mu)
    for j, x in enumerate(mu):
        if not low <= x <= D.n - 1:
            raise PreconditionError(f"size mu[{j}]={x} outside [{low}, n-1={D.n - 1}]")
    return mu


def check_pack_sizes(D: Digraph, k: int, mu) -> BranchingCertificate | None:
    """Sizes mu_j achievable iff every subpartition {V_i} of V has
    sum rho(V_i) >= sum_j (q - (n - mu_j))^+.  The most violated subpartition
    is returned, with lhs the right-hand demand and rhs the indegree sum."""
    mu = _check_mu(D, mu)
    if len(mu) != k:
        raise InputError(f"expected {k} sizes, got {len(mu)}")
    roots = [D.n - x for x in mu]
    p = BranchingIndeg(D, k)
    dp = SubpartitionTable(p)
    full = (1 << D.n) - 1
    best = None
    for q in range(D.n, 0, -1):
        excess = dp.best(full, q) - sum(min(r, q) for r in roots)
        if excess > 0 and (best is None or excess > best[0]):
            best = (excess, q)
    if best is None:
        return None
    q = best[1]
    parts = dp.parts(full, q)
    indeg = sum(D.in_degree(P) for P in parts)
    demand = sum(max(0, q - r) for r in roots)
    return BranchingCertificate(
        "branching_sizes", (), (), tuple(tuple(members(P)) for P in parts), int(demand), int(indeg)
    )


def _roots_from(G: Bigraph) -> list[int]:
    return [G.s_neighborhood(j) for j in range(G.s_size)]


def pack_sizes(D: Digraph, k: int, mu) -> list[Branching]:
    """k arc-disjoint branchings with |B_j| = mu_j."""
    cert = check_pack_sizes(D, k, mu)
    if cert is not None:
        raise Infeasible(cert)
    mu = tuple(mu)
    G = construct_cover_S([D.n - x for x in mu], BranchingIndeg(D, k))
    packing = pack_edmonds(D, _roots_from(G))
    if [B.size for B in packing] != list(mu):
        raise DefectError("packing sizes differ from the request")
    return packing


def pack_sizes_indeg(D: Digraph, k: int, mu, m_in) -> list[Branching]:
    """Sizes mu_j and exact indegrees m_in(v) in the union of the branchings."""
    mu = _check_mu(D, mu)
    m_in = tuple(int(x) for x in m_in)
    if len(m_in) != D.n:
        raise InputError("m_in must have one entry per node")
    if sum(mu) != sum(m_in):
        raise PreconditionError(f"sum of sizes {sum(mu)} differs from sum of m_in {sum(m_in)}")
    for v, x in enumerate(m_in):
        if not 0 <= x <= min(D.in_degree(1 << v), k):
            raise PreconditionError(f"m_in({v})={x} outside [0, min(rho(v), k)]")
    p = BranchingIndeg(D, k, m_in)
    m_s = [D.n - x for x in mu]
    cert = check_cover_S(m_s, p)
    if cert is not None:
        raise Infeasible(BranchingCertificate.from_bipartite(cert))
    G = construct_cover_S(m_s, p)
    packing = pack_edmonds(D, _roots_from(G))
    if [B.size for B in packing] != list(mu) or packing_indegrees(D, packing) != list(m_in):
        raise DefectError("packing misses the requested sizes or indegrees")
    return packing


# ---------------------------------------------------------------------------
# bounded sizes, indegrees and total size


def bounds_to_bipartite(D: Digraph, k: int, req: Bounds) -> DegreeBounds:
    """Translate branching bounds to degree bounds on (branchings, nodes)."""
    n = D.n
    f_in = req.f_in if req.f_in is not None else (0,) * n
    g_in = req.g_in if req.g_in is not None else (k,) * n
    if not (len(req.phi) == len(req.gamma_up) == k):
        raise InputError(f"expected {k} size bounds")
    if len(f_in) != n or len(g_in) != n:
        raise InputError("indegree bounds must have one entry per node")
    for j, (lo, hi) in enumerate(zip(req.phi, req.gamma_up)):
        if not 0 <= lo <= hi <= n - 1:
            raise PreconditionError(f"size bounds of branching {j} violate 0 <= phi <= gamma <= n-1")
    for v, (lo, hi) in enumerate(zip(f_in, g_in)):
        if not 0 <= lo <= hi <= k:
            raise PreconditionError(f"indegree bounds at node {v} violate 0 <= f <= g <= k")
    return DegreeBounds(
        tuple(n - x for x in req.gamma_up),
        tuple(n - x for x in req.phi),
        tuple(k - x for x in g_in),
        tuple(k - x for x in f_in),
        k * n - req.beta_u,
        k * n - req.alpha_u,
    )


def check_pack_bounds(D: Digraph, k: int, req: Bounds) -> BranchingCertificate | None:
    b = bounds_to_bipartite(D, k, req)
    p = BranchingIndeg(D, k)
    cert = check_bounds(b, p) or check_bounds_edges(b, p)
    return None if cert is None else BranchingCertificate.from_bipartite(cert)


def pack_bounds(D: Digraph, k: int, req: Bounds) -> list[Branching]:
    """k arc-disjoint branchings within size, indegree and total-size bounds."""
    cert = check_pack_bounds(D, k, req)
    if cert is not None:
        raise Infeasible(cert)
    b = bounds_to_bipartite(D, k, req)
    G = construct_bounds(b, BranchingIndeg(D, k))
    packing = pack_edmonds(D, _roots_from(G))
    problem = _bounds_problem(D, k, req, packing)
    if problem:
        raise DefectError(problem)
    return packing


def _bounds_problem(D: Digraph, k: int, req: Bounds, packing) -> str | None:
    f_in = req.f_in if req.f_in is not None else (0,) * D.n
    g_in = req.g_in if req.g_in is not None else (k,) * D.n
    for j, B in enumerate(packing):
        if not req.phi[j] <= B.size <= req.gamma_up[j]:
            return f"branching {j} has size {B.size} outside bounds"
    for v, r in enumerate(packing_indegrees(D, packing)):
        if not f_in[v] <= r <= g_in[v]:
            return f"node {v} has indegree {r} outside bounds"
    total = sum(B.size for B in packing)
    if not req.alpha_u <= total <= req.beta_u:
        return f"total size {total} outside [{req.alpha_u}, {req.beta_u}]"
    return None


def arborescences_with_root_counts(D: Digraph, k: int, f, g) -> list[Branching]:
    """k arc-disjoint spanning arborescences, node v the root of between f(v) and g(v) of them."""
    n = D.n
    req = Bounds((n - 1,) * k, (n - 1,) * k, tuple(k - x for x in g), tuple(k - x for x in f))
    return pack_bounds(D, k, req)


def equal_size_branchings(D: Digraph, k: int, mu: int) -> list[Branching]:
    """k arc-disjoint branchings, each of size mu."""
    return pack_bounds(D, k, Bounds((mu,) * k, (mu,) * k))
