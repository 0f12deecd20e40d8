"""Graph data model: digraphs, bipartite graphs, subpartitions, bitmask helpers.

Node subsets are plain ``int`` bitmasks throughout the package: bit ``i``
set means node ``i`` belongs to the subset.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import CapacityError, InputError

SUBPARTITION_CAP = 12
SUBSET_DP_CAP = 16


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def members(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, from ``mask`` down to 0."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def top_indices(values: list, i: int) -> list[int]:
    """Indices of the ``i`` largest values, ties broken by smallest index."""
    order = sorted(range(len(values)), key=lambda v: (-values[v], v))
    return order[:i]


def _check_mask(mask: int, size: int, what: str) -> None:
    if mask < 0 or mask >> size:
        raise InputError(f"{what} subset {bin(mask)} out of range for {size} nodes")


@dataclass(frozen=True)
class Digraph:
    """Directed multigraph on nodes ``0..n-1``; parallel arcs are repeated entries."""

    n: int
    arcs: tuple[tuple[int, int], ...]
    allow_loops: bool = False

    def __post_init__(self):
        arcs = tuple((int(u), int(v)) for u, v in self.arcs)
        object.__setattr__(self, "arcs", arcs)
        if self.n < 0:
            raise InputError("node count must be non-negative")
        for u, v in arcs:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InputError(f"arc ({u},{v}) out of range for n={self.n}")
            if u == v and not self.allow_loops:
                raise InputError(f"loop at node {u}")

    def in_degree(self, X: int) -> int:
        _check_mask(X, self.n, "node")
        return sum(1 for u, v in self.arcs if (X >> v) & 1 and not (X >> u) & 1)

    def out_degree(self, X: int) -> int:
        _check_mask(X, self.n, "node")
        return sum(1 for u, v in self.arcs if (X >> u) & 1 and not (X >> v) & 1)

    def in_degree_table(self):
        """``rho[X]`` for every subset X, as a numpy int array of length 2**n."""
        import numpy as np

        if self.n > SUBSET_DP_CAP:
            raise CapacityError(f"n={self.n} exceeds subset cap {SUBSET_DP_CAP}")
        masks = np.arange(1 << self.n, dtype=np.int64)
        rho = np.zeros(1 << self.n, dtype=np.int64)
        for u, v in self.arcs:
            rho += ((masks >> v) & 1) & (1 - ((masks >> u) & 1))
        return rho


@dataclass(frozen=True)
class Bigraph:
    """Bipartite multigraph G=(S,T;E) with S = 0..s_size-1 and T = 0..t_size-1."""

    s_size: int
    t_size: int
    edges: tuple[tuple[int, int], ...]
    simple: bool = True
    _adj: tuple = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        edges = tuple(sorted((int(s), int(t)) for s, t in self.edges))
        object.__setattr__(self, "edges", edges)
        for s, t in edges:
            if not (0 <= s < self.s_size and 0 <= t < self.t_size):
                raise InputError(f"edge ({s},{t}) out of range for {self.s_size}x{self.t_size}")
        if self.simple and len(set(edges)) != len(edges):
            dup = next(e for e, c in Counter(edges).items() if c > 1)
            raise InputError(f"repeated edge {dup} in a graph flagged simple")
        adj = [0] * self.t_size
        for s, t in edges:
            adj[t] |= 1 << s
        object.__setattr__(self, "_adj", tuple(adj))

    @property
    def is_simple(self) -> bool:
        return len(set(self.edges)) == len(self.edges)

    def degrees_s(self) -> list[int]:
        d = [0] * self.s_size
        for s, _ in self.edges:
            d[s] += 1
        return d

    def degrees_t(self) -> list[int]:
        d = [0] * self.t_size
        for _, t in self.edges:
            d[t] += 1
        return d

    def neighbors(self, Y: int) -> int:
        """Gamma_G(Y): bitmask over S of nodes adjacent to some t in Y."""
        _check_mask(Y, self.t_size, "T")
        out = 0
        for t in members(Y):
            out |= self._adj[t]
        return out

    def t_neighborhood(self, t: int) -> int:
        return self._adj[t]

    def s_neighborhood(self, s: int) -> int:
        return mask_of(t for s2, t in self.edges if s2 == s)

    def to_matrix(self) -> list[list[int]]:
        """Row-major 0-1 (or multiplicity) matrix, rows indexed by S."""
        M = [[0] * self.t_size for _ in range(self.s_size)]
        for s, t in self.edges:
            M[s][t] += 1
        return M

    @classmethod
    def from_matrix(cls, M: list[list[int]]) -> "Bigraph":
        s_size = len(M)
        t_size = len(M[0]) if M else 0
        edges = [(s, t) for s in range(s_size) for t in range(t_size) for _ in range(M[s][t])]
        return cls(s_size, t_size, tuple(edges), simple=all(x <= 1 for row in M for x in row))

    @classmethod
    def from_neighbor_sets(cls, t_size: int, rows: list[int]) -> "Bigraph":
        """Simple bigraph whose S-node ``s`` is adjacent to the T-bitmask ``rows[s]``."""
        edges = [(s, t) for s, row in enumerate(rows) for t in members(row)]
        return cls(len(rows), t_size, tuple(edges))


@dataclass(frozen=True)
class Subpartition:
    """Pairwise-disjoint non-empty subsets of a ground set, as bitmasks."""

    parts: tuple[int, ...]
    ground: int

    def __post_init__(self):
        seen = 0
        for part in self.parts:
            if part == 0:
                raise InputError("subpartition has an empty part")
            if part & seen:
                raise InputError("subpartition parts overlap")
            if part & ~self.ground:
                raise InputError("subpartition part leaves the ground set")
            seen |= part

    def __len__(self) -> int:
        return len(self.parts)

    @property
    def union(self) -> int:
        u = 0
        for part in self.parts:
            u |= part
        return u


def in_degree(D: Digraph, X: int) -> int:
    return D.in_degree(X)


def neighbors(G: Bigraph, Y: int) -> int:
    return G.neighbors(Y)


def max_matching(G: Bigraph) -> tuple[list[tuple[int, int]], int]:
    """Maximum matching by repeated augmenting-path search (Kuhn).

    Returns the matching as a sorted edge list together with its size.
    """
    match_s = [-1] * G.t_size  # t -> matched s
    match_t = [-1] * G.s_size  # s -> matched t
    adj = [members(G.t_neighborhood(t)) for t in range(G.t_size)]

    def augment(t: int, seen: list[bool]) -> bool:
        for s in adj[t]:
            if seen[s]:
                continue
            seen[s] = True
            if match_t[s] == -1 or augment(match_t[s], seen):
                match_t[s] = t
                match_s[t] = s
                return True
        return False

    size = 0
    for t in range(G.t_size):
        if augment(t, [False] * G.s_size):
            size += 1
    matching = sorted((s, t) for s, t in enumerate(match_t) if t != -1)
    return matching, size


def enumerate_subpartitions(
    ground: int, max_parts: int | None = None, cap: int = SUBPARTITION_CAP
) -> Iterator[Subpartition]:
    """Every subpartition of every subset of ``ground``, each exactly once.

    Elements are scanned in index order; each is skipped, opens a new part,
    or joins an already open part, so no subpartition is produced twice.
    """
    elems = members(ground)
    if len(elems) > cap:
        raise CapacityError(
            f"ground set of size {len(elems)} exceeds enumeration cap {cap}; "
            "use the subset-DP checks in gsynth.setfunc instead"
        )

    def rec(idx: int, parts: list[int]) -> Iterator[tuple[int, ...]]:
        if idx == len(elems):
            yield tuple(parts)
            return
        bit = 1 << elems[idx]
        yield from rec(idx + 1, parts)
        for j in range(len(parts)):
            parts[j] |= bit
            yield from rec(idx + 1, parts)
            parts[j] &= ~bit
        if max_parts is None or len(parts) < max_parts:
            parts.append(bit)
            yield from rec(idx + 1, parts)
            parts.pop()

    for parts in rec(0, []):
        yield Subpartition(parts, ground)
