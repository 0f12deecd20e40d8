"""Set functions on T, their classification, subpartition maxima, and b0.

A set function is evaluated on bitmasks over T and is always 0 on the
empty set.  Four forms are supported: an explicit value table and three
closed forms (term rank, forest, branching indegree).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import CapacityError, InputError, PreconditionError
from .graph import SUBSET_DP_CAP, Digraph, members, popcount, submasks

NEG_INF = -math.inf
POS_INF = math.inf


@dataclass(frozen=True)
class Flags:
    """Property flags: True/False when verified, None when unverified."""

    intersecting_supermodular: bool | None = None
    fully_supermodular: bool | None = None
    monotone: bool | None = None


class SetFunction:
    """Base class; subclasses implement ``_value`` for non-empty masks."""

    kind = "abstract"
    t_size: int

    def __call__(self, Y: int) -> int:
        if Y == 0:
            return 0
        return self._value(Y)

    def _value(self, Y: int) -> int:  # pragma: no cover - abstract
        raise NotImplementedError

    @cached_property
    def _table(self) -> tuple[int, ...]:
        if self.t_size > SUBSET_DP_CAP:
            raise CapacityError(f"|T|={self.t_size} exceeds table cap {SUBSET_DP_CAP}")
        return tuple(self(Y) for Y in range(1 << self.t_size))

    def table(self) -> tuple[int, ...]:
        """Values on every subset, indexed by bitmask."""
        return self._table

    def closed_form_flags(self) -> Flags:
        return Flags()

    def to_json(self) -> dict:  # pragma: no cover - abstract
        raise NotImplementedError


class Explicit(SetFunction):
    kind = "explicit"

    def __init__(self, t_size: int, values):
        if t_size > SUBSET_DP_CAP:
            raise CapacityError(f"explicit table with |T|={t_size} exceeds cap {SUBSET_DP_CAP}")
        values = list(values)
        if len(values) != 1 << t_size:
            raise InputError(f"explicit table needs {1 << t_size} values, got {len(values)}")
        values[0] = 0
        self.t_size = t_size
        self.values = tuple(int(v) for v in values)

    def _value(self, Y: int) -> int:
        return self.values[Y]

    def table(self) -> tuple[int, ...]:
        return self.values

    @classmethod
    def from_dict(cls, t_size: int, values: dict[int, int], default: int | None = None) -> "Explicit":
        table = []
        for Y in range(1 << t_size):
            if Y in values:
                table.append(values[Y])
            elif Y == 0:
                table.append(0)
            elif default is not None:
                table.append(default)
            else:
                raise InputError(f"explicit set function has no value for subset {Y}")
        return cls(t_size, table)

    @classmethod
    def of(cls, p: SetFunction) -> "Explicit":
        return cls(p.t_size, p.table())

    def to_json(self) -> dict:
        return {"kind": "explicit", "t": self.t_size, "values": {str(Y): v for Y, v in enumerate(self.values)}}

    def __repr__(self) -> str:
        return f"Explicit(t_size={self.t_size})"


class TermRank(SetFunction):
    """ell - |T - Y| on non-empty Y: covering it means a matching of size ell."""

    kind = "termrank"

    def __init__(self, t_size: int, ell: int):
        if ell < 0 or ell > t_size:
            raise PreconditionError(f"need 0 <= ell <= |T|={t_size}, got ell={ell}")
        self.t_size = t_size
        self.ell = ell

    def _value(self, Y: int) -> int:
        return self.ell - (self.t_size - popcount(Y))

    def closed_form_flags(self) -> Flags:
        return Flags(True, True, True)

    def to_json(self) -> dict:
        return {"kind": "termrank", "t": self.t_size, "ell": self.ell}

    def __repr__(self) -> str:
        return f"TermRank(t_size={self.t_size}, ell={self.ell})"


class Forest(SetFunction):
    """sum of m_for over Y, minus |Y|, plus 1: covered iff a forest with T-degrees m_for exists."""

    kind = "forest"

    def __init__(self, m_for):
        self.m_for = tuple(int(x) for x in m_for)
        if any(x < 0 for x in self.m_for):
            raise InputError("forest degrees must be non-negative")
        self.t_size = len(self.m_for)

    def _value(self, Y: int) -> int:
        return sum(self.m_for[t] for t in members(Y)) - popcount(Y) + 1

    def closed_form_flags(self) -> Flags:
        # modular on intersecting pairs; disjoint pairs lose the +1
        return Flags(
            intersecting_supermodular=True,
            fully_supermodular=self.t_size <= 1,
            monotone=all(x >= 1 for x in self.m_for),
        )

    def to_json(self) -> dict:
        return {"kind": "forest", "m_for": list(self.m_for)}

    def __repr__(self) -> str:
        return f"Forest(m_for={list(self.m_for)})"


class BranchingIndeg(SetFunction):
    """k - rho_D(Y); singletons use k - m_in(v) when an indegree prescription is given."""

    kind = "branching"

    def __init__(self, D: Digraph, k: int, m_in=None):
        self.D = D
        self.k = k
        self.m_in = None if m_in is None else tuple(int(x) for x in m_in)
        if self.m_in is not None and len(self.m_in) != D.n:
            raise InputError(f"m_in has length {len(self.m_in)}, expected {D.n}")
        self.t_size = D.n

    @cached_property
    def _rho(self):
        return self.D.in_degree_table() if self.D.n <= SUBSET_DP_CAP else None

    def _value(self, Y: int) -> int:
        if self.m_in is not None and Y & (Y - 1) == 0:
            return self.k - self.m_in[Y.bit_length() - 1]
        rho = self._rho[Y] if self._rho is not None else self.D.in_degree(Y)
        return self.k - int(rho)

    def closed_form_flags(self) -> Flags:
        if self.m_in is not None:
            for v in range(self.D.n):
                if self.m_in[v] > self.D.in_degree(1 << v):
                    raise PreconditionError(
                        f"m_in({v})={self.m_in[v]} exceeds in-degree {self.D.in_degree(1 << v)}"
                    )
        return Flags(intersecting_supermodular=True)

    def to_json(self) -> dict:
        return {
            "kind": "branching",
            "digraph": {"n": self.D.n, "arcs": [list(a) for a in self.D.arcs]},
            "k": self.k,
            "m_in": None if self.m_in is None else list(self.m_in),
        }

    def __repr__(self) -> str:
        return f"BranchingIndeg(n={self.D.n}, k={self.k}, m_in={self.m_in})"


class Zero(Explicit):
    def __init__(self, t_size: int):
        super().__init__(t_size, [0] * (1 << t_size))


def hall(t_size: int) -> Explicit:
    """p(Y) = |Y|: covered iff a matching covers T."""
    return Explicit(t_size, [popcount(Y) for Y in range(1 << t_size)])


def eval_p(p: SetFunction, Y: int) -> int:
    return p(Y)


# ---------------------------------------------------------------------------
# classification


def _pair_check(table: np.ndarray, t_size: int, *, intersecting: bool, positive: bool) -> bool:
    full = 1 << t_size
    Ys = np.arange(full, dtype=np.int64)
    for X in range(1, full):
        px = table[X]
        if positive and px <= 0:
            continue
        sel = Ys[X + 1:]
        sel = sel[sel != 0]
        if intersecting:
            sel = sel[(sel & X) != 0]
        if positive:
            sel = sel[table[sel] > 0]
        if sel.size == 0:
            continue
        lhs = px + table[sel]
        rhs = table[sel & X] + table[sel | X]
        if np.any(lhs > rhs):
            return False
    return True


def is_intersecting_supermodular(p: SetFunction, positive: bool = True) -> bool:
    table = np.asarray(p.table(), dtype=np.int64)
    return _pair_check(table, p.t_size, intersecting=True, positive=positive)


def is_fully_supermodular(p: SetFunction) -> bool:
    table = np.asarray(p.table(), dtype=np.int64)
    return _pair_check(table, p.t_size, intersecting=False, positive=False)


def is_monotone(p: SetFunction) -> bool:
    table = p.table()
    for Y in range(1, 1 << p.t_size):
        for t in range(p.t_size):
            if not (Y >> t) & 1 and table[Y] > table[Y | (1 << t)]:
                return False
    return True


def classify(p: SetFunction, exhaustive: bool = False) -> Flags:
    """Property flags of ``p``.

    Closed forms get their known flags; the explicit form (or any form with
    ``exhaustive=True``) is checked pair by pair.
    """
    flags = p.closed_form_flags()
    if isinstance(p, Explicit) or exhaustive:
        return Flags(
            intersecting_supermodular=is_intersecting_supermodular(p),
            fully_supermodular=is_fully_supermodular(p),
            monotone=is_monotone(p),
        )
    return flags


# ---------------------------------------------------------------------------
# subpartition maxima


class SubpartitionTable:
    """best[W][q] = max over q-part subpartitions of W of the sum of p over parts.

    Built by subset DP over the submasks of ``ground``: either the lowest
    element of W is uncovered, or the part containing it is chosen.
    """

    def __init__(self, p: SetFunction, ground: int | None = None):
        if p.t_size > SUBSET_DP_CAP:
            raise CapacityError(f"|T|={p.t_size} exceeds subset-DP cap {SUBSET_DP_CAP}")
        self.p = p
        self.ground = (1 << p.t_size) - 1 if ground is None else ground
        table = p.table()
        nq = popcount(self.ground) + 1
        best: dict[int, list] = {0: [0] + [NEG_INF] * (nq - 1)}
        choice: dict[int, list] = {0: [0] * nq}
        for W in sorted(submasks(self.ground)):
            if W == 0:
                continue
            low = W & -W
            rest = W ^ low
            row = list(best[rest])
            ch = [0] * nq
            for sub in submasks(rest):
                part = sub | low
                pv = table[part]
                prev = best[W ^ part]
                for q in range(1, nq):
                    cand = pv + prev[q - 1]
                    if cand > row[q]:
                        row[q] = cand
                        ch[q] = part
            best[W] = row
            choice[W] = ch
        self._best = best
        self._choice = choice

    def best(self, W: int, q: int):
        row = self._best[W]
        return row[q] if q < len(row) else NEG_INF

    def parts(self, W: int, q: int) -> tuple[int, ...]:
        """A maximizing q-part subpartition of W (empty tuple if q == 0)."""
        if self.best(W, q) == NEG_INF:
            raise ValueError(f"no {q}-part subpartition of {W}")
        out = []
        while q > 0:
            part = self._choice[W][q]
            if part == 0:
                W ^= W & -W
                continue
            out.append(part)
            W ^= part
            q -= 1
        return tuple(sorted(out))

    def shifted(self, W: int, shift: int) -> tuple:
        """max over all subpartitions of W of sum (p(P) - shift), and its q."""
        row = self._best[W]
        best_v, best_q = 0, 0
        for q in range(1, len(row)):
            if row[q] == NEG_INF:
                continue
            v = row[q] - q * shift
            if v > best_v:
                best_v, best_q = v, q
        return best_v, best_q


def subpartition_max(p: SetFunction, ground: int, q: int):
    """Max of sum p(T_i) over subpartitions of ``ground`` with exactly q parts (-inf if none)."""
    if q == 0:
        return 0
    if q > popcount(ground):
        return NEG_INF
    return SubpartitionTable(p, ground).best(ground, q)


class SingleTable:
    """Best single part: smax[W] = max over non-empty P subset of W of p(P)."""

    def __init__(self, p: SetFunction):
        table = p.table()
        full = 1 << p.t_size
        smax = [NEG_INF] * full
        arg = [0] * full
        for W in range(1, full):
            smax[W], arg[W] = table[W], W
            for t in members(W):
                R = W ^ (1 << t)
                if R and smax[R] > smax[W]:
                    smax[W], arg[W] = smax[R], arg[R]
        self.smax = smax
        self.arg = arg


# ---------------------------------------------------------------------------
# master submodular function b0


class MasterFunction:
    """b0 on V = S + T (S on the low bits, T shifted by s_size), memoized."""

    def __init__(self, s_size: int, p: SetFunction):
        table = p.table()
        for Y in range(1 << p.t_size):
            if table[Y] > s_size:
                raise PreconditionError(f"p({members(Y)})={table[Y]} exceeds |S|={s_size}", )
        self.s_size = s_size
        self.t_size = p.t_size
        self.p = p
        self._dp = SubpartitionTable(p)
        self._memo: dict[int, int] = {}

    @property
    def full(self) -> int:
        return (1 << (self.s_size + self.t_size)) - 1

    def split(self, U: int) -> tuple[int, int]:
        return U & ((1 << self.s_size) - 1), U >> self.s_size

    def join(self, X: int, Z: int) -> int:
        return X | (Z << self.s_size)

    def __call__(self, U: int) -> int:
        v = self._memo.get(U)
        if v is None:
            v = self._compute(U)
            self._memo[U] = v
        return v

    def _compute(self, U: int) -> int:
        X, Z = self.split(U)
        x = popcount(X)
        base = (self.t_size - popcount(Z)) * x
        best = 0
        for q in range(1, popcount(Z) + 1):
            sp = self._dp.best(Z, q)
            if sp == NEG_INF:
                continue
            best = min(best, q * x - sp)
        return base + int(best)

    def p0(self, U: int) -> int:
        """Complementary supermodular function: b0(V) - b0(V - U)."""
        return self(self.full) - self(self.full & ~U)


def eval_b0(M: MasterFunction, U: int) -> int:
    return M(U)


def member_in_B0(M: MasterFunction, m) -> tuple[bool, int | None]:
    """Whether (m_S, -m_T) lies in the 0-base-polyhedron of b0.

    Returns ``(True, None)`` or ``(False, U)`` with U maximizing the excess
    of the vector's sum over b0.
    """
    m_s, m_t = list(m.m_s), list(m.m_t)
    if len(m_s) != M.s_size or len(m_t) != M.t_size:
        raise InputError("degree vector sizes do not match the master function")
    if sum(m_s) != sum(m_t):
        raise PreconditionError(f"unbalanced degree spec: {sum(m_s)} != {sum(m_t)}")
    weights = m_s + [-x for x in m_t]
    best_excess, witness = 0, None
    for U in range(M.full + 1):
        excess = sum(weights[i] for i in members(U)) - M(U)
        if excess > best_excess:
            best_excess, witness = excess, U
    return witness is None, witness
