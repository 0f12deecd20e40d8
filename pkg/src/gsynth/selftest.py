"""Quick desk-scale agreement checks between the main path and the oracle."""

from __future__ import annotations

import random

from . import branchings as br
from . import oracle as orc
from . import realize as rz
from . import termrank as tr
from .errors import Infeasible
from .generators import bounded_p, random_digraph, random_setfunc, random_spec


def run_selftest(seed: int = 0, rounds: int = 40) -> dict:
    rng = random.Random(seed)
    counts = {"gale_ryser": 0, "cover_full": 0, "termrank": 0, "pack_sizes": 0}
    failures = []
    for _ in range(rounds):
        s, t = rng.randint(1, 3), rng.randint(1, 3)
        m = rz.DegreeSpec(*random_spec(rng, s, t, 3).to_json().values())
        gr = rz.check_gale_ryser(m) is None
        if gr != orc.oracle_bigraphs(s, t, m=m).exists:
            failures.append({"check": "gale_ryser", "m": m.to_json()})
        counts["gale_ryser"] += 1

        p = random_setfunc(rng, t, cap=s)
        while not bounded_p(p, s):
            p = random_setfunc(rng, t, cap=s)
        ours = rz.check_cover_full(m, p) is None
        if ours != orc.oracle_bigraphs(s, t, orc.covers_table(p.table()), m=m).exists:
            failures.append({"check": "cover_full", "m": m.to_json(), "p": p.to_json()})
        counts["cover_full"] += 1

        ell = rng.randint(0, min(s, t))
        ours = tr.check_termrank(m, ell) is None
        if ours != orc.oracle_bigraphs(s, t, orc.nu_at_least(ell), m=m).exists:
            failures.append({"check": "termrank", "m": m.to_json(), "ell": ell})
        counts["termrank"] += 1

        n = rng.randint(2, 4)
        D = random_digraph(rng, n, rng.randint(1, 6))
        k = rng.randint(1, 2)
        mu = [rng.randint(1, n - 1) for _ in range(k)]
        try:
            packing = br.pack_sizes(D, k, mu)
            ok = br.verify_packing(D, packing) is None
            if not ok:
                failures.append({"check": "packing_verifier", "arcs": D.arcs, "mu": mu})
            found = True
        except Infeasible:
            found = False
        if found != orc.oracle_pack_sizes(D, k, mu).exists:
            failures.append({"check": "pack_sizes", "arcs": D.arcs, "mu": mu})
        counts["pack_sizes"] += 1
    return {"seed": seed, "rounds": rounds, "counts": counts, "failures": failures}
