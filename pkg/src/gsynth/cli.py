"""Command-line front end.

Every invocation prints one JSON document and exits with

    0  feasible (witness constructed or condition holds)
    1  usage or input error
    2  infeasible (certificate emitted)
    3  internal defect (a verification failed)
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from types import SimpleNamespace
from typing import Any

from . import branchings as br
from . import forests as fo
from . import oracle as orc
from . import realize as rz
from . import termrank as tr
from .errors import CapacityError, DefectError, Infeasible, InputError, PreconditionError, SynthError
from .jsonio import (
    bigraph_from_json,
    bounds_from_json,
    digraph_from_json,
    encode,
    load_json,
    setfunc_from_json,
    spec_from_json,
)
from .setfunc import Zero

EXIT_OK, EXIT_INPUT, EXIT_INFEASIBLE, EXIT_DEFECT = 0, 1, 2, 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _vec(text: str | None):
    if text is None:
        return None
    text = text.strip()
    if text.startswith("["):
        return load_json(text)
    if not text:
        return []
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        try:
            out.append(int(tok))
        except ValueError:
            low = tok.lower()
            if low in ("inf", "+inf"):
                out.append(float("inf"))
            elif low in ("-inf", "−inf"):
                out.append(float("-inf"))
            else:
                raise InputError(f"bad list entry {tok!r}")
    return out


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", help="instance document: file path or inline JSON")
    p.add_argument("--output", help="write the result document to this file")
    p.add_argument("--certificate", action=argparse.BooleanOptionalAction, default=True,
                   help="include the most violated inequality on infeasible answers (default on)")
    p.add_argument("--format", choices=("json", "matrix"), default="json")
    p.add_argument("--budget", type=int, default=200_000, help="search budget for constructions")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gsynth", description="Certified synthesis of bigraphs, branchings and forests.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name in ("check", "realize", "oracle"):
        p = sub.add_parser(name)
        p.add_argument("problem", choices=(
            "gale-ryser", "cover-s", "cover-full", "bounds", "bounds-edges",
            "termrank", "edmonds", "pack-sizes", "t2-forest", "forest", "wooded",
        ))
        p.add_argument("--spec", help="degree spec {m_s, m_t}")
        p.add_argument("--bounds", help="degree bounds {f_s, g_s, f_t, g_t, alpha, beta}")
        p.add_argument("--p", dest="p", help="set function on T")
        p.add_argument("--ell", type=int)
        p.add_argument("--graph", help="bigraph {s, t, edges}")
        p.add_argument("--digraph", help="digraph {n, arcs}")
        p.add_argument("--k", type=int)
        p.add_argument("--mu")
        p.add_argument("--roots", help="root sets as a JSON list of node lists")
        p.add_argument("--m-for")
        p.add_argument("--m-s")
        p.add_argument("--no-fast-paths", action="store_true")
        p.add_argument("--exhaustive", action="store_true", help="accepted for symmetry; oracle is always exhaustive")
        _add_common(p)

    p = sub.add_parser("termrank")
    p.add_argument("--spec")
    p.add_argument("--bounds")
    p.add_argument("--ell", type=int)
    _add_common(p)

    p = sub.add_parser("branchings")
    p.add_argument("--mode", choices=("edmonds", "sizes", "sizes-indeg", "bounds"), default="sizes")
    p.add_argument("--preset", choices=("root-counts", "equal-sizes"))
    p.add_argument("--digraph")
    p.add_argument("--k", type=int)
    p.add_argument("--mu")
    p.add_argument("--m-in")
    p.add_argument("--roots")
    p.add_argument("--phi")
    p.add_argument("--gamma")
    p.add_argument("--f-in")
    p.add_argument("--g-in")
    p.add_argument("--alpha", default=None)
    p.add_argument("--beta", default=None)
    p.add_argument("--f", help="root-counts preset: least number of arborescences rooted at each node")
    p.add_argument("--g", help="root-counts preset: most number of arborescences rooted at each node")
    _add_common(p)

    p = sub.add_parser("forest")
    p.add_argument("--graph")
    p.add_argument("--spec")
    p.add_argument("--m-for")
    _add_common(p)

    p = sub.add_parser("wooded")
    p.add_argument("--m-s")
    p.add_argument("--ell", type=int)
    _add_common(p)

    p = sub.add_parser("selftest")
    p.add_argument("--rounds", type=int, default=40)
    _add_common(p)
    return parser


# ---------------------------------------------------------------------------
# argument access: flags override keys of the --input document


class _Args:
    def __init__(self, ns: argparse.Namespace):
        self.ns = ns
        self.doc = load_json(ns.input) if getattr(ns, "input", None) else {}
        if not isinstance(self.doc, dict):
            raise InputError("--input must hold a JSON object")

    def raw(self, name: str):
        val = getattr(self.ns, name.replace("-", "_"), None)
        if val is not None:
            return val
        for key in (name, name.replace("-", "_")):
            if key in self.doc:
                return self.doc[key]
        return None

    def json(self, name: str, required: bool = True):
        val = self.raw(name)
        if val is None:
            if required:
                raise InputError(f"missing --{name}")
            return None
        return load_json(val) if isinstance(val, str) else val

    def vec(self, name: str, required: bool = True):
        val = self.raw(name)
        if val is None:
            if required:
                raise InputError(f"missing --{name}")
            return None
        return _vec(val) if isinstance(val, str) else list(val)

    def int(self, name: str, required: bool = True):
        val = self.raw(name)
        if val is None:
            if required:
                raise InputError(f"missing --{name}")
            return None
        try:
            return int(val)
        except (TypeError, ValueError) as exc:
            raise InputError(f"--{name} must be an integer") from exc

    def spec(self):
        return spec_from_json(self.json("spec"))

    def bounds(self):
        return bounds_from_json(self.json("bounds"))

    def setfunc(self, t_size: int, required: bool = False):
        d = self.json("p", required)
        if d is None:
            return None
        return setfunc_from_json(d, t_size)

    def digraph(self):
        return digraph_from_json(self.json("digraph"))

    def graph(self):
        return bigraph_from_json(self.json("graph"))


def _t_of(spec) -> int:
    return len(spec.m_t) if spec.m_t is not None else 0


# ---------------------------------------------------------------------------
# commands


def _feasible(witness) -> dict:
    return {"status": "feasible", "witness": witness}


def _graph_witness(G, fmt: str) -> Any:
    if fmt == "matrix":
        return tr.matrix_report(G)
    return G


def _cmd_check(a: _Args) -> dict:
    prob = a.ns.problem
    fast = not a.ns.no_fast_paths
    if prob == "gale-ryser":
        cert = rz.check_gale_ryser(a.spec())
    elif prob == "cover-s":
        m = a.spec()
        p = a.setfunc(None, True)
        cert = rz.check_cover_S(m.m_s, p)
    elif prob == "cover-full":
        m = a.spec()
        cert = rz.check_cover_full(m, a.setfunc(_t_of(m)), fast)
    elif prob == "bounds":
        b = a.bounds()
        cert = rz.check_bounds(b, a.setfunc(b.t_size), fast)
    elif prob == "bounds-edges":
        b = a.bounds()
        p = a.setfunc(b.t_size)
        cert = rz.check_bounds(b, p, fast) or rz.check_bounds_edges(b, p, fast)
    elif prob == "termrank":
        ell = a.int("ell")
        cert = tr.check_termrank(a.spec(), ell) if a.raw("spec") is not None else tr.check_termrank_bounds(a.bounds(), ell)
    elif prob == "edmonds":
        D = a.digraph()
        roots = [sum(1 << v for v in R) for R in a.json("roots")]
        cert = br.check_edmonds(D, roots)
    elif prob == "pack-sizes":
        D = a.digraph()
        mu = a.vec("mu")
        cert = br.check_pack_sizes(D, a.int("k", False) or len(mu), mu)
    elif prob in ("t2-forest", "forest"):
        if a.raw("graph") is not None:
            cert = fo.check_t2_forest(a.graph(), a.vec("m-for", False))
        else:
            m = a.spec()
            cert = fo.check_forest_condition(m, a.vec("m-for", False))
    elif prob == "wooded":
        cert = fo.check_wooded_uniform(a.vec("m-s"), a.int("ell"))
    else:  # pragma: no cover - argparse restricts choices
        raise InputError(prob)
    if cert is not None:
        raise Infeasible(cert)
    return _feasible({"condition_holds": True})


def _cmd_realize(a: _Args) -> dict:
    prob = a.ns.problem
    fmt = a.ns.format
    if prob == "gale-ryser":
        return _feasible(_graph_witness(rz.construct_gale_ryser(a.spec()), fmt))
    if prob == "cover-s":
        m = a.spec()
        return _feasible(_graph_witness(rz.construct_cover_S(m.m_s, a.setfunc(None, True), a.ns.budget), fmt))
    if prob == "cover-full":
        m = a.spec()
        return _feasible(_graph_witness(rz.construct_cover_full(m, a.setfunc(_t_of(m)), a.ns.budget), fmt))
    if prob in ("bounds", "bounds-edges"):
        b = a.bounds()
        G, info = rz.construct_bounds(b, a.setfunc(b.t_size), return_info=True)
        out = _feasible(_graph_witness(G, fmt))
        out["stats"] = {"degrees": info["m"], "fallback": info["fallback"]}
        return out
    if prob == "termrank":
        return _cmd_termrank(a)
    if prob == "edmonds":
        D = a.digraph()
        roots = [sum(1 << v for v in R) for R in a.json("roots")]
        return _feasible(br.pack_edmonds(D, roots, a.ns.budget))
    if prob == "pack-sizes":
        D = a.digraph()
        mu = a.vec("mu")
        return _feasible(br.pack_sizes(D, a.int("k", False) or len(mu), mu))
    if prob in ("t2-forest", "forest"):
        return _cmd_forest(a)
    if prob == "wooded":
        return _cmd_wooded(a)
    raise InputError(prob)  # pragma: no cover


def _cmd_termrank(a: _Args) -> dict:
    ell = a.int("ell")
    if a.raw("spec") is not None:
        G, info = tr.construct_termrank(a.spec(), ell, return_info=True)
    else:
        G, info = tr.construct_termrank(a.bounds(), ell, return_info=True)
    out = _feasible(_graph_witness(G, a.ns.format))
    out["stats"] = {"term_rank": tr.max_matching(G)[1], "degrees": info["m"], "fallback": info["fallback"]}
    return out


def _cmd_branchings(a: _Args) -> dict:
    D = a.digraph()
    mode = a.raw("mode") or "sizes"
    preset = a.raw("preset")
    k = a.int("k", False)
    if preset == "root-counts":
        f, g = a.vec("f"), a.vec("g")
        packing = br.arborescences_with_root_counts(D, k, f, g)
    elif preset == "equal-sizes":
        mu = a.vec("mu")
        packing = br.equal_size_branchings(D, k, mu[0] if isinstance(mu, list) else mu)
    elif mode == "edmonds":
        roots = [sum(1 << v for v in R) for R in a.json("roots")]
        packing = br.pack_edmonds(D, roots, a.ns.budget)
    elif mode == "sizes":
        mu = a.vec("mu")
        packing = br.pack_sizes(D, k or len(mu), mu)
    elif mode == "sizes-indeg":
        mu = a.vec("mu")
        packing = br.pack_sizes_indeg(D, k or len(mu), mu, a.vec("m-in"))
    else:
        phi, gamma = a.vec("phi"), a.vec("gamma")
        k = k or len(phi)

        def scalar(name, default):
            v = a.raw(name)
            if v is None:
                return default
            return _vec(str(v))[0]

        req = br.Bounds(tuple(phi), tuple(gamma), _tuple(a.vec("f-in", False)), _tuple(a.vec("g-in", False)),
                        scalar("alpha", 0), scalar("beta", float("inf")))
        packing = br.pack_bounds(D, k, req)
    out = _feasible(packing)
    out["stats"] = {"sizes": [B.size for B in packing], "indegrees": br.packing_indegrees(D, packing)}
    return out


def _tuple(v):
    return None if v is None else tuple(v)


def _cmd_forest(a: _Args) -> dict:
    m_for = a.vec("m-for", False)
    if a.raw("graph") is not None:
        G = a.graph()
        F = fo.extract_forest(G, m_for)
        return _feasible({"forest": F, "parents": fo.forest_parents(F, G.s_size, G.t_size)})
    res = fo.realize_with_forest(a.spec(), m_for)
    G = res.graph
    out = _feasible({
        "graph": _graph_witness(G, a.ns.format),
        "forest": res.forest,
        "parents": fo.forest_parents(res.forest, G.s_size, G.t_size),
    })
    out["stats"] = {"flags": res.flags}
    return out


def _cmd_wooded(a: _Args) -> dict:
    return _feasible(fo.realize_wooded_uniform(a.vec("m-s"), a.int("ell")))


def _cmd_oracle(a: _Args) -> dict:
    prob = a.ns.problem
    if prob in ("gale-ryser", "cover-full", "termrank", "forest", "t2-forest") and a.raw("spec") is not None:
        m = a.spec()
        s, t = len(m.m_s), len(m.m_t)
        if prob == "cover-full":
            p = a.setfunc(t) or Zero(t)
            pred = orc.covers_table(p.table())
        elif prob == "termrank":
            pred = orc.nu_at_least(a.int("ell"))
        elif prob in ("forest", "t2-forest"):
            pred = orc.forest_pred(a.vec("m-for", False))
        else:
            pred = None
        res = orc.oracle_bigraphs(s, t, pred, m=m)
    elif prob == "cover-s":
        m = a.spec()
        p = a.setfunc(None, True)
        box = SimpleNamespace(f_s=m.m_s, g_s=m.m_s, f_t=[None] * p.t_size, g_t=[None] * p.t_size,
                              alpha=None, beta=None)
        res = orc.oracle_bigraphs(len(m.m_s), p.t_size, orc.covers_table(p.table()), bounds=box)
    elif prob in ("bounds", "bounds-edges"):
        b = a.bounds()
        if prob == "bounds":
            b = rz.DegreeBounds(b.f_s, b.g_s, b.f_t, b.g_t)
        p = a.setfunc(b.t_size)
        pred = orc.covers_table(p.table()) if p is not None else None
        res = orc.oracle_bigraphs(b.s_size, b.t_size, pred, bounds=b)
    elif prob == "termrank":
        b = a.bounds()
        res = orc.oracle_bigraphs(b.s_size, b.t_size, orc.nu_at_least(a.int("ell")), bounds=b)
    elif prob == "pack-sizes":
        mu = a.vec("mu")
        res = orc.oracle_pack_sizes(a.digraph(), a.int("k", False) or len(mu), mu)
    elif prob == "edmonds":
        roots = [sum(1 << v for v in R) for R in a.json("roots")]
        res = orc.OracleResult(orc.oracle_edmonds(a.digraph(), roots))
    elif prob in ("t2-forest", "forest"):
        G = a.graph()
        res = orc.OracleResult(orc.has_forest(G, a.vec("m-for", False)))
    elif prob == "wooded":
        res = orc.oracle_wooded_uniform(a.vec("m-s"), a.int("ell"))
    else:
        raise InputError(f"no oracle for {prob}")
    if not res.exists:
        raise Infeasible({"condition": "exhausted", "detail": "no witness in the full search"})
    return _feasible(res.witness if res.witness is not None else {"exists": True})


def _cmd_selftest(a: _Args) -> dict:
    from .selftest import run_selftest

    report = run_selftest(seed=a.ns.seed, rounds=a.ns.rounds)
    if report["failures"]:
        raise DefectError(json.dumps(report["failures"][:5]))
    return _feasible(report)


_COMMANDS = {
    "check": _cmd_check,
    "realize": _cmd_realize,
    "termrank": _cmd_termrank,
    "branchings": _cmd_branchings,
    "forest": _cmd_forest,
    "wooded": _cmd_wooded,
    "oracle": _cmd_oracle,
    "selftest": _cmd_selftest,
}


def run(argv: list[str] | None = None) -> tuple[int, dict]:
    """Execute one command; returns (exit code, output document)."""
    start = time.perf_counter()
    ns = None
    try:
        ns = build_parser().parse_args(argv)
        random.seed(ns.seed)
        args = _Args(ns)
        doc = _COMMANDS[ns.command](args)
        code = EXIT_OK
    except _UsageError as exc:
        doc, code = {"status": "error", "error": {"type": "usage", "message": str(exc)}}, EXIT_INPUT
    except Infeasible as exc:
        doc = {"status": "infeasible"}
        if ns is None or ns.certificate:
            doc["certificate"] = exc.certificate
        else:
            cert = exc.certificate
            cond = cert.get("condition") if isinstance(cert, dict) else getattr(cert, "condition", None)
            doc["certificate"] = {"condition": cond or "infeasible"}
        code = EXIT_INFEASIBLE
    except DefectError as exc:
        doc, code = {"status": "error", "error": {"type": "defect", "message": str(exc)}}, EXIT_DEFECT
    except (InputError, PreconditionError, CapacityError) as exc:
        doc = {"status": "error", "error": {"type": type(exc).__name__, "message": str(exc)}}
        code = EXIT_INPUT
    except SynthError as exc:  # pragma: no cover - every subclass handled above
        doc, code = {"status": "error", "error": {"type": type(exc).__name__, "message": str(exc)}}, EXIT_DEFECT
    doc = {"command": None if ns is None else ns.command, **doc}
    doc.setdefault("stats", {})
    doc["stats"]["seconds"] = round(time.perf_counter() - start, 6)
    return code, encode(doc)


def main(argv: list[str] | None = None) -> int:
    code, doc = run(argv)
    text = json.dumps(doc, indent=2, sort_keys=False)
    out_path = None
    try:
        ns = build_parser().parse_args(argv)
        out_path = ns.output
    except _UsageError:
        pass
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
