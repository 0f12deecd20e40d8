"""JSON encodings of instances, witnesses and certificates."""

from __future__ import annotations

import json
import math
import os
from typing import Any

from .errors import InputError
from .graph import Bigraph, Digraph
from .realize import DegreeBounds, DegreeSpec
from .setfunc import BranchingIndeg, Explicit, Forest, SetFunction, TermRank, Zero

_NEG = {"-inf", "−inf", "-infinity"}
_POS = {"+inf", "inf", "infinity", "+infinity"}


def load_json(text_or_path: str) -> Any:
    """Parse inline JSON, or read it from a file if the argument names one."""
    if os.path.exists(text_or_path):
        with open(text_or_path, encoding="utf-8") as fh:
            text = fh.read()
        where = text_or_path
    else:
        text = text_or_path
        where = "inline JSON"
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{where}: {exc.msg} at line {exc.lineno}, column {exc.colno}") from exc


def _num(x, missing):
    if x is None:
        return missing
    if isinstance(x, str):
        s = x.strip().lower()
        if s in _NEG:
            return -math.inf
        if s in _POS:
            return math.inf
        try:
            return int(s)
        except ValueError as exc:
            raise InputError(f"not a number: {x!r}") from exc
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise InputError(f"not a number: {x!r}")
    if isinstance(x, float) and not math.isinf(x):
        if x != int(x):
            raise InputError(f"expected an integer, got {x}")
        return int(x)
    return x


def _int_list(d: dict, key: str) -> list[int]:
    if key not in d:
        raise InputError(f"missing key {key!r}")
    vals = d[key]
    if not isinstance(vals, list):
        raise InputError(f"{key!r} must be a list")
    out = []
    for v in vals:
        if isinstance(v, bool) or not isinstance(v, int):
            raise InputError(f"{key!r} entries must be integers, got {v!r}")
        out.append(v)
    return out


def digraph_from_json(d: dict) -> Digraph:
    try:
        return Digraph(int(d["n"]), tuple(tuple(a) for a in d["arcs"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad digraph: {exc}") from exc


def digraph_to_json(D: Digraph) -> dict:
    return {"n": D.n, "arcs": [list(a) for a in D.arcs]}


def bigraph_from_json(d: dict) -> Bigraph:
    try:
        return Bigraph(int(d["s"]), int(d["t"]), tuple(tuple(e) for e in d["edges"]), bool(d.get("simple", True)))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad bigraph: {exc}") from exc


def bigraph_to_json(G: Bigraph) -> dict:
    return {"s": G.s_size, "t": G.t_size, "edges": [list(e) for e in G.edges], "simple": G.is_simple}


def spec_from_json(d: dict) -> DegreeSpec:
    m_t = _int_list(d, "m_t") if d.get("m_t") is not None else None
    return DegreeSpec(_int_list(d, "m_s"), m_t)


def bounds_from_json(d: dict) -> DegreeBounds:
    def vec(key, missing, size=None):
        if d.get(key) is None:
            if size is None:
                raise InputError(f"missing key {key!r}")
            return [missing] * size
        return [_num(x, missing) for x in d[key]]

    s = len(d.get("f_s") or d.get("g_s") or [])
    t = len(d.get("f_t") or d.get("g_t") or [])
    return DegreeBounds(
        vec("f_s", -math.inf, s),
        vec("g_s", math.inf, s),
        vec("f_t", -math.inf, t),
        vec("g_t", math.inf, t),
        _num(d.get("alpha"), -math.inf),
        _num(d.get("beta"), math.inf),
    )


def setfunc_from_json(d: dict, t_size: int | None = None) -> SetFunction:
    kind = d.get("kind")
    if kind == "explicit":
        t = int(d.get("t", t_size if t_size is not None else -1))
        if t < 0:
            raise InputError("explicit set function needs 't'")
        raw = d.get("values", {})
        values = {}
        for key, v in raw.items():
            try:
                values[int(key)] = int(v)
            except ValueError as exc:
                raise InputError(f"bad set-function entry {key!r}: {v!r}") from exc
        missing = [Y for Y in range(1, 1 << t) if Y not in values]
        if missing:
            raise InputError(f"explicit set function lacks values for masks {missing[:5]}")
        return Explicit.from_dict(t, values)
    if kind == "termrank":
        t = int(d.get("t", t_size if t_size is not None else -1))
        if t < 0:
            raise InputError("termrank set function needs |T| (key 't' or from the instance)")
        return TermRank(t, int(d["ell"]))
    if kind == "forest":
        return Forest([int(x) for x in d["m_for"]])
    if kind == "branching":
        m_in = d.get("m_in")
        return BranchingIndeg(digraph_from_json(d["digraph"]), int(d["k"]), None if m_in is None else list(m_in))
    if kind == "zero":
        t = int(d.get("t", t_size if t_size is not None else -1))
        if t < 0:
            raise InputError("zero set function needs |T| (key 't' or from the instance)")
        return Zero(t)
    if kind is None:
        raise InputError("set function needs a 'kind'")
    raise InputError(f"unknown set-function kind {kind!r}")


def setfunc_to_json(p: SetFunction) -> dict:
    return p.to_json()


def encode(obj: Any) -> Any:
    """Recursively turn library objects into JSON-ready values."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        if math.isinf(obj):
            return "+inf" if obj > 0 else "-inf"
        return obj
    if isinstance(obj, Bigraph):
        return bigraph_to_json(obj)
    if isinstance(obj, Digraph):
        return digraph_to_json(obj)
    if hasattr(obj, "to_json"):
        return encode(obj.to_json())
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalar
        return obj.item()
    raise TypeError(f"cannot encode {type(obj).__name__}")
