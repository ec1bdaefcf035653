"""JSON certificates and their independent verifier.

``verify`` re-derives witnesses, refutations and counterexamples from the
coloring's ``eval`` alone: paths are walked edge by edge, refutations are
re-checked with a fresh BFS, and arrow counterexamples by plain subset
enumeration, without the graph or well-connectedness modules.  A positive
arrow verdict has no finite certificate; it is re-derived with the other
search engine.
"""
from __future__ import annotations

import json
import os
from itertools import combinations
from typing import Optional

from . import __version__
from .colorings import Coloring, Pair, dumps_coloring, format_color, load_coloring, loads_coloring
from .ordinal import Domain, as_ordinal, parse_ordinal

__all__ = [
    "TOOL_VERSION", "wc_certificate", "hc_certificate", "verdict_certificate",
    "dumps_certificate", "write_certificate", "verify", "verify_file", "VerifyResult",
]

TOOL_VERSION = f"arrowlab {__version__}"
AMBIENT_NOTE = ("paths may use any vertex of the declared finite domain; on a finite sample "
                "of an infinite ordinal a refutation is sound but a witness need not lift")


def _domain_json(D: Domain) -> dict:
    if D.kind == "initial":
        return {"kind": "initial", "n": len(D)}
    return {"kind": "explicit", "vertices": [str(x) for x in D.elements]}


def _domain_from_json(obj) -> Domain:
    if obj["kind"] == "initial":
        return Domain.initial(int(obj["n"]))
    return Domain("explicit", [parse_ordinal(v) for v in obj["vertices"]])


def _coloring_json(c: Coloring) -> dict:
    return {"inline": dumps_coloring(c)}


def _strs(xs):
    return [str(x) for x in xs]


def wc_certificate(c: Coloring, cert) -> dict:
    """Certificate for a :class:`~arrowlab.wellconn.WCCertificate`."""
    out = {
        "tool-version": TOOL_VERSION,
        "color": format_color(cert.color),
        "witness": _strs(cert.witness),
        "domain": _domain_json(cert.domain),
        "coloring": _coloring_json(c),
        "semantics": AMBIENT_NOTE,
    }
    if cert.accepted:
        out["kind"] = "wc-witness"
        out["paths"] = [_strs(p.vertices) for p in cert.paths]
    else:
        out["kind"] = "wc-refutation"
        out["failing_pair"] = _strs(cert.failing_pair)
        out["reachable"] = _strs(cert.reachable)
        out["paths"] = []
    return out


def hc_certificate(c: Coloring, color, X, D: Optional[Domain] = None) -> dict:
    """Check that all pairs of ``X`` carry ``color`` and record the outcome."""
    D = D or c.domain
    xs = sorted({as_ordinal(x) for x in X})
    out = {
        "tool-version": TOOL_VERSION,
        "color": format_color(color),
        "witness": _strs(xs),
        "domain": _domain_json(D),
        "coloring": _coloring_json(c),
    }
    for a, b in combinations(xs, 2):
        if c.eval(a, b) != color:
            out["kind"] = "hc-refutation"
            out["failing_pair"] = _strs((a, b))
            return out
    out["kind"] = "hc-witness"
    return out


def verdict_certificate(v) -> dict:
    q = v.query
    return {
        "kind": "arrow-verdict",
        "tool-version": TOOL_VERSION,
        "query": {"kind": q.kind, "n": q.n, "m": q.m, "colors": q.colors, "engine": q.engine},
        "holds": v.holds,
        "counterexample": _coloring_json(v.counterexample) if v.counterexample is not None else None,
        "stats": {k: v.stats[k] for k in sorted(v.stats)},
        "witness_stats": v.witness_stats,
    }


def dumps_certificate(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_certificate(obj: dict, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_certificate(obj))


# --- verification ------------------------------------------------------------

class VerifyResult:
    def __init__(self, ok: bool, message: str):
        self.ok = ok
        self.message = message

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return f"VerifyResult({self.ok}, {self.message!r})"


def _color_from_json(x):
    return Pair(*x) if isinstance(x, list) else x


def _load_ref(ref, base_dir) -> Coloring:
    if "inline" in ref:
        return loads_coloring(ref["inline"])
    path = ref["file"]
    if base_dir and not os.path.isabs(path) and os.path.exists(os.path.join(base_dir, path)):
        path = os.path.join(base_dir, path)
    return load_coloring(path)


def _suffix_reach(c: Coloring, D: Domain, color, start):
    seen = {start}
    todo = [start]
    while todo:
        v = todo.pop()
        for u in D.elements:
            if u >= start and u not in seen and u != v and c.eval(u, v) == color:
                seen.add(u)
                todo.append(u)
    return seen


def _verify_wc(cert, c: Coloring) -> VerifyResult:
    D = _domain_from_json(cert["domain"])
    if not D.issubset(c.domain):
        return VerifyResult(False, "domain is not a subset of the coloring domain")
    color = _color_from_json(cert["color"])
    X = [parse_ordinal(s) for s in cert["witness"]]
    if not X or X != sorted(set(X)) or any(x not in D for x in X):
        return VerifyResult(False, "witness must be a nonempty sorted subset of the domain")
    if cert["kind"] == "wc-refutation":
        a, b = (parse_ordinal(s) for s in cert["failing_pair"])
        if not (a < b and a in X and b in X):
            return VerifyResult(False, "failing pair is not an increasing pair of the witness set")
        reach = _suffix_reach(c, D, color, a)
        if b in reach:
            return VerifyResult(False, f"{b} is reachable from {a}; refutation is false")
        if sorted(reach) != [parse_ordinal(s) for s in cert["reachable"]]:
            return VerifyResult(False, "recorded reachable set does not match")
        return VerifyResult(True, f"refutation verified: no color-{cert['color']} path {a}..{b} above {a}")
    pairs = list(combinations(X, 2))
    paths = cert["paths"]
    if len(paths) != len(pairs):
        return VerifyResult(False, f"expected {len(pairs)} paths, got {len(paths)}")
    for (a, b), p in zip(pairs, paths):
        p = [parse_ordinal(s) for s in p]
        if len(p) < 2 or p[0] != a or p[-1] != b:
            return VerifyResult(False, f"path for ({a},{b}) has wrong endpoints")
        if len(set(p)) != len(p):
            return VerifyResult(False, f"path for ({a},{b}) repeats a vertex")
        for x in p:
            if x not in D or x < a:
                return VerifyResult(False, f"path for ({a},{b}) leaves the domain above {a} at {x}")
        for x, y in zip(p, p[1:]):
            if c.eval(x, y) != color:
                return VerifyResult(False, f"edge ({x},{y}) does not have color {cert['color']}")
    return VerifyResult(True, f"witness verified: {len(X)} vertices, {len(pairs)} paths")


def _verify_hc(cert, c: Coloring) -> VerifyResult:
    color = _color_from_json(cert["color"])
    X = [parse_ordinal(s) for s in cert["witness"]]
    if cert["kind"] == "hc-refutation":
        a, b = (parse_ordinal(s) for s in cert["failing_pair"])
        if a in X and b in X and a != b and c.eval(a, b) != color:
            return VerifyResult(True, f"refutation verified: ({a},{b}) not colored {cert['color']}")
        return VerifyResult(False, "failing pair does not refute")
    bad = [(a, b) for a, b in combinations(X, 2) if c.eval(a, b) != color]
    if bad:
        return VerifyResult(False, f"pair {bad[0]} not colored {cert['color']}")
    return VerifyResult(True, f"witness verified: complete on {len(X)} vertices")


def _has_witness(c: Coloring, m: int, kind: str) -> bool:
    els = c.domain.elements
    if m > len(els):
        return False
    colors = range(c.arity)
    reach = {}
    if kind == "wc":
        for col in colors:
            for a in els:
                reach[col, a] = _suffix_reach(c, c.domain, col, a)
    for S in combinations(els, m):
        for col in colors:
            if kind == "wc":
                ok = all(b in reach[col, a] for a, b in combinations(S, 2))
            else:
                ok = all(c.eval(a, b) == col for a, b in combinations(S, 2))
            if ok:
                return True
    return False


def _verify_verdict(cert, base_dir) -> VerifyResult:
    q = cert["query"]
    if not cert["holds"]:
        if cert.get("counterexample") is None:
            return VerifyResult(False, "failing verdict without counterexample")
        c = _load_ref(cert["counterexample"], base_dir)
        if len(c.domain) != q["n"] or c.arity != q["colors"]:
            return VerifyResult(False, "counterexample does not match the query size")
        if _has_witness(c, q["m"], q["kind"]):
            return VerifyResult(False, "counterexample has a size-m witness")
        return VerifyResult(True, "counterexample verified by subset enumeration")
    from .arrows import ArrowQuery, decide_arrow, canonical_count, EXHAUSTIVE_LIMIT
    other = "backtrack" if q["engine"] == "exhaustive" else "exhaustive"
    if other == "exhaustive" and canonical_count(q["n"], q["colors"]) > EXHAUSTIVE_LIMIT:
        other = q["engine"]
    v = decide_arrow(ArrowQuery(q["kind"], q["n"], q["m"], q["colors"], engine=other))
    if not v.holds:
        return VerifyResult(False, f"{other} engine found a counterexample")
    return VerifyResult(True, f"positive verdict re-derived with the {other} engine")


def _verify_scan(cert, base_dir) -> VerifyResult:
    vs = cert["verdicts"]
    if not vs or any(v["holds"] for v in vs[:-1]):
        return VerifyResult(False, "a scan stops at its first positive verdict")
    for v in vs:
        res = _verify_verdict(v, base_dir)
        if not res:
            return VerifyResult(False, f"n={v['query']['n']}: {res.message}")
    return VerifyResult(True, f"{len(vs)} verdicts verified")


def verify(cert: dict, base_dir: Optional[str] = None) -> VerifyResult:
    kind = cert.get("kind")
    try:
        if kind in ("wc-witness", "wc-refutation"):
            return _verify_wc(cert, _load_ref(cert["coloring"], base_dir))
        if kind in ("hc-witness", "hc-refutation"):
            return _verify_hc(cert, _load_ref(cert["coloring"], base_dir))
        if kind == "arrow-verdict":
            return _verify_verdict(cert, base_dir)
        if kind == "arrow-scan":
            return _verify_scan(cert, base_dir)
    except (KeyError, TypeError, ValueError) as exc:
        return VerifyResult(False, f"malformed certificate: {exc}")
    return VerifyResult(False, f"unknown certificate kind {kind!r}")


def verify_file(path) -> VerifyResult:
    with open(path, encoding="utf-8") as fh:
        cert = json.load(fh)
    return verify(cert, os.path.dirname(os.path.abspath(path)))
