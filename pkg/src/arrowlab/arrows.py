"""Finite partition arrows ``n ->_* (m)^2_colors`` for * in classical, hc, wc.

Two engines walk the colorings of the pairs of ``{0..n-1}`` with edges in
column order ``(0,1), (0,2), (1,2), (0,3), ...`` and colors canonicalized (a
new color may only be the least unused one):

* ``exhaustive`` visits every canonical coloring and tests it at the leaf;
* ``backtrack`` tests after each edge and cuts any branch that already has a
  witness, since witnesses of every kind survive the addition of edges.

A counterexample is a coloring with no size-m witness; it is always
re-checked by :func:`verify_counterexample`, which shares no code with the
engines.
"""
from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .colorings import DenseColoring
from .graphs import color_graph, max_clique
from .ordinal import Domain
from .wellconn import max_wc

__all__ = [
    "KINDS", "ENGINES", "ArrowQuery", "ArrowVerdict", "ResourceGuardError",
    "decide_arrow", "ramsey_number", "wc_pigeonhole_bound", "verify_counterexample",
    "canonical_count", "arrow_str",
]

KINDS = ("classical", "hc", "wc")
ENGINES = ("exhaustive", "backtrack")
EXHAUSTIVE_LIMIT = 2 ** 26
BACKTRACK_MAX_N = 16


class ResourceGuardError(RuntimeError):
    pass


@dataclass(frozen=True)
class ArrowQuery:
    kind: str
    n: int
    m: int
    colors: int
    engine: str = "backtrack"
    deterministic: bool = True
    threads: int = 1
    node_budget: Optional[int] = None
    time_budget: Optional[float] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.engine not in ENGINES:
            raise ValueError(f"unknown engine {self.engine!r}")
        if self.n < 1 or self.m < 1 or self.colors < 1:
            raise ValueError("n, m and colors must be positive")


@dataclass
class ArrowVerdict:
    query: ArrowQuery
    holds: bool
    counterexample: Optional[DenseColoring] = None
    witness_stats: dict = field(default_factory=dict)
    stats: dict = field(default_factory=dict)
    wall_time: float = 0.0

    def __bool__(self):
        return self.holds


def arrow_str(kind, n, m, colors) -> str:
    return f"{kind} {n}->({m})^2_{colors}"


def _stirling2(n, k):
    row = [1] + [0] * k
    for i in range(1, n + 1):
        new = [0] * (k + 1)
        for j in range(1, min(i, k) + 1):
            new[j] = j * row[j] + row[j - 1]
        row = new
    return row[k]


def canonical_count(n: int, colors: int) -> int:
    """Number of colorings of the pairs of n points up to renaming colors."""
    e = n * (n - 1) // 2
    if e == 0:
        return 1
    return sum(_stirling2(e, k) for k in range(1, min(colors, e) + 1))


# --- witness tests on raw bitset adjacency -------------------------------------

def _has_clique(adj, cand: int, k: int) -> bool:
    if k <= 0:
        return True
    if bin(cand).count("1") < k:
        return False
    while cand:
        low = cand & -cand
        v = low.bit_length() - 1
        cand ^= low
        if _has_clique(adj, cand & adj[v], k - 1):
            return True
    return False


def _max_clique_size(adj, cand: int, size: int = 0) -> int:
    best = size
    while cand:
        if size + bin(cand).count("1") <= best:
            break
        low = cand & -cand
        v = low.bit_length() - 1
        cand ^= low
        best = max(best, _max_clique_size(adj, cand & adj[v], size + 1))
    return best


def _complete_on(adj, S: int) -> bool:
    # a finite graph is highly connected iff it is complete
    T = S
    while T:
        low = T & -T
        v = low.bit_length() - 1
        T ^= low
        if (adj[v] | low) & S != S:
            return False
    return True


def _hc_witness(adj, active: int, m: int, must: int = 0) -> bool:
    others = [v for v in range(active.bit_length()) if active >> v & 1 and not must >> v & 1]
    k = m - bin(must).count("1")
    if k < 0:
        return False
    for combo in combinations(others, k):
        S = must
        for v in combo:
            S |= 1 << v
        if _complete_on(adj, S):
            return True
    return False


def _chain_counts(adj, nv: int) -> list:
    # cnt[b] = |{a < b : b reachable from a inside [a, nv)}| + 1
    cnt = [1] * nv
    full = (1 << nv) - 1
    for a in range(nv):
        allowed = full >> a << a
        seen = frontier = 1 << a
        while frontier:
            nxt = 0
            while frontier:
                low = frontier & -frontier
                nxt |= adj[low.bit_length() - 1]
                frontier ^= low
            frontier = nxt & allowed & ~seen
            seen |= frontier
        s = seen >> (a + 1)
        b = a + 1
        while s:
            if s & 1:
                cnt[b] += 1
            s >>= 1
            b += 1
    return cnt


class _Search:
    def __init__(self, q: ArrowQuery):
        self.q = q
        self.n = q.n
        self.edges = [(a, b) for b in range(1, q.n) for a in range(b)]
        self.adj = [[0] * q.n for _ in range(q.colors)]
        self.assign = []
        self.nodes = 0
        self.prunes = 0
        self.leaves = 0
        self.min_max = None
        self.deadline = time.monotonic() + q.time_budget if q.time_budget else None

    # witness present in `col` after adding edge (a, b), b the top active vertex
    def _edge_witness(self, col, a, b) -> bool:
        q, adj = self.q, self.adj[col]
        if q.kind == "classical":
            return _has_clique(adj, adj[a] & adj[b], q.m - 2)
        if q.kind == "hc":
            return _hc_witness(adj, (1 << (b + 1)) - 1, q.m, (1 << a) | (1 << b))
        return max(_chain_counts(adj, b + 1)) >= q.m

    def _leaf_max(self) -> int:
        q = self.q
        if q.kind == "classical":
            return max(_max_clique_size(adj, (1 << q.n) - 1) for adj in self.adj)
        return max(max(_chain_counts(adj, q.n)) for adj in self.adj)

    def _leaf_has_witness(self) -> bool:
        q = self.q
        if q.kind == "hc":
            return any(_hc_witness(adj, (1 << q.n) - 1, q.m) for adj in self.adj)
        mx = self._leaf_max()
        self.min_max = mx if self.min_max is None else min(self.min_max, mx)
        return mx >= q.m

    def _tick(self):
        self.nodes += 1
        q = self.q
        if q.node_budget is not None and self.nodes > q.node_budget:
            raise ResourceGuardError(f"node budget {q.node_budget} exhausted")
        if self.deadline is not None and self.nodes % 1024 == 0 and time.monotonic() > self.deadline:
            raise ResourceGuardError(f"time budget {q.time_budget}s exhausted")

    def _set(self, e, col, on):
        a, b = self.edges[e]
        adj = self.adj[col]
        if on:
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        else:
            adj[a] &= ~(1 << b)
            adj[b] &= ~(1 << a)

    def _push(self, e, col) -> bool:
        """Assign ``col`` to edge ``e``; False if the branch is cut."""
        self._tick()
        self._set(e, col, True)
        self.assign.append(col)
        if self.q.engine == "backtrack":
            a, b = self.edges[e]
            if self._edge_witness(col, a, b):
                self.prunes += 1
                self._pop(e)
                return False
        return True

    def _pop(self, e):
        col = self.assign.pop()
        self._set(e, col, False)

    def run(self, prefix=()) -> Optional[list]:
        """Search below ``prefix``; return the first counterexample's edge colors."""
        used = -1
        for e, col in enumerate(prefix):
            if not self._push(e, col):
                return None
            used = max(used, col)
        return self._dfs(len(prefix), used)

    def _dfs(self, e, used):
        if e == len(self.edges):
            self.leaves += 1
            if self.q.engine == "exhaustive" and self._leaf_has_witness():
                return None
            return list(self.assign)
        top = min(self.q.colors - 1, used + 1)
        for col in range(top + 1):
            if not self._push(e, col):
                continue
            found = self._dfs(e + 1, max(used, col))
            self._pop(e)
            if found is not None:
                return found
        return None


def _coloring_from_assignment(n, colors, assign) -> DenseColoring:
    rows = []
    k = 0
    for b in range(1, n):
        rows.append(assign[k:k + b])
        k += b
    return DenseColoring(Domain.initial(n), colors, rows)


def _prefixes(q: ArrowQuery, depth: int):
    out = [((), -1)]
    for _ in range(depth):
        nxt = []
        for p, used in out:
            for col in range(min(q.colors - 1, used + 1) + 1):
                nxt.append((p + (col,), max(used, col)))
        out = nxt
    return [p for p, _ in out]


def _run_subtree(args):
    q, prefix = args
    s = _Search(q)
    found = s.run(prefix)
    return found, s.nodes, s.prunes, s.leaves, s.min_max


def _check_guard(q: ArrowQuery):
    if q.engine == "exhaustive":
        cnt = canonical_count(q.n, q.colors)
        if cnt > EXHAUSTIVE_LIMIT:
            raise ResourceGuardError(
                f"exhaustive search over {cnt} canonical colorings exceeds 2^26")
    elif q.n > BACKTRACK_MAX_N:
        raise ResourceGuardError(f"backtrack engine limited to n <= {BACKTRACK_MAX_N}")


def decide_arrow(q: ArrowQuery) -> ArrowVerdict:
    """Decide whether every coloring of the pairs of n points by ``colors``
    colors has a monochromatic size-m witness of the query's kind."""
    t0 = time.perf_counter()
    if q.m == 1:
        return ArrowVerdict(q, True, stats={"nodes": 0, "prunes": 0, "leaves": 0},
                            witness_stats={"trivial": "m=1"}, wall_time=time.perf_counter() - t0)
    if q.m > q.n:
        c = _coloring_from_assignment(q.n, q.colors, [0] * (q.n * (q.n - 1) // 2))
        if not verify_counterexample(c, q.m, q.kind):
            raise AssertionError("degenerate counterexample failed verification")
        return ArrowVerdict(q, False, c, stats={"nodes": 0, "prunes": 0, "leaves": 0},
                            witness_stats={"trivial": "m>n"}, wall_time=time.perf_counter() - t0)
    _check_guard(q)

    threads = 1 if q.deterministic else max(1, q.threads)
    found = None
    nodes = prunes = leaves = 0
    min_max = None
    if threads == 1:
        s = _Search(q)
        found = s.run()
        nodes, prunes, leaves, min_max = s.nodes, s.prunes, s.leaves, s.min_max
    else:
        depth = 0
        e = q.n * (q.n - 1) // 2
        while depth < e and len(_prefixes(q, depth)) < 4 * threads:
            depth += 1
        tasks = [(q, p) for p in _prefixes(q, depth)]
        with ProcessPoolExecutor(max_workers=threads) as ex:
            for res in ex.map(_run_subtree, tasks):
                f, nd, pr, lv, mm = res
                nodes += nd
                prunes += pr
                leaves += lv
                if mm is not None:
                    min_max = mm if min_max is None else min(min_max, mm)
                if f is not None and found is None:
                    found = f

    stats = {"nodes": nodes, "prunes": prunes, "leaves": leaves}
    wstats = {}
    if q.engine == "exhaustive":
        wstats["canonical_colorings"] = canonical_count(q.n, q.colors)
        if found is None:
            wstats["visited"] = leaves
            if min_max is not None:
                wstats["min_max_witness"] = min_max
    wall = time.perf_counter() - t0
    if found is None:
        return ArrowVerdict(q, True, None, wstats, stats, wall)
    c = _coloring_from_assignment(q.n, q.colors, found)
    if not verify_counterexample(c, q.m, q.kind):
        raise AssertionError("search produced a counterexample that failed verification")
    return ArrowVerdict(q, False, c, wstats, stats, wall)


def verify_counterexample(c, m: int, kind: str) -> bool:
    """True iff no color of ``c`` has a size-``m`` witness of ``kind``.

    Uses the graph and well-connectedness modules (maximum clique, longest
    tree branch), never the search engines.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    if kind == "wc":
        return all(r.size < m for r in max_wc(c).values())
    for code in c.all_colors():
        G = color_graph(c, None, c.decode(code))
        if max_clique(G)[0] >= m:
            return False
    return True


def wc_pigeonhole_bound(m: int, colors: int) -> int:
    """``colors*(m-2) + 2`` points force a size-m well-connected set.

    The top point has ``colors*(m-2) + 1`` neighbors below it, ``m-1`` of
    them share a color, and those form a chain of that color's tree order.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    if colors < 1:
        raise ValueError("colors must be positive")
    return colors * (m - 2) + 2


def ramsey_number(kind: str, m: int, colors: int, n_max: int, engine: str = "backtrack",
                  **opts) -> tuple:
    """Least ``n <= n_max`` with ``n ->_kind (m)^2_colors``.

    Returns ``(n or None, verdicts)`` with one verdict per scanned ``n``.
    """
    verdicts = []
    for n in range(1, n_max + 1):
        v = decide_arrow(ArrowQuery(kind, n, m, colors, engine=engine, **opts))
        verdicts.append(v)
        if v.holds:
            return n, verdicts
    return None, verdicts


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("ARROWLAB_THREADS", "1")))
    except ValueError:
        return 1
