"""Well-connected sets, the tree orders they induce, and maximal chains.

A set X is well-connected in color i when every pair a < b of X is joined by
an i-colored path staying at or above a.  Paths may leave X but must stay in
the ambient finite domain D; on samples of an infinite ordinal, a negative
answer is sound for the full ordinal while a positive one need not lift.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .colorings import Coloring, ColorValue
from .graphs import ColorGraph, bfs_parents, bits, color_graph, reachable
from .ordinal import Domain

__all__ = [
    "PathWitness", "WCCertificate", "TreeOrder", "WCResult",
    "is_well_connected", "wc_tree", "max_wc", "brute_force_max_wc", "branches",
]


@dataclass(frozen=True)
class PathWitness:
    color: ColorValue
    vertices: tuple


@dataclass
class WCCertificate:
    """Outcome of a well-connectedness check.

    On acceptance ``paths`` holds one witness per pair of ``witness`` (pairs in
    lexicographic order); on rejection ``failing_pair`` is the least pair with
    no suffix path and ``reachable`` what the smaller end can reach.
    """
    accepted: bool
    color: ColorValue
    witness: tuple
    domain: Domain
    paths: list = field(default_factory=list)
    failing_pair: Optional[tuple] = None
    reachable: tuple = ()

    def __bool__(self):
        return self.accepted


@dataclass(frozen=True)
class TreeOrder:
    color: ColorValue
    n: int
    pred: tuple
    labels: tuple

    def below(self, b: int) -> list:
        return list(bits(self.pred[b]))

    def is_chain(self, idxs) -> bool:
        idxs = sorted(idxs)
        return all(self.pred[b] >> a & 1 for k, b in enumerate(idxs) for a in idxs[:k])


@dataclass(frozen=True)
class WCResult:
    size: int
    witness: tuple


def _indices(D: Domain, X) -> list:
    return sorted({D.index(x) for x in X})


def _path(parent, target):
    out = [target]
    while parent[out[-1]] is not None:
        out.append(parent[out[-1]])
    return out[::-1]


def is_well_connected(c: Coloring, i: ColorValue, X, D: Optional[Domain] = None,
                      G: Optional[ColorGraph] = None) -> WCCertificate:
    D = D or c.domain
    idxs = _indices(D, X)
    if not idxs:
        raise ValueError("X must be nonempty")
    if G is None:
        G = color_graph(c, D, i)
    labels = D.elements
    witness = tuple(labels[v] for v in idxs)
    paths = []
    for k, a in enumerate(idxs):
        parent = bfs_parents(G, a)
        for b in idxs[k + 1:]:
            if b not in parent:
                reach = tuple(labels[v] for v in sorted(parent))
                return WCCertificate(False, i, witness, D, failing_pair=(labels[a], labels[b]),
                                     reachable=reach)
            paths.append(PathWitness(i, tuple(labels[v] for v in _path(parent, b))))
    return WCCertificate(True, i, witness, D, paths=paths)


def wc_tree(c: Coloring, D: Optional[Domain], i: ColorValue, G: Optional[ColorGraph] = None) -> TreeOrder:
    """The order ``a <| b`` iff ``a < b`` and ``{a, b}`` is well-connected in color ``i``."""
    D = D or c.domain
    if G is None:
        G = color_graph(c, D, i)
    n = G.n
    pred = [0] * n
    for a in range(n):
        for b in bits(reachable(G, a, a) >> (a + 1) << (a + 1)):
            pred[b] |= 1 << a
    return TreeOrder(i, n, tuple(pred), D.elements)


def branches(t: TreeOrder) -> list:
    """Maximal chains of the tree, one per maximal element, as sorted label lists."""
    has_succ = 0
    for p in t.pred:
        has_succ |= p
    return [[t.labels[v] for v in bits(t.pred[b] | 1 << b)]
            for b in range(t.n) if not has_succ >> b & 1]


def max_wc(c: Coloring, D: Optional[Domain] = None) -> dict:
    """Largest well-connected set per color: the longest branch of each tree.

    Returns ``{color: WCResult}`` over all colors when the arity is finite,
    else over the colors realized on ``D``.
    """
    D = D or c.domain
    out = {}
    for code in c.all_colors(D):
        color = c.decode(code)
        t = wc_tree(c, D, color)
        best = max(range(t.n), key=lambda b: (bin(t.pred[b]).count("1"), -b))
        chain = tuple(t.labels[v] for v in bits(t.pred[best] | 1 << best))
        out[color] = WCResult(len(chain), chain)
    return out


def brute_force_max_wc(c: Coloring, D: Optional[Domain] = None) -> dict:
    """Subset-enumeration oracle for :func:`max_wc` (``|D| <= 16``).

    Pairs are tested straight from the color matrix with a plain BFS, and a
    subset counts iff all its pairs pass; nothing from the tree code is used.
    """
    D = D or c.domain
    n = len(D)
    if n > 16:
        raise ValueError(f"brute force limited to 16 vertices, got {n}")
    mat = c.codes(D)
    out = {}
    for code in c.all_colors(D):
        ok_pair = [0] * n
        for a in range(n):
            seen = {a}
            stack = [a]
            while stack:
                v = stack.pop()
                for u in range(a, n):
                    if u not in seen and mat[v][u] == code:
                        seen.add(u)
                        stack.append(u)
            for b in seen:
                if b != a:
                    ok_pair[a] |= 1 << b
                    ok_pair[b] |= 1 << a
        good = bytearray(1 << n)
        good[0] = 1
        best_size, best_mask = 0, 0
        for mask in range(1, 1 << n):
            low = mask & -mask
            rest = mask ^ low
            v = low.bit_length() - 1
            if good[rest] and rest & ~ok_pair[v] == 0:
                good[mask] = 1
                s = bin(mask).count("1")
                if s > best_size:
                    best_size, best_mask = s, mask
        out[c.decode(code)] = WCResult(best_size, tuple(D.elements[v] for v in bits(best_mask)))
    return out
