"""Monochromatic graphs over vertex indices, stored as int bitsets."""
from __future__ import annotations

from typing import Optional, Sequence

import networkx as nx

from .colorings import Coloring, ColorValue, encode_color
from .ordinal import Domain

__all__ = [
    "ColorGraph", "color_graph", "reachable", "bfs_parents", "vertex_connectivity",
    "is_highly_connected", "max_clique", "bits", "from_edges",
]


def bits(mask: int):
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class ColorGraph:
    __slots__ = ("n", "labels", "adj", "_bfs")

    def __init__(self, adj: Sequence[int], labels: Optional[Sequence] = None):
        self.n = len(adj)
        self.adj = tuple(adj)
        self.labels = tuple(labels) if labels is not None else tuple(range(self.n))
        self._bfs = {}
        for v, row in enumerate(self.adj):
            if row >> v & 1:
                raise ValueError("graph has a loop")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError("adjacency not symmetric")

    def edges(self):
        return [(u, v) for v in range(self.n) for u in bits(self.adj[v] & ((1 << v) - 1))]

    def induced(self, idxs: Sequence[int]) -> "ColorGraph":
        idxs = sorted(idxs)
        pos = {v: k for k, v in enumerate(idxs)}
        adj = []
        for v in idxs:
            row = 0
            for u in bits(self.adj[v]):
                if u in pos:
                    row |= 1 << pos[u]
            adj.append(row)
        return ColorGraph(adj, [self.labels[v] for v in idxs])

    def __repr__(self):
        return f"<ColorGraph n={self.n} edges={len(self.edges())}>"


def from_edges(n: int, edges) -> ColorGraph:
    adj = [0] * n
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return ColorGraph(adj)


def color_graph(c: Coloring, D: Optional[Domain], i: ColorValue) -> ColorGraph:
    """Graph on ``D`` whose edges are the pairs colored ``i``."""
    D = D or c.domain
    mat = c.codes(D)
    code = encode_color(i)
    adj = []
    for row in mat:
        m = 0
        for u, x in enumerate(row):
            if x == code:
                m |= 1 << u
        adj.append(m)
    return ColorGraph(adj, D.elements)


def bfs_parents(G: ColorGraph, start: int) -> dict:
    """BFS from ``start`` inside the suffix ``{v >= start}``; maps vertex to parent.

    Neighbors are expanded in increasing index order, so the parent pointers
    give the deterministic shortest paths used in certificates.
    """
    res = G._bfs.get(start)
    if res is not None:
        return res
    allowed = ((1 << G.n) - 1) & ~((1 << start) - 1)
    parent = {start: None}
    seen = 1 << start
    frontier = [start]
    while frontier:
        nxt = []
        for v in frontier:
            new = G.adj[v] & allowed & ~seen
            seen |= new
            for u in bits(new):
                parent[u] = v
                nxt.append(u)
        nxt.sort()
        frontier = nxt
    G._bfs[start] = parent
    return parent


def reachable(G: ColorGraph, start: int, floor: int) -> int:
    """Bitset of vertices reachable from ``start`` using only vertices ``>= floor``."""
    if start < floor:
        raise ValueError(f"start {start} is below floor {floor}")
    allowed = ((1 << G.n) - 1) & ~((1 << floor) - 1)
    seen = frontier = 1 << start
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= G.adj[v]
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return seen


def _to_nx(G: ColorGraph) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(G.n))
    g.add_edges_from(G.edges())
    return g


def vertex_connectivity(G: ColorGraph) -> int:
    """Fewest vertex deletions that disconnect ``G``; ``n-1`` for complete graphs."""
    if G.n < 1:
        raise ValueError("empty graph")
    if G.n == 1:
        return 0
    return nx.node_connectivity(_to_nx(G))


def is_highly_connected(G: ColorGraph) -> bool:
    # finite graphs: connected after every deletion of < n vertices iff complete
    full = (1 << G.n) - 1
    return all(G.adj[v] | (1 << v) == full for v in range(G.n))


def _color_bound(adj, cand: int) -> int:
    # number of classes in a greedy coloring of cand
    colors = 0
    while cand:
        colors += 1
        avail = cand
        while avail:
            v = (avail & -avail).bit_length() - 1
            cand &= ~(1 << v)
            avail &= ~(1 << v) & ~adj[v]
    return colors


def max_clique(G: ColorGraph) -> tuple:
    """Exact maximum clique as ``(size, sorted vertex indices)``.

    Branch and bound over candidates in increasing index order with a greedy
    coloring bound; the first maximum clique reached is the lexicographically
    least one.
    """
    if G.n < 1:
        raise ValueError("empty graph")
    adj = G.adj
    best = [0, []]

    def expand(clique, cand):
        if not cand:
            if len(clique) > best[0]:
                best[0], best[1] = len(clique), list(clique)
            return
        if len(clique) + _color_bound(adj, cand) <= best[0]:
            return
        for v in bits(cand):
            if len(clique) + bin(cand).count("1") <= best[0]:
                return
            clique.append(v)
            expand(clique, cand & adj[v] & ~((1 << (v + 1)) - 1))
            clique.pop()
            cand &= ~(1 << v)

    expand([], (1 << G.n) - 1)
    return best[0], best[1]
