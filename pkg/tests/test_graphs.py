import random
from itertools import combinations

import networkx as nx
import pytest

from arrowlab.graphs import (ColorGraph, bfs_parents, bits, color_graph, from_edges,
                             is_highly_connected, max_clique, reachable, vertex_connectivity)


def random_graph(rng, n, p=None):
    p = rng.random() if p is None else p
    return from_edges(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p])


def cut_connectivity(G):
    # smallest deletion set leaving >= 2 vertices in different components
    n = G.n
    for k in range(n - 1):
        for S in combinations(range(n), k):
            rest = [v for v in range(n) if v not in S]
            if len(rest) < 2:
                continue
            H = G.induced(rest)
            if bin(reachable(H, 0, 0)).count("1") < H.n:
                return k
    return n - 1


def brute_clique(G):
    for k in range(G.n, 0, -1):
        for S in combinations(range(G.n), k):
            if all(G.adj[a] >> b & 1 for a, b in combinations(S, 2)):
                return k, list(S)
    return 0, []


def test_pentagon_graphs(pentagon):
    G0 = color_graph(pentagon, None, 0)
    assert sorted(G0.edges()) == sorted([(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
    G1 = color_graph(pentagon, None, 1)
    assert len(G1.edges()) == 5 and (0, 2) in G1.edges()


def test_reachable_examples():
    C5 = from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    assert list(bits(reachable(C5, 1, 1))) == [1, 2, 3, 4]
    assert list(bits(reachable(C5, 0, 0))) == [0, 1, 2, 3, 4]
    assert list(bits(reachable(C5, 3, 2))) == [2, 3, 4]
    with pytest.raises(ValueError):
        reachable(C5, 0, 1)


def test_reachable_monotone_in_floor():
    rng = random.Random(3)
    for _ in range(300):
        n = rng.randint(1, 10)
        G = random_graph(rng, n)
        s = rng.randrange(n)
        prev = None
        for floor in range(s, -1, -1):
            r = reachable(G, s, floor)
            assert r >> s & 1
            if prev is not None:
                assert prev & ~r == 0
            prev = r


def test_bfs_parents_paths_are_shortest():
    rng = random.Random(4)
    for _ in range(200):
        n = rng.randint(2, 10)
        G = random_graph(rng, n)
        s = rng.randrange(n)
        par = bfs_parents(G, s)
        assert set(par) == set(bits(reachable(G, s, s)))
        g = nx.Graph(G.edges())
        g.add_nodes_from(range(s, n))
        sub = g.subgraph(range(s, n))
        for v, p in par.items():
            if p is not None:
                assert G.adj[v] >> p & 1 and p >= s
            depth, x = 0, v
            while par[x] is not None:
                x, depth = par[x], depth + 1
            assert depth == nx.shortest_path_length(sub, s, v)


def test_connectivity_examples():
    K5 = from_edges(5, combinations(range(5), 2))
    C5 = from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    assert vertex_connectivity(K5) == 4
    assert vertex_connectivity(C5) == 2
    assert vertex_connectivity(from_edges(2, [])) == 0
    assert vertex_connectivity(from_edges(1, [])) == 0
    with pytest.raises(ValueError):
        vertex_connectivity(ColorGraph([]))


def test_connectivity_vs_cut_oracle():
    rng = random.Random(5)
    for _ in range(200):
        G = random_graph(rng, rng.randint(2, 8))
        assert vertex_connectivity(G) == cut_connectivity(G)


def test_highly_connected_vs_oracles():
    rng = random.Random(6)
    for _ in range(1000):
        n = rng.randint(1, 7)
        G = random_graph(rng, n, rng.choice([0.5, 0.8, 0.95, 1.0]))
        hc = is_highly_connected(G)
        assert hc == (cut_connectivity(G) == n - 1 or n == 1)
        assert hc == (max_clique(G)[0] == n)


def test_max_clique_examples(pentagon):
    assert max_clique(color_graph(pentagon, None, 0)) == (2, [0, 1])
    assert max_clique(from_edges(4, combinations(range(4), 2))) == (4, [0, 1, 2, 3])
    assert max_clique(from_edges(3, [])) == (1, [0])


def test_max_clique_vs_brute():
    rng = random.Random(7)
    for _ in range(300):
        G = random_graph(rng, rng.randint(1, 11))
        assert max_clique(G) == brute_clique(G)


def test_graph_validation():
    with pytest.raises(ValueError):
        ColorGraph([1])
    with pytest.raises(ValueError):
        ColorGraph([2, 0])
