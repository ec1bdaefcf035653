import random
from itertools import combinations

import pytest

from arrowlab.certificates import verify, wc_certificate
from arrowlab.colorings import ek_coloring, random_coloring, varrho_coloring
from arrowlab.graphs import color_graph, reachable
from arrowlab.ordinal import Domain, sample_below
from arrowlab.wellconn import (branches, brute_force_max_wc, is_well_connected, max_wc,
                               wc_tree)


def random_colorings(seed, count, nmax, kmax):
    rng = random.Random(seed)
    for _ in range(count):
        yield random_coloring(rng.randint(2, nmax), rng.randint(1, kmax), rng.getrandbits(32))


class TestCheck:
    def test_pentagon_accept(self, pentagon):
        cert = is_well_connected(pentagon, 0, {0, 1, 2})
        assert cert.accepted
        assert [p.vertices for p in cert.paths] == [(0, 1), (0, 1, 2), (1, 2)]

    def test_pentagon_reject(self, pentagon):
        cert = is_well_connected(pentagon, 1, {3, 4})
        assert not cert.accepted
        assert cert.failing_pair == (3, 4)
        assert cert.reachable == (3,)

    def test_singleton_and_empty(self, pentagon):
        assert is_well_connected(pentagon, 1, [3]).accepted
        with pytest.raises(ValueError):
            is_well_connected(pentagon, 0, [])

    def test_paths_are_valid(self):
        for c in random_colorings(11, 200, 10, 3):
            n = len(c.domain)
            rng = random.Random(n)
            X = rng.sample(range(n), rng.randint(1, n))
            for col in range(c.arity):
                cert = is_well_connected(c, col, X)
                if not cert.accepted:
                    continue
                for (a, b), p in zip(combinations(sorted(X), 2), cert.paths):
                    v = p.vertices
                    assert v[0] == a and v[-1] == b and min(v) >= a
                    assert all(c.eval(x, y) == col for x, y in zip(v, v[1:]))

    def test_certificates_verify(self):
        for c in random_colorings(12, 200, 9, 3):
            n = len(c.domain)
            rng = random.Random(n * 7)
            X = rng.sample(range(n), rng.randint(1, n))
            for col in range(c.arity):
                res = verify(wc_certificate(c, is_well_connected(c, col, X)))
                assert res.ok, res.message


class TestTree:
    def test_pentagon_branches(self, pentagon):
        t0 = wc_tree(pentagon, None, 0)
        assert branches(t0) == [[0, 1, 2, 3, 4]]
        t1 = wc_tree(pentagon, None, 1)
        assert branches(t1) == [[0, 1, 3], [0, 1, 2, 4]]

    def test_tree_property(self):
        for c in random_colorings(13, 300, 12, 4):
            for col in range(c.arity):
                t = wc_tree(c, None, col)
                for b in range(t.n):
                    assert t.is_chain(t.below(b))

    def test_chain_iff_well_connected(self):
        for c in random_colorings(14, 200, 9, 3):
            n = len(c.domain)
            for col in range(c.arity):
                t = wc_tree(c, None, col)
                G = color_graph(c, None, col)
                for mask in range(1, 1 << n, max(1, (1 << n) // 64)):
                    X = [v for v in range(n) if mask >> v & 1]
                    assert t.is_chain(X) == is_well_connected(c, col, X, G=G).accepted

    def test_branches_are_well_connected(self):
        for c in random_colorings(15, 100, 12, 3):
            for col in range(c.arity):
                for br in branches(wc_tree(c, None, col)):
                    assert is_well_connected(c, col, br).accepted


class TestMax:
    def test_pentagon(self, pentagon):
        res = max_wc(pentagon)
        assert res[0].size == 5 and res[0].witness == (0, 1, 2, 3, 4)
        assert res[1].size == 4 and res[1].witness == (0, 1, 2, 4)

    def test_golden_random(self):
        res = max_wc(random_coloring(8, 2, 7))
        assert {k: v.size for k, v in res.items()} == {0: 7, 1: 6}

    def test_vs_brute_force(self):
        for c in random_colorings(16, 400, 12, 4):
            fast, slow = max_wc(c), brute_force_max_wc(c)
            assert {k: v.size for k, v in fast.items()} == {k: v.size for k, v in slow.items()}
            for col, r in fast.items():
                assert is_well_connected(c, col, r.witness).accepted

    def test_ek_finite(self):
        # on a finite initial segment every vertex sees each color at most once from below
        for n in range(2, 12):
            res = max_wc(ek_coloring(Domain.initial(n)))
            assert max(r.size for r in res.values()) <= 2

    def test_varrho_small(self):
        rng = random.Random(17)
        D = Domain("explicit", sample_below("w^2", 14, rng))
        res = max_wc(varrho_coloring(D))
        assert max(r.size for r in res.values()) <= 2

    def test_brute_guard(self):
        with pytest.raises(ValueError):
            brute_force_max_wc(random_coloring(17, 2, 0))


def test_floor_monotone(pentagon):
    G = color_graph(pentagon, None, 1)
    for s in range(5):
        for f in range(s):
            assert reachable(G, s, f + 1) & ~reachable(G, s, f) == 0
