"""Walk functions rho and varrho over the CNF fundamental-sequence C-sequence.

``C_b`` is empty for 0, ``{b-1}`` for successors and the canonical
fundamental sequence for limits.  All functions are memoized on ordinal pairs.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .ordinal import Ordinal, as_ordinal, fund_seq

__all__ = ["c_seq", "rho", "rho_fiber", "varrho", "FiberSet", "clear_caches"]


def c_seq(b) -> Iterator[Ordinal]:
    """Elements of ``C_b`` in increasing order (infinite stream for limits)."""
    b = as_ordinal(b)
    if b.is_zero:
        return
    if b.is_successor:
        yield b.pred()
        return
    k = 0
    while True:
        yield fund_seq(b, k)
        k += 1


def _split(b: Ordinal, a: Ordinal):
    """Return ``(C_b ∩ a, min(C_b minus a))`` for a limit ``b > a``."""
    below = []
    for x in c_seq(b):
        if x >= a:
            return below, x
        below.append(x)
    raise AssertionError("unreachable: C_b is cofinal in b")


@lru_cache(maxsize=None)
def _rho(a: Ordinal, b: Ordinal) -> int:
    if a == b:
        return 0
    delta, _ = b.split_finite()
    # rho(a, delta + n) = rho(a, delta) once a < delta, and 0 once a >= delta
    if a >= delta:
        return 0
    below, nxt = _split(delta, a)
    val = max(len(below), _rho(a, nxt))
    for x in below:
        val = max(val, _rho(x, a))
    return val


def rho(a, b) -> int:
    """Number of steps-weighted walk function ``rho(a, b)`` for ``a <= b``."""
    a, b = as_ordinal(a), as_ordinal(b)
    if a > b:
        raise ValueError(f"rho needs a <= b, got a={a}, b={b}")
    return _rho(a, b)


@dataclass(frozen=True)
class FiberSet:
    base: Ordinal
    bound: int
    members: tuple

    def __contains__(self, x):
        return as_ordinal(x) in self.members

    def __len__(self):
        return len(self.members)


@lru_cache(maxsize=None)
def _closure(a: Ordinal, n: int) -> tuple:
    # sorted candidates for {xi <= a : rho(xi, a) <= n}; exact, but filtered again by rho_fiber
    delta, m = a.split_finite()
    top = []
    x = a
    for _ in range(m):
        top.append(x)
        x = x.pred()
    top.reverse()
    if delta.is_zero:
        return (delta,) + tuple(top)
    out = []
    cs = []
    for j, cj in enumerate(c_seq(delta)):
        if j > n:
            break
        sub = _closure(cj, n)
        start = bisect_right(sub, cs[-1]) if cs else 0
        for xi in sub[start:]:
            if all(_rho(cl, xi) <= n for cl in cs):
                out.append(xi)
        cs.append(cj)
    # pieces come from the disjoint intervals (C(j-1), C(j)], so out is already sorted
    return tuple(out) + (delta,) + tuple(top)


def rho_fiber(a, n: int) -> FiberSet:
    """The finite set ``{xi <= a : rho(xi, a) <= n}``."""
    a = as_ordinal(a)
    if n < 0:
        raise ValueError("bound must be a natural number")
    members = tuple(x for x in _closure(a, n) if _rho(x, a) <= n)
    return FiberSet(a, n, members)


@lru_cache(maxsize=None)
def _varrho(a: Ordinal, b: Ordinal) -> tuple:
    r = _rho(a, b)
    return r, len(rho_fiber(a, r).members)


def varrho(a, b) -> tuple:
    """``(rho(a, b), otp{xi <= a : rho(xi, a) <= rho(a, b)})`` for ``a < b``."""
    a, b = as_ordinal(a), as_ordinal(b)
    if not a < b:
        raise ValueError(f"varrho needs a < b, got a={a}, b={b}")
    return _varrho(a, b)


def clear_caches():
    for f in (_rho, _closure, _varrho):
        f.cache_clear()
