"""Ordinals below epsilon_0 in Cantor normal form.

An :class:`Ordinal` is an immutable tuple of ``(exponent, coefficient)`` terms
with strictly decreasing exponents.  Besides parsing and printing, the module
provides exactly the structural operations the walk and coloring code needs:
comparison, successor/predecessor, fundamental sequences and a canonical
enumeration of the ordinals below a bound.
"""
from __future__ import annotations

import random
from bisect import bisect_left
from functools import lru_cache
from typing import Iterable, Iterator, Sequence, Union

__all__ = [
    "Ordinal", "OrdinalSyntaxError", "Domain", "ZERO", "ONE", "OMEGA",
    "as_ordinal", "parse_ordinal", "compare", "fund_seq",
    "enumerate_below", "enum_index", "size", "sample_below",
]


class OrdinalSyntaxError(ValueError):
    def __init__(self, message, text, pos):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


class Ordinal:
    """Sum of ``w^e * c`` over ``terms``; the empty tuple is 0."""

    __slots__ = ("terms", "_key", "_hash")

    def __init__(self, terms: Iterable[tuple["Ordinal", int]] = ()):
        terms = tuple(terms)
        prev = None
        for e, c in terms:
            if not isinstance(e, Ordinal) or not isinstance(c, int) or c < 1:
                raise ValueError(f"bad CNF term ({e!r}, {c!r})")
            if prev is not None and not e._key < prev._key:
                raise ValueError("CNF exponents must be strictly decreasing")
            prev = e
        self.terms = terms
        # nested tuples compare in C exactly like CNF term lists
        self._key = tuple((e._key, c) for e, c in terms)
        self._hash = hash(self._key)

    @classmethod
    def from_int(cls, n: int) -> "Ordinal":
        if n < 0:
            raise ValueError("negative ordinal")
        return _nat(n)

    # --- structure -------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_finite(self) -> bool:
        return not self.terms or self.terms[0][0].is_zero

    @property
    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0].is_zero

    @property
    def is_limit(self) -> bool:
        return bool(self.terms) and not self.terms[-1][0].is_zero

    @property
    def leading_exponent(self) -> "Ordinal":
        return self.terms[0][0] if self.terms else ZERO

    def __int__(self) -> int:
        if not self.is_finite:
            raise ValueError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    def __index__(self) -> int:
        return int(self)

    def split_finite(self) -> tuple["Ordinal", int]:
        """Return ``(delta, n)`` with ``self == delta + n`` and delta limit or 0."""
        if self.is_successor:
            return Ordinal(self.terms[:-1]), self.terms[-1][1]
        return self, 0

    def succ(self) -> "Ordinal":
        if self.is_successor:
            return Ordinal(self.terms[:-1] + ((ZERO, self.terms[-1][1] + 1),))
        return Ordinal(self.terms + ((ZERO, 1),))

    def pred(self) -> "Ordinal":
        if not self.is_successor:
            raise ValueError(f"{self} has no predecessor")
        c = self.terms[-1][1]
        head = self.terms[:-1]
        return Ordinal(head + ((ZERO, c - 1),) if c > 1 else head)

    # --- order -----------------------------------------------------------
    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._key < other._key

    def __le__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._key <= other._key

    def __gt__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._key > other._key

    def __ge__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._key >= other._key

    # --- printing --------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        return "+".join(_term_str(e, c) for e, c in self.terms)

    def __repr__(self):
        return f"Ordinal({str(self)!r})"


def _coerce(x):
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, int) and not isinstance(x, bool) and x >= 0:
        return _nat(x)
    return None


def as_ordinal(x: Union[Ordinal, int, str]) -> Ordinal:
    if isinstance(x, str):
        return parse_ordinal(x)
    o = _coerce(x)
    if o is None:
        raise TypeError(f"not an ordinal: {x!r}")
    return o


_NATS: list = []


def _nat(n: int) -> Ordinal:
    if n < len(_NATS):
        return _NATS[n]
    if n == 0:
        return Ordinal()
    return Ordinal(((ZERO, n),))


ZERO = Ordinal()
_NATS.append(ZERO)
for _i in range(1, 256):
    _NATS.append(Ordinal(((ZERO, _i),)))
ONE = _NATS[1]
OMEGA = Ordinal(((ONE, 1),))


def _exp_str(e: Ordinal) -> str:
    if e.is_finite:
        return str(int(e))
    if len(e.terms) == 1 and e.terms[0][1] == 1:
        return _term_str(e.terms[0][0], 1)
    return f"({e})"


def _term_str(e: Ordinal, c: int) -> str:
    if e.is_zero:
        return str(c)
    base = "w" if e == ONE else f"w^{_exp_str(e)}"
    return base if c == 1 else f"{base}*{c}"


def compare(a, b) -> str:
    """Return ``'less'``, ``'equal'`` or ``'greater'``."""
    a, b = as_ordinal(a), as_ordinal(b)
    if a._key < b._key:
        return "less"
    if a._key == b._key:
        return "equal"
    return "greater"


def _add(a: Ordinal, b: Ordinal) -> Ordinal:
    # ordinal sum; only used to normalize parsed expressions
    if b.is_zero:
        return a
    lead, c = b.terms[0]
    head = [t for t in a.terms if t[0] > lead]
    same = [t for t in a.terms if t[0] == lead]
    if same:
        return Ordinal(head + [(lead, same[0][1] + c)] + list(b.terms[1:]))
    return Ordinal(head + list(b.terms))


# --- parsing -----------------------------------------------------------------
#   expr  := term ('+' term)*
#   term  := nat | 'w' ['^' atom] ['*' nat]
#   atom  := nat | '(' expr ')' | 'w' ['^' atom]

class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.toks.append(("nat", int(text[i:j]), i))
                i = j
            elif ch in "wω":
                self.toks.append(("w", None, i))
                i += 1
            elif ch in "+^*()":
                self.toks.append((ch, None, i))
                i += 1
            else:
                raise OrdinalSyntaxError(f"unexpected character {ch!r}", text, i)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def pos(self):
        return self.toks[self.i][2] if self.i < len(self.toks) else len(self.text)

    def take(self, kind):
        if self.peek() != kind:
            want = "natural number" if kind == "nat" else repr(kind)
            raise OrdinalSyntaxError(f"expected {want}", self.text, self.pos())
        tok = self.toks[self.i]
        self.i += 1
        return tok[1]

    def expr(self) -> Ordinal:
        val = self.term()
        while self.peek() == "+":
            self.i += 1
            val = _add(val, self.term())
        return val

    def term(self) -> Ordinal:
        if self.peek() == "nat":
            return _nat(self.take("nat"))
        self.take("w")
        exp = self.atom() if self._caret() else ONE
        coef = 1
        if self.peek() == "*":
            self.i += 1
            coef = self.take("nat")
        return Ordinal(((exp, coef),)) if coef else ZERO

    def atom(self) -> Ordinal:
        kind = self.peek()
        if kind == "nat":
            return _nat(self.take("nat"))
        if kind == "(":
            self.i += 1
            val = self.expr()
            self.take(")")
            return val
        self.take("w")
        exp = self.atom() if self._caret() else ONE
        return Ordinal(((exp, 1),))

    def _caret(self) -> bool:
        if self.peek() == "^":
            self.i += 1
            return True
        return False


def parse_ordinal(text: str) -> Ordinal:
    """Parse an ordinal expression such as ``"w^2*3+w+4"``.

    ``w`` (or ``ω``) denotes omega; exponents bind to a single atom, so
    ``w^w+1`` is ``ω^ω + 1`` and ``w^(w+1)`` needs parentheses.  Forms that
    are not in normal form (``"w+w"``, ``"3+w"``) are normalized.
    """
    p = _Parser(text)
    if not p.toks:
        raise OrdinalSyntaxError("empty expression", text, 0)
    val = p.expr()
    if p.peek() is not None:
        raise OrdinalSyntaxError("unexpected token", text, p.pos())
    return val


# --- fundamental sequences ---------------------------------------------------

def fund_seq(b, k: int) -> Ordinal:
    """k-th element (0-indexed) of the canonical fundamental sequence of limit ``b``.

    ``w[k] = k``; otherwise, with ``b = g + w^e*c``:
    ``(g + w^(e'+1)*c)[k] = g + w^(e'+1)*(c-1) + w^e'*(k+1)`` and for limit
    ``e``, ``(g + w^e*c)[k] = g + w^e*(c-1) + w^(e[k])``.
    """
    b = as_ordinal(b)
    if not b.is_limit:
        raise ValueError(f"fund_seq needs a limit ordinal, got {b}")
    if k < 0:
        raise ValueError("k must be a natural number")
    if b == OMEGA:
        return _nat(k)
    e, c = b.terms[-1]
    head = b.terms[:-1] + (((e, c - 1),) if c > 1 else ())
    if e.is_successor:
        return Ordinal(head + ((e.pred(), k + 1),))
    return Ordinal(head + ((fund_seq(e, k), 1),))


# --- canonical enumeration ---------------------------------------------------

@lru_cache(maxsize=None)
def _coefsum(a: Ordinal) -> int:
    return sum(c + _coefsum(e) for e, c in a.terms)


@lru_cache(maxsize=None)
def _depth(a: Ordinal) -> int:
    if a.is_zero:
        return 0
    return 1 + max(_depth(e) for e, _ in a.terms)


def size(a) -> int:
    """Stage at which ``a`` is emitted: nested coefficient sum plus nesting depth."""
    a = as_ordinal(a)
    return _coefsum(a) + _depth(a)


@lru_cache(maxsize=None)
def _stage(lead_bound: Ordinal, t: int) -> tuple:
    """Sorted ordinals of size exactly ``t`` with leading exponent < ``lead_bound``."""
    if t < 0:
        return ()
    if lead_bound.is_zero:
        return ()
    if lead_bound.is_finite:
        pool = [_nat(j) for j in range(int(lead_bound))]
    else:
        inner = lead_bound.leading_exponent.succ()
        pool = []
        for s in range(t):
            pool.extend(x for x in _stage(inner, s) if x < lead_bound)
    # exponents in decreasing order; term w^e*c costs c + coefsum(e) and has depth 1 + depth(e)
    pool.sort(reverse=True)
    info = [(e, _coefsum(e), _depth(e)) for e in pool]
    out = []

    def rec(start, terms, csum, dmax):
        total = csum + dmax
        if terms and total == t:
            out.append(Ordinal(terms))
        for j in range(start, len(info)):
            e, ce, de = info[j]
            nd = max(dmax, 1 + de)
            base = csum + ce + nd
            c = 1
            while base + c <= t:
                rec(j + 1, terms + [(e, c)], csum + ce + c, nd)
                c += 1

    if t == 0:
        return (ZERO,)
    rec(0, [], 0, 0)
    return tuple(sorted(out))


def _universe(b: Ordinal) -> Ordinal:
    return b.leading_exponent.succ()


def enum_index(b, a) -> int:
    """Position of ``a`` in the canonical enumeration of the ordinals below ``b``."""
    b, a = as_ordinal(b), as_ordinal(a)
    if not a < b:
        raise ValueError(f"enum_index needs a < b, got a={a}, b={b}")
    if b.is_finite:
        return int(a)
    lb = _universe(b)
    s = size(a)
    idx = 0
    for t in range(s):
        idx += bisect_left(_stage(lb, t), b)
    return idx + bisect_left(_stage(lb, s), a)


def enumerate_below(b, k: int) -> Ordinal:
    """Inverse of :func:`enum_index`: the k-th ordinal below ``b``."""
    b = as_ordinal(b)
    if k < 0:
        raise ValueError("k must be a natural number")
    if b.is_finite:
        if k >= int(b):
            raise IndexError(f"{b} has only {int(b)} elements")
        return _nat(k)
    lb = _universe(b)
    t = 0
    while True:
        st = _stage(lb, t)
        cnt = bisect_left(st, b)
        if k < cnt:
            return st[k]
        k -= cnt
        t += 1


def iter_below(b) -> Iterator[Ordinal]:
    """Ordinals below ``b`` in canonical enumeration order."""
    b = as_ordinal(b)
    if b.is_finite:
        yield from (_nat(j) for j in range(int(b)))
        return
    lb = _universe(b)
    t = 0
    while True:
        st = _stage(lb, t)
        yield from st[:bisect_left(st, b)]
        t += 1


def sample_below(b, count: int, rng: random.Random, pool: int | None = None) -> list:
    """Sorted random ``count``-subset of ordinals below ``b``.

    Infinite bounds are sampled by canonical enumeration index from the first
    ``pool`` ordinals (default ``max(4*count, 64)``).
    """
    b = as_ordinal(b)
    if b.is_finite:
        n = int(b)
        if count > n:
            raise ValueError(f"cannot draw {count} ordinals below {b}")
        return sorted(_nat(j) for j in rng.sample(range(n), count))
    pool = pool or max(4 * count, 64)
    if count > pool:
        raise ValueError("sample larger than pool")
    return sorted(enumerate_below(b, j) for j in rng.sample(range(pool), count))


class Domain:
    """Finite, nonempty, strictly increasing set of ordinals.

    ``Domain.initial(n)`` is ``{0, ..., n-1}``; ``Domain.explicit(xs)`` any other set.
    """

    __slots__ = ("kind", "elements", "_index")

    def __init__(self, kind: str, elements: Sequence[Ordinal]):
        if kind not in ("initial", "explicit"):
            raise ValueError(f"unknown domain kind {kind!r}")
        elements = tuple(as_ordinal(x) for x in elements)
        if not elements:
            raise ValueError("domain must be nonempty")
        if any(not x < y for x, y in zip(elements, elements[1:])):
            raise ValueError("domain elements must be strictly increasing")
        self.kind = kind
        self.elements = elements
        self._index = {x: i for i, x in enumerate(elements)}

    @classmethod
    def initial(cls, n: int) -> "Domain":
        if n < 1:
            raise ValueError("domain must be nonempty")
        return cls("initial", [_nat(j) for j in range(n)])

    @classmethod
    def explicit(cls, elements) -> "Domain":
        elements = sorted(set(as_ordinal(x) for x in elements))
        return cls("explicit", elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        o = _coerce(x)
        return o is not None and o in self._index

    def index(self, x) -> int:
        try:
            return self._index[as_ordinal(x)]
        except KeyError:
            raise ValueError(f"{x} is not in the domain") from None

    def issubset(self, other: "Domain") -> bool:
        return all(x in other._index for x in self.elements)

    def __eq__(self, other):
        return isinstance(other, Domain) and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        if self.kind == "initial":
            return f"Domain.initial({len(self)})"
        return f"Domain.explicit([{', '.join(map(str, self.elements))}])"
