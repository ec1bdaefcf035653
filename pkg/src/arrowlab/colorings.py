"""Pair colorings over finite ordinal domains, and the coloring file format.

Colors are either plain naturals or :class:`Pair` values (for varrho).  Every
color has a scalar *code*: naturals are their own code, pairs use the
diagonal pairing ``(u+v)(u+v+1)/2 + v``.  The graph and search layers only
ever see codes.
"""
from __future__ import annotations

import math
import random
from typing import NamedTuple, Optional, Union

from .ordinal import Domain, Ordinal, as_ordinal, enum_index, parse_ordinal
from .walks import varrho

__all__ = [
    "Pair", "ColorValue", "Coloring", "DenseColoring", "EKColoring",
    "VarrhoColoring", "DeltaColoring", "ColoringFormatError",
    "encode_color", "decode_pair", "parse_color", "format_color",
    "ek_coloring", "varrho_coloring", "delta_coloring", "random_coloring",
    "dense_from_function", "dumps_coloring", "loads_coloring",
    "save_coloring", "load_coloring",
]

MAGIC = "arrowlab-coloring v1"


class Pair(NamedTuple):
    u: int
    v: int

    def __str__(self):
        return f"({self.u},{self.v})"


ColorValue = Union[int, Pair]


def encode_color(x: ColorValue) -> int:
    if isinstance(x, tuple):
        u, v = x
        return (u + v) * (u + v + 1) // 2 + v
    return int(x)


def decode_pair(k: int) -> Pair:
    w = (math.isqrt(8 * k + 1) - 1) // 2
    v = k - w * (w + 1) // 2
    return Pair(w - v, v)


def parse_color(text: str) -> ColorValue:
    """``"3"`` is a scalar color, ``"(3,4)"`` or ``"3:4"`` a pair."""
    t = text.strip()
    if t.startswith("(") and t.endswith(")"):
        t = t[1:-1].replace(",", ":")
    if ":" in t:
        u, v = t.split(":")
        return Pair(int(u), int(v))
    return int(t)


def format_color(x: ColorValue):
    """JSON-friendly form: int or ``[u, v]``."""
    return [x.u, x.v] if isinstance(x, tuple) else x


class ColoringFormatError(ValueError):
    pass


class Coloring:
    """A total symmetric coloring of the pairs of ``domain``.

    ``arity`` is the number of colors, or ``None`` when unbounded.
    """

    family = "dense"
    pair_valued = False

    def __init__(self, domain: Domain, arity: Optional[int]):
        self.domain = domain
        self.arity = arity
        self._memo = {}
        self._codes = {}

    def params(self) -> dict:
        return {}

    def _value(self, a: Ordinal, b: Ordinal) -> ColorValue:
        raise NotImplementedError

    def eval(self, a, b) -> ColorValue:
        a, b = as_ordinal(a), as_ordinal(b)
        if a == b:
            raise ValueError(f"coloring undefined on the diagonal ({a})")
        for x in (a, b):
            if x not in self.domain:
                raise ValueError(f"{x} is not in the coloring domain")
        if b < a:
            a, b = b, a
        key = (a, b)
        val = self._memo.get(key)
        if val is None:
            val = self._memo[key] = self._value(a, b)
        return val

    __call__ = eval

    def codes(self, D: Optional[Domain] = None) -> list:
        """Symmetric matrix of color codes on ``D`` (``-1`` on the diagonal)."""
        D = D or self.domain
        mat = self._codes.get(D)
        if mat is None:
            if not D.issubset(self.domain):
                raise ValueError("domain is not a subset of the coloring domain")
            els = D.elements
            n = len(els)
            mat = [[-1] * n for _ in range(n)]
            for j in range(n):
                for i in range(j):
                    mat[i][j] = mat[j][i] = encode_color(self.eval(els[i], els[j]))
            self._codes[D] = mat
        return mat

    def realized_colors(self, D: Optional[Domain] = None) -> list:
        mat = self.codes(D)
        return sorted({x for row in mat for x in row if x >= 0})

    def all_colors(self, D: Optional[Domain] = None) -> list:
        """Color codes to report on: all of ``range(arity)`` if finite, else the realized ones."""
        if self.arity is not None:
            return list(range(self.arity))
        return self.realized_colors(D)

    def decode(self, code: int) -> ColorValue:
        return decode_pair(code) if self.pair_valued else code

    def __repr__(self):
        return f"<{type(self).__name__} n={len(self.domain)} arity={self.arity}>"


class DenseColoring(Coloring):
    """Explicit matrix; ``rows[j]`` lists ``c(x_i, x_j)`` for ``i < j``."""

    def __init__(self, domain: Domain, arity: int, rows, family="dense", params=None):
        super().__init__(domain, arity)
        n = len(domain)
        rows = [list(r) for r in rows]
        if len(rows) != n - 1 or any(len(r) != j + 1 for j, r in enumerate(rows)):
            raise ValueError(f"matrix shape does not match domain of size {n}")
        if arity < 1:
            raise ValueError("arity must be positive")
        for r in rows:
            for x in r:
                if not isinstance(x, int) or not 0 <= x < arity:
                    raise ValueError(f"color {x!r} out of range for arity {arity}")
        self.rows = rows
        self.family = family
        self._params = params or {}

    def params(self):
        return dict(self._params)

    def _value(self, a, b):
        return self.rows[self.domain.index(b) - 1][self.domain.index(a)]

    def codes(self, D=None):
        if D is None or D == self.domain:
            mat = self._codes.get(self.domain)
            if mat is None:
                n = len(self.domain)
                mat = [[-1] * n for _ in range(n)]
                for j, r in enumerate(self.rows, start=1):
                    for i, x in enumerate(r):
                        mat[i][j] = mat[j][i] = x
                self._codes[self.domain] = mat
            return mat
        return super().codes(D)


def dense_from_function(n: int, arity: int, f) -> DenseColoring:
    """Dense coloring of ``{0..n-1}`` with ``c(i, j) = f(i, j)`` for ``i < j``."""
    rows = [[f(i, j) for i in range(j)] for j in range(1, n)]
    return DenseColoring(Domain.initial(n), arity, rows)


class EKColoring(Coloring):
    family = "ek"

    def __init__(self, domain: Domain):
        super().__init__(domain, None)

    def _value(self, a, b):
        return enum_index(b, a)


class VarrhoColoring(Coloring):
    family = "varrho"
    pair_valued = True

    def __init__(self, domain: Domain):
        super().__init__(domain, None)

    def _value(self, a, b):
        return Pair(*varrho(a, b))


class DeltaColoring(Coloring):
    family = "delta"

    def __init__(self, bits: int):
        if bits < 1:
            raise ValueError("bits must be >= 1")
        super().__init__(Domain.initial(2 ** bits), bits)
        self.bits = bits

    def params(self):
        return {"bits": self.bits}

    def _value(self, a, b):
        return (int(a) ^ int(b)).bit_length() - 1


def ek_coloring(domain: Domain) -> EKColoring:
    """``c(a, b) = b_b(a)``, the canonical enumeration index of ``a`` below ``b``."""
    return EKColoring(domain)


def varrho_coloring(domain: Domain) -> VarrhoColoring:
    return VarrhoColoring(domain)


def delta_coloring(bits: int) -> DeltaColoring:
    """Highest differing bit of ``a`` and ``b`` on ``{0..2^bits-1}``."""
    return DeltaColoring(bits)


def random_coloring(n: int, arity: int, seed: int) -> DenseColoring:
    """Dense coloring drawn from ``random.Random(seed)`` in file order.

    Entries are drawn with ``randrange(arity)`` row by row (``b`` ascending,
    then ``a`` ascending), so the matrix depends only on ``(n, arity, seed)``.
    """
    if n < 2 or arity < 1:
        raise ValueError("random_coloring needs n >= 2 and arity >= 1")
    rng = random.Random(seed)
    rows = [[rng.randrange(arity) for _ in range(j)] for j in range(1, n)]
    return DenseColoring(Domain.initial(n), arity, rows, family="random",
                         params={"seed": seed, "arity": arity})


# --- file format -------------------------------------------------------------

def _format_params(params: dict) -> str:
    return ",".join(f"{k}:{v}" for k, v in params.items())


def dumps_coloring(c: Coloring) -> str:
    n = len(c.domain)
    arity = "unbounded" if c.arity is None else str(c.arity)
    lines = [MAGIC, f"n={n} arity={arity} domain={c.domain.kind}"]
    if c.domain.kind == "explicit":
        lines.append("vertices=" + ",".join(str(x) for x in c.domain.elements))
    if c.family == "dense":
        for r in c.rows:
            lines.append(",".join(map(str, r)))
    else:
        lines.append(f"family={c.family} params={_format_params(c.params())}")
    return "\n".join(lines) + "\n"


def _parse_kv(line: str, lineno: int) -> dict:
    out = {}
    for part in line.split(" "):
        if "=" not in part:
            raise ColoringFormatError(f"line {lineno}: expected key=value, got {part!r}")
        k, v = part.split("=", 1)
        out[k] = v
    return out


def loads_coloring(text: str) -> Coloring:
    if not text.endswith("\n"):
        raise ColoringFormatError("missing trailing newline")
    lines = text[:-1].split("\n")
    if lines[0] != MAGIC:
        raise ColoringFormatError(f"line 1: expected {MAGIC!r}")
    if len(lines) < 2:
        raise ColoringFormatError("missing size header")
    hdr = _parse_kv(lines[1], 2)
    if set(hdr) != {"n", "arity", "domain"}:
        raise ColoringFormatError("line 2: expected n=, arity=, domain=")
    try:
        n = int(hdr["n"])
        arity = None if hdr["arity"] == "unbounded" else int(hdr["arity"])
    except ValueError as exc:
        raise ColoringFormatError(f"line 2: {exc}") from None
    if n < 1:
        raise ColoringFormatError("line 2: n must be positive")
    rest = lines[2:]
    lineno = 3
    if hdr["domain"] == "explicit":
        if not rest or not rest[0].startswith("vertices="):
            raise ColoringFormatError("line 3: explicit domain needs a vertices= line")
        try:
            verts = [parse_ordinal(v) for v in rest[0][len("vertices="):].split(",")]
            domain = Domain("explicit", verts)
        except ValueError as exc:
            raise ColoringFormatError(f"line 3: {exc}") from None
        if len(domain) != n:
            raise ColoringFormatError(f"size mismatch: n={n} but {len(domain)} vertices")
        rest = rest[1:]
        lineno += 1
    elif hdr["domain"] == "initial":
        domain = Domain.initial(n)
    else:
        raise ColoringFormatError(f"line 2: unknown domain kind {hdr['domain']!r}")

    if rest and rest[0].startswith("family="):
        if len(rest) != 1:
            raise ColoringFormatError(f"line {lineno + 1}: unexpected content after family line")
        return _load_generated(rest[0], lineno, n, arity, domain)

    if arity is None:
        raise ColoringFormatError("dense colorings need a finite arity")
    if len(rest) != n - 1:
        raise ColoringFormatError(f"size mismatch: expected {n - 1} matrix rows, got {len(rest)}")
    rows = []
    for j, line in enumerate(rest, start=1):
        try:
            row = [int(x) for x in line.split(",")]
        except ValueError:
            raise ColoringFormatError(f"line {lineno + j - 1}: malformed row {line!r}") from None
        if len(row) != j:
            raise ColoringFormatError(
                f"size mismatch: line {lineno + j - 1} has {len(row)} entries, expected {j}")
        for x in row:
            if not 0 <= x < arity:
                raise ColoringFormatError(
                    f"line {lineno + j - 1}: color {x} out of range for arity {arity}")
        rows.append(row)
    return DenseColoring(domain, arity, rows)


def _load_generated(line, lineno, n, arity, domain) -> Coloring:
    kv = _parse_kv(line, lineno)
    family = kv.get("family")
    params = {}
    if kv.get("params"):
        for item in kv["params"].split(","):
            k, _, v = item.partition(":")
            params[k] = int(v)
    if family == "ek":
        c = EKColoring(domain)
    elif family == "varrho":
        c = VarrhoColoring(domain)
    elif family == "delta":
        c = DeltaColoring(params["bits"])
        if c.domain != domain:
            raise ColoringFormatError("size mismatch: delta domain must be 2^bits")
    elif family == "random":
        c = random_coloring(n, params["arity"], params["seed"])
        if c.domain != domain:
            raise ColoringFormatError("random colorings live on an initial domain")
    else:
        raise ColoringFormatError(f"line {lineno}: unknown family {family!r}")
    if c.arity != arity:
        raise ColoringFormatError(f"arity mismatch for family {family}")
    return c


def save_coloring(c: Coloring, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_coloring(c))


def load_coloring(path) -> Coloring:
    with open(path, encoding="utf-8", newline="") as fh:
        return loads_coloring(fh.read())
