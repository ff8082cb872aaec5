"""Lattices given by Gram matrices, a catalog of named lattices, and exact
short-vector enumeration for definite lattices."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Optional, Sequence, Tuple

from . import linalg as la
from .linalg import IntMatrix

Vector = Tuple[int, ...]


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class Lattice:
    gram: IntMatrix
    label: Optional[str] = None

    def __post_init__(self):
        gram = la.as_int_matrix(self.gram)
        object.__setattr__(self, "gram", gram)
        n, m = la.shape(gram)
        if n != m:
            raise LatticeError("Gram matrix must be square")
        if not la.is_symmetric(gram):
            raise LatticeError("Gram matrix must be symmetric")
        if la.det_exact(gram) == 0:
            raise LatticeError("degenerate Gram matrix")

    def __eq__(self, other):
        return isinstance(other, Lattice) and self.gram == other.gram

    def __hash__(self):
        return hash(self.gram)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def det(self) -> int:
        return la.det_exact(self.gram)

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    @cached_property
    def signature(self) -> Tuple[int, int]:
        return la.inertia(self.gram)

    @property
    def is_definite(self) -> bool:
        p, m = self.signature
        return p == 0 or m == 0

    def scaled(self, s: int) -> "Lattice":
        if s == 0:
            raise LatticeError("scale must be nonzero")
        return Lattice(la.scale(self.gram, s), _scaled_label(self.label, s))

    def name(self) -> str:
        return self.label or f"rank-{self.rank} lattice"

    def __repr__(self):
        return f"Lattice({self.name()!r}, rank={self.rank}, det={self.det})"


def _scaled_label(label, s):
    if label is None:
        return None
    return f"{label}({s})"


def inner(L: Lattice, v: Sequence[int], w: Sequence[int]) -> int:
    if len(v) != L.rank or len(w) != L.rank:
        raise LatticeError(f"vector length does not match rank {L.rank}")
    return la.dot(v, la.matvec(L.gram, w))


def norm(L: Lattice, v: Sequence[int]) -> int:
    return inner(L, v, v)


def signature(L: Lattice) -> Tuple[int, int]:
    return L.signature


def direct_sum(*lats: Lattice) -> Lattice:
    labels = [x.label for x in lats]
    label = "+".join(labels) if all(labels) else None
    return Lattice(la.block_diag(*(x.gram for x in lats)), label)


# ---------------------------------------------------------------------------
# catalog

def cartan(kind: str, n: int) -> IntMatrix:
    """Cartan matrix of a simply laced root system, Bourbaki node order."""
    edges = []
    if kind == "A":
        if n < 1:
            raise LatticeError("A_n needs n >= 1")
        edges = [(i, i + 1) for i in range(1, n)]
    elif kind == "D":
        if n < 4:
            raise LatticeError("D_n needs n >= 4")
        edges = [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)]
    elif kind == "E":
        if n not in (6, 7, 8):
            raise LatticeError("E_n needs n in {6, 7, 8}")
        edges = [(1, 3), (3, 4), (2, 4)] + [(i, i + 1) for i in range(4, n)]
    else:
        raise LatticeError(f"unknown root system {kind}")
    G = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for a, b in edges:
        G[a - 1][b - 1] = G[b - 1][a - 1] = -1
    return tuple(map(tuple, G))


_TERM = re.compile(
    r"""^(?:
        (?P<u>U)(?:\((?P<us>-?\d+)\))? |
        (?P<ade>[ADE])(?P<n>\d+)(?:\((?P<s>-?\d+)\))? |
        <(?P<d>-?\d+)>
    )(?:\^(?P<pow>\d+))?$""",
    re.X,
)


def _split_terms(text: str):
    terms, depth, cur = [], 0, ""
    for ch in text:
        if ch in "(<":
            depth += 1
        elif ch in ")>":
            depth -= 1
        if ch == "+" and depth == 0:
            terms.append(cur)
            cur = ""
        else:
            cur += ch
    terms.append(cur)
    return terms


def catalog(spec: str) -> Lattice:
    """Build a lattice from the mini-language.

    Terms are ``U``, ``U(n)``, ``An(s)``, ``Dn(s)``, ``En(s)`` and ``<n>``
    joined by ``+``; a term may carry a repetition suffix ``^k``.
    ``X(s)`` multiplies the Gram matrix of ``X`` by ``s``.
    """
    text = re.sub(r"\s+", "", spec)
    if not text:
        raise LatticeError("empty lattice spec")
    blocks = []
    for term in _split_terms(text):
        m = _TERM.match(term)
        if not m:
            raise LatticeError(f"cannot parse lattice term {term!r}")
        if m["u"]:
            s = int(m["us"]) if m["us"] else 1
            gram = ((0, s), (s, 0))
        elif m["ade"]:
            s = int(m["s"]) if m["s"] else 1
            gram = la.scale(cartan(m["ade"], int(m["n"])), s)
        else:
            s = int(m["d"])
            gram = ((s,),)
        if s == 0:
            raise LatticeError("scale 0 is not allowed")
        blocks.extend([gram] * int(m["pow"] or 1))
    return Lattice(la.block_diag(*blocks), text)


def k3_lattice() -> Lattice:
    return catalog("U^3+E8(-1)^2")


def load_lattice(source) -> Lattice:
    """Lattice from a spec string, ``@file.json``, a path, or a JSON dict."""
    if isinstance(source, dict):
        return Lattice(la.as_int_matrix(source["gram"]), source.get("label"))
    if isinstance(source, Path):
        return load_lattice(json.loads(source.read_text()))
    if isinstance(source, str) and source.startswith("@"):
        return load_lattice(Path(source[1:]))
    if isinstance(source, (list, tuple)):
        return Lattice(la.as_int_matrix(source))
    return catalog(source)


def lattice_to_json(L: Lattice) -> dict:
    out = {"gram": [list(r) for r in L.gram]}
    if L.label is not None:
        out["label"] = L.label
    return out


# ---------------------------------------------------------------------------
# short vectors


def _fp_decomposition(Q):
    """Fincke-Pohst quadratic completion over Q.

    Returns ``q`` with ``Q(x) = sum_i q[i][i] * (x_i + sum_{j>i} q[i][j] x_j)^2``.
    """
    n = len(Q)
    q = [[Fraction(x) for x in r] for r in Q]
    for i in range(n):
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return q


def _integer_window(c: Fraction, r: Fraction):
    """Integers t with (t + c)^2 <= r, in increasing order."""
    if r < 0:
        return range(0)
    a = -c
    t0 = a.numerator // a.denominator
    lo = t0 + 1
    while (lo - 1 + c) ** 2 <= r:
        lo -= 1
    hi = t0
    while (hi + 1 + c) ** 2 <= r:
        hi += 1
    if lo > hi:
        return range(0)
    return range(lo, hi + 1)


def short_vectors(gram, bound) -> list:
    """All integer x with x^T·gram·x <= bound for positive definite gram."""
    n = len(gram)
    q = _fp_decomposition(gram)
    bound = Fraction(bound)
    out = []
    x = [0] * n

    def rec(i, remaining):
        c = sum((q[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        for t in _integer_window(c, remaining / q[i][i]):
            x[i] = t
            rest = remaining - q[i][i] * (t + c) ** 2
            if i == 0:
                out.append(tuple(x))
            else:
                rec(i - 1, rest)
        x[i] = 0

    if n:
        rec(n - 1, bound)
    return out


def vectors_of_norm(L: Lattice, n: int) -> list:
    """Sorted list of all v with (v, v) = n in a definite lattice."""
    p, m = L.signature
    if p and m:
        raise LatticeError("vectors_of_norm needs a definite lattice")
    sign = 1 if m == 0 else -1
    if sign * n < 0:
        raise LatticeError(f"norm {n} has the wrong sign for this lattice")
    if n == 0:
        return [(0,) * L.rank]
    G = la.scale(L.gram, sign)
    N = sign * n
    hits = [v for v in short_vectors(G, N) if la.dot(v, la.matvec(G, v)) == N]
    return sorted(hits)
