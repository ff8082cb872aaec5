"""Discriminant groups ``L*/L`` of even lattices as finite quadratic forms."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import Optional, Tuple

from . import linalg as la
from .lattice import Lattice

Element = Tuple[int, ...]

DEFAULT_SEARCH_CAP = 10**4


class DiscFormError(ValueError):
    pass


def mod2(x) -> Fraction:
    x = Fraction(x)
    return x - 2 * (x.numerator // (2 * x.denominator))


def mod1(x) -> Fraction:
    x = Fraction(x)
    return x - x.numerator // x.denominator


@dataclass(frozen=True)
class FiniteQuadraticForm:
    """A finite abelian group ``⊕ Z/d_i`` with a Q/2Z-valued quadratic form.

    Elements are coordinate tuples reduced into ``[0, d_i)``.  When the form
    comes from a lattice, ``generators`` holds rational dual-lattice lifts of
    the cyclic generators and ``coord_rows`` maps a dual vector ``x`` to its
    coordinates via ``coord_rows · gram · x``.
    """

    cyclic_orders: Tuple[int, ...]
    q_table: Tuple[Fraction, ...]
    b_table: Tuple[Tuple[Fraction, ...], ...]
    gram: Optional[la.IntMatrix] = None
    generators: Optional[la.RatMatrix] = None
    coord_rows: Optional[la.IntMatrix] = field(default=None, repr=False)

    @property
    def order(self) -> int:
        return prod(self.cyclic_orders)

    @property
    def ngens(self) -> int:
        return len(self.cyclic_orders)

    @property
    def is_trivial(self) -> bool:
        return not self.cyclic_orders

    def zero(self) -> Element:
        return (0,) * self.ngens

    def reduce(self, c) -> Element:
        return tuple(int(x) % d for x, d in zip(c, self.cyclic_orders))

    def add(self, a, b) -> Element:
        return self.reduce(x + y for x, y in zip(a, b))

    def neg(self, a) -> Element:
        return self.reduce(-x for x in a)

    def mul(self, k: int, a) -> Element:
        return self.reduce(k * x for x in a)

    def elements(self):
        return itertools.product(*(range(d) for d in self.cyclic_orders))

    def element_order(self, a) -> int:
        k = 1
        while any(self.mul(k, a)):
            k += 1
        return k

    def q(self, a) -> Fraction:
        n = self.ngens
        val = sum((a[i] * a[i] * self.q_table[i] for i in range(n)), Fraction(0))
        for i in range(n):
            for j in range(i + 1, n):
                val += 2 * a[i] * a[j] * self.b_table[i][j]
        return mod2(val)

    def b(self, a, c) -> Fraction:
        n = self.ngens
        val = Fraction(0)
        for i in range(n):
            if a[i]:
                for j in range(n):
                    if c[j]:
                        val += a[i] * c[j] * self.b_table[i][j]
        return mod1(val)

    # lattice-backed helpers

    def _need_lattice(self):
        if self.gram is None:
            raise DiscFormError("form is not attached to a lattice")

    def is_dual_vector(self, x) -> bool:
        self._need_lattice()
        return all(Fraction(y).denominator == 1 for y in la.matvec(self.gram, x))

    def coords(self, x) -> Element:
        """Coordinates of the class of a dual-lattice vector ``x``."""
        self._need_lattice()
        y = la.matvec(self.gram, x)
        if any(Fraction(t).denominator != 1 for t in y):
            raise DiscFormError(f"{x} is not in the dual lattice")
        return self.reduce(la.matvec(self.coord_rows, [int(t) for t in y]))

    def lift(self, a) -> Tuple[Fraction, ...]:
        """Canonical rational lift of an element."""
        self._need_lattice()
        n = len(self.gram)
        v = [Fraction(0)] * n
        for k, g in zip(a, self.generators):
            for i in range(n):
                v[i] += k * g[i]
        return tuple(v)

    def q_of_vector(self, x) -> Fraction:
        self._need_lattice()
        return mod2(la.dot(x, la.matvec(self.gram, x)))


def discriminant_form(L: Lattice) -> FiniteQuadraticForm:
    """Discriminant form of an even lattice from the Smith form of its Gram."""
    if not L.is_even:
        raise DiscFormError("discriminant forms are only supported for even lattices")
    return _discriminant_form(L.gram)


@lru_cache(maxsize=256)
def _discriminant_form(G) -> FiniteQuadraticForm:
    s = la.snf(G)
    diag = s.diagonal
    idx = [i for i, d in enumerate(diag) if d > 1]
    orders = tuple(diag[i] for i in idx)
    n = len(G)
    gens = tuple(tuple(Fraction(s.V[r][i], diag[i]) for r in range(n)) for i in idx)
    coord_rows = tuple(s.U[i] for i in idx)
    q_table = tuple(mod2(la.dot(g, la.matvec(G, g))) for g in gens)
    b_table = tuple(tuple(mod1(la.dot(g, la.matvec(G, h))) for h in gens) for g in gens)
    return FiniteQuadraticForm(orders, q_table, b_table, G, gens, coord_rows)


def form_from_tables(orders, q_table, b_table=None) -> FiniteQuadraticForm:
    """Abstract finite quadratic form, not attached to any lattice."""
    orders = tuple(int(d) for d in orders)
    q_table = tuple(mod2(x) for x in q_table)
    n = len(orders)
    if b_table is None:
        b_table = [[mod1(q_table[i] / 2) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    b_table = tuple(tuple(mod1(x) for x in r) for r in b_table)
    return FiniteQuadraticForm(orders, q_table, b_table)


@dataclass(frozen=True)
class DiscMap:
    """Group homomorphism between finite quadratic forms, given on generators."""

    source: FiniteQuadraticForm
    target: FiniteQuadraticForm
    images: Tuple[Element, ...]

    def __call__(self, a) -> Element:
        out = self.target.zero()
        for k, img in zip(a, self.images):
            if k:
                out = self.target.add(out, self.target.mul(k, img))
        return out

    def compose(self, other: "DiscMap") -> "DiscMap":
        """``self ∘ other``."""
        gens = _unit_vectors(other.source)
        return DiscMap(other.source, self.target, tuple(self(other(g)) for g in gens))

    def is_bijective(self) -> bool:
        if self.source.order != self.target.order:
            return False
        return len({self(a) for a in self.source.elements()}) == self.target.order

    def scales_form(self, sign: int) -> bool:
        """True if ``q_target(f(x)) = sign * q_source(x)`` for every x."""
        return all(
            self.target.q(self(a)) == mod2(sign * self.source.q(a))
            for a in self.source.elements()
        )


DiscAutomorphism = DiscMap


def _unit_vectors(F: FiniteQuadraticForm):
    n = F.ngens
    return [tuple(int(i == j) for j in range(n)) for i in range(n)]


def identity_map(F: FiniteQuadraticForm) -> DiscMap:
    return DiscMap(F, F, tuple(_unit_vectors(F)))


def induced_action(f) -> DiscAutomorphism:
    """Action of a lattice isometry on the discriminant group.

    ``f`` carries ``lattice`` and ``matrix`` (columns are basis images).
    """
    L, M = f.lattice, f.matrix
    if la.matmul(la.matmul(la.transpose(M), L.gram), M) != L.gram:
        raise DiscFormError("matrix is not an isometry of the lattice")
    F = discriminant_form(L)
    images = tuple(F.coords(la.matvec(M, g)) for g in F.generators)
    return DiscMap(F, F, images)


def is_trivial_action(a: DiscMap) -> bool:
    return all(a(g) == g for g in _unit_vectors(a.source))


def _form_map_search(F1, F2, sign, cap):
    if F1.order != F2.order:
        return None
    if F1.order > cap or F2.order > cap:
        raise DiscFormError(f"group order exceeds search cap {cap}")
    n = F1.ngens
    targets = list(F2.elements())
    pools = []
    for i in range(n):
        want = mod2(sign * F1.q_table[i])
        d = F1.cyclic_orders[i]
        pool = [
            y for y in targets
            if not any(F2.mul(d, y)) and F2.q(y) == want
        ]
        pools.append(pool)
    chosen = []

    def rec(i):
        if i == n:
            m = DiscMap(F1, F2, tuple(chosen))
            return m if m.is_bijective() else None
        for y in pools[i]:
            if all(F2.b(chosen[j], y) == mod1(sign * F1.b_table[j][i]) for j in range(i)):
                chosen.append(y)
                hit = rec(i + 1)
                if hit is not None:
                    return hit
                chosen.pop()
        return None

    return rec(0)


def anti_isometry_search(F1, F2, cap: int = DEFAULT_SEARCH_CAP) -> Optional[DiscMap]:
    """First (lexicographic) isomorphism ``γ`` with ``q2(γx) = -q1(x)``."""
    return _form_map_search(F1, F2, -1, cap)


def isometry_search(F1, F2, cap: int = DEFAULT_SEARCH_CAP) -> Optional[DiscMap]:
    """First (lexicographic) isomorphism ``γ`` with ``q2(γx) = q1(x)``."""
    return _form_map_search(F1, F2, 1, cap)


def forms_isomorphic(F1, F2, cap: int = DEFAULT_SEARCH_CAP) -> bool:
    return isometry_search(F1, F2, cap) is not None


def describe(F: FiniteQuadraticForm) -> str:
    if F.is_trivial:
        return "trivial"
    return " + ".join(f"Z/{d}" for d in F.cyclic_orders)
