"""Primitive sublattices of an ambient lattice: saturation and orthogonal complements."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import prod

from . import linalg as la
from .lattice import Lattice


class SublatticeError(ValueError):
    pass


@dataclass(frozen=True)
class PrimitiveEmbedding:
    """A primitive sublattice given by basis rows in ambient coordinates."""

    ambient: Lattice
    basis: la.IntMatrix

    def __post_init__(self):
        rows = la.as_int_matrix(self.basis) if self.basis else ()
        object.__setattr__(self, "basis", rows)
        if rows and any(len(r) != self.ambient.rank for r in rows):
            raise SublatticeError("basis rows must have ambient length")
        if rows and sublattice_index(rows) != 1:
            raise SublatticeError("rows do not span a primitive sublattice")

    @property
    def rank(self) -> int:
        return len(self.basis)

    @cached_property
    def induced_gram(self) -> la.IntMatrix:
        if not self.basis:
            return ()
        B = self.basis
        return la.matmul(la.matmul(B, self.ambient.gram), la.transpose(B))

    @property
    def lattice(self) -> Lattice:
        return Lattice(self.induced_gram)

    def to_ambient(self, coords):
        """Ambient coordinates of a vector given in sublattice coordinates."""
        return la.vecmat(coords, self.basis) if self.basis else (0,) * self.ambient.rank

    def contains(self, v) -> bool:
        if not self.basis:
            return not any(v)
        return la.rank(list(self.basis) + [tuple(v)]) == self.rank

    def coords_of(self, v):
        """Sublattice coordinates of an ambient vector lying in the sublattice."""
        H, U = la.hnf(list(self.basis) + [tuple(v)])
        # the appended row reduces to zero; its U row gives a relation
        for Hrow, Urow in zip(H, U):
            if not any(Hrow) and Urow[-1] != 0:
                if abs(Urow[-1]) != 1:
                    raise SublatticeError("vector is not in the sublattice")
                s = -Urow[-1]
                return tuple(s * c for c in Urow[:-1])
        raise SublatticeError("vector is not in the sublattice")


def sublattice_index(rows) -> int:
    """Index of the row span inside its saturation; raises on dependent rows."""
    if not rows:
        return 1
    diag = la.snf(rows).diagonal
    if len(diag) < len(rows) or any(d == 0 for d in diag):
        raise SublatticeError("rows are linearly dependent")
    return prod(diag)


def saturate(ambient: Lattice, rows) -> PrimitiveEmbedding:
    """Primitive closure of the span of ``rows``, HNF-reduced."""
    rows = [tuple(int(x) for x in r) for r in rows]
    if not rows:
        return PrimitiveEmbedding(ambient, ())
    sublattice_index(rows)
    s = la.snf(rows)
    k = len(rows)
    Vinv = la.to_int(la.inverse_rational(s.V))
    return PrimitiveEmbedding(ambient, la.hnf_rows(Vinv[:k]))


def orth_complement(E: PrimitiveEmbedding) -> PrimitiveEmbedding:
    """Saturated sublattice of vectors orthogonal to ``E``."""
    n = E.ambient.rank
    if not E.basis:
        return PrimitiveEmbedding(E.ambient, la.identity(n))
    if la.det_exact(E.induced_gram) == 0:
        raise SublatticeError("degenerate induced form")
    K = la.kernel_basis(la.matmul(E.basis, E.ambient.gram))
    return PrimitiveEmbedding(E.ambient, K)


def orth_complement_of_rows(ambient: Lattice, rows) -> PrimitiveEmbedding:
    return orth_complement(saturate(ambient, rows))


def divisibility(ambient: Lattice, v) -> int:
    """Positive generator of the ideal ``(v, ambient)``."""
    if not any(v):
        raise SublatticeError("divisibility of the zero vector")
    return la.vector_gcd(la.matvec(ambient.gram, v))
