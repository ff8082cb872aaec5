"""Overlattices from gluing data and lifting of isometries across a glue."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, NamedTuple, Optional, Tuple

from . import linalg as la
from .discform import (
    DiscMap,
    FiniteQuadraticForm,
    anti_isometry_search,
    discriminant_form,
    induced_action,
    mod2,
)
from .isometry import Isometry
from .lattice import Lattice, direct_sum
from .sublattice import (  # re-exported
    PrimitiveEmbedding,
    SublatticeError,
    orth_complement,
    saturate,
    sublattice_index,
)

__all__ = [
    "GlueError",
    "GluingData",
    "Overlattice",
    "PrimitiveEmbedding",
    "SublatticeError",
    "Decomposition",
    "cyclic_graphs",
    "decompose",
    "glue_basis",
    "lift_isometry",
    "orth_complement",
    "overlattice_from_glue",
    "saturate",
    "sublattice_index",
    "unimodular_embedding_search",
]


class GlueError(ValueError):
    pass


@dataclass(frozen=True)
class GluingData:
    """Graph subgroup of ``D_S ⊕ D_T`` given by generator pairs ``(h, γ(h))``."""

    S_form: FiniteQuadraticForm
    T_form: FiniteQuadraticForm
    pairs: Tuple[Tuple[Tuple[int, ...], Tuple[int, ...]], ...]

    def __post_init__(self):
        pairs = tuple((self.S_form.reduce(x), self.T_form.reduce(y)) for x, y in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        gamma = self.gamma
        if len(set(gamma.values())) != len(gamma):
            raise GlueError("glue map is not injective")
        for x, y in gamma.items():
            if mod2(self.S_form.q(x) + self.T_form.q(y)) != 0:
                raise GlueError("glue graph is not isotropic")

    @classmethod
    def trivial(cls, S: Lattice, T: Lattice) -> "GluingData":
        return cls(discriminant_form(S), discriminant_form(T), ())

    @classmethod
    def from_map(cls, gamma: DiscMap) -> "GluingData":
        """Full-graph glue from an isomorphism ``D_S -> D_T``."""
        n = gamma.source.ngens
        gens = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        return cls(gamma.source, gamma.target, tuple((g, gamma(g)) for g in gens))

    @cached_property
    def gamma(self) -> Dict[Tuple[int, ...], Tuple[int, ...]]:
        """The map ``H -> D_T`` as a dict over all of ``H``."""
        FS, FT = self.S_form, self.T_form
        out = {FS.zero(): FT.zero()}
        frontier = [(FS.zero(), FT.zero())]
        while frontier:
            nxt = []
            for x, y in frontier:
                for gx, gy in self.pairs:
                    a, b = FS.add(x, gx), FT.add(y, gy)
                    if a in out:
                        if out[a] != b:
                            raise GlueError("graph is not the graph of a map on H")
                        continue
                    out[a] = b
                    nxt.append((a, b))
            frontier = nxt
        return dict(sorted(out.items()))

    @property
    def H(self) -> List[Tuple[int, ...]]:
        return list(self.gamma)

    @property
    def order(self) -> int:
        return len(self.gamma)


class Overlattice(NamedTuple):
    lattice: Lattice
    emb_S: PrimitiveEmbedding
    emb_T: PrimitiveEmbedding


def glue_basis(over: Overlattice) -> la.RatMatrix:
    """Overlattice basis rows in ``S ⊕ T`` coordinates."""
    C = list(over.emb_S.basis) + list(over.emb_T.basis)
    return la.inverse_rational(C)


def overlattice_from_glue(S: Lattice, T: Lattice, g: GluingData) -> Overlattice:
    """Overlattice of ``S ⊕ T`` generated by lifts of the glue graph."""
    FS, FT = g.S_form, g.T_form
    if FS.gram != S.gram or FT.gram != T.gram:
        raise GlueError("gluing data does not match the lattices")
    n = S.rank + T.rank
    rows = [tuple(Fraction(x) for x in r) for r in la.identity(n)]
    for x, y in g.pairs:
        rows.append(tuple(FS.lift(x)) + tuple(FT.lift(y)))
    N = la.common_denominator(rows)
    H = la.hnf_rows([tuple(int(v * N) for v in r) for r in rows])
    B = tuple(tuple(Fraction(v, N) for v in r) for r in H)
    G = direct_sum(S, T).gram
    gram = la.matmul(la.matmul(B, G), la.transpose(B))
    if not la.is_integral(gram):
        raise GlueError("glue graph gives a non-integral overlattice")
    gram = la.to_int(gram)
    if any(gram[i][i] % 2 for i in range(n)):
        raise GlueError("glue graph gives an odd overlattice")
    over = Lattice(gram)
    Binv = la.inverse_rational(B)  # rows: S⊕T basis in overlattice coordinates
    C = la.to_int(Binv)
    emb_S = PrimitiveEmbedding(over, C[: S.rank]) if S.rank else PrimitiveEmbedding(over, ())
    emb_T = PrimitiveEmbedding(over, C[S.rank:]) if T.rank else PrimitiveEmbedding(over, ())
    return Overlattice(over, emb_S, emb_T)


def lift_isometry(rhoS: Isometry, rhoT: Isometry, g: GluingData,
                  over: Optional[Overlattice] = None) -> Optional[Isometry]:
    """Lift ``rhoS ⊕ rhoT`` to the overlattice, or ``None`` if the glue condition fails.

    Raises ``GlueError`` when the action of ``rhoS`` does not preserve ``H``.
    """
    S, T = rhoS.lattice, rhoT.lattice
    aS = induced_action(rhoS)
    aT = induced_action(rhoT)
    gamma = g.gamma
    H = set(gamma)
    if {aS(h) for h in H} != H:
        raise GlueError("the action on D_S does not preserve H")
    if any(gamma[aS(h)] != aT(gamma[h]) for h in H):
        return None
    if over is None:
        over = overlattice_from_glue(S, T, g)
    B = glue_basis(over)
    M = la.block_diag(rhoS.matrix, rhoT.matrix)
    Bt = la.transpose(B)
    C = la.matmul(la.matmul(la.inverse_rational(Bt), M), Bt)
    if not la.is_integral(C):
        raise GlueError("lift is not integral although the glue condition holds")
    return Isometry(over.lattice, la.to_int(C))


def cyclic_graphs(FS: FiniteQuadraticForm, FT: FiniteQuadraticForm, k: int) -> List[GluingData]:
    """All isotropic glue graphs generated by one pair of elements of order ``k``."""
    out, seen = [], set()
    for x in FS.elements():
        if FS.element_order(x) != k:
            continue
        for y in FT.elements():
            if FT.element_order(y) != k or mod2(FS.q(x) + FT.q(y)) != 0:
                continue
            try:
                g = GluingData(FS, FT, ((x, y),))
            except GlueError:
                continue
            key = tuple(sorted(g.gamma.items()))
            if key not in seen:
                seen.add(key)
                out.append(g)
    return out


def unimodular_embedding_search(A: Lattice, B: Lattice, target_sig=None) -> Overlattice:
    """Even unimodular overlattice of ``A ⊕ B`` from a full-graph anti-isometry."""
    if target_sig is not None:
        pa, ma = A.signature
        pb, mb = B.signature
        if (pa + pb, ma + mb) != tuple(target_sig):
            raise GlueError("signatures do not add up to the target")
    FA, FB = discriminant_form(A), discriminant_form(B)
    if FA.order != FB.order:
        raise GlueError(f"discriminant orders differ: {FA.order} vs {FB.order}")
    gamma = anti_isometry_search(FA, FB)
    if gamma is None:
        raise GlueError("no anti-isometry between the discriminant forms")
    over = overlattice_from_glue(A, B, GluingData.from_map(gamma))
    if abs(over.lattice.det) != 1 or not over.lattice.is_even:
        raise GlueError("glued lattice is not even unimodular")
    return over


class Decomposition(NamedTuple):
    sub: Lattice
    complement: Lattice
    glue: GluingData
    over: Overlattice


def decompose(E: PrimitiveEmbedding) -> Decomposition:
    """Write the ambient lattice as an overlattice of ``E ⊕ E^⊥``.

    The glue graph is read off from the orthogonal projections of the ambient
    basis vectors onto both summands.
    """
    perp = orth_complement(E)
    G = E.ambient.gram
    S, T = E.lattice, perp.lattice
    FS, FT = discriminant_form(S), discriminant_form(T)
    BS, BT = E.basis, perp.basis
    GS_inv = la.inverse_rational(S.gram)
    GT_inv = la.inverse_rational(T.gram)
    pairs = set()
    for k in range(E.ambient.rank):
        col = [row[k] for row in G]  # pairings of e_k with the ambient basis
        a = la.matvec(GS_inv, la.matvec(BS, col))
        b = la.matvec(GT_inv, la.matvec(BT, col))
        x, y = FS.coords(a), FT.coords(b)
        if any(x) or any(y):
            pairs.add((x, y))
    g = GluingData(FS, FT, tuple(sorted(pairs)))
    over = overlattice_from_glue(S, T, g)
    if abs(over.lattice.det) != abs(E.ambient.det):
        raise GlueError("recovered overlattice has the wrong determinant")
    return Decomposition(S, T, g, over)
