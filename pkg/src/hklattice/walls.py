"""K3^[2]-type lattices: the ambient lattice, Hilbert-square Picard lattices
with their degree-6 polarization, divisibility and numerical wall classes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

from . import linalg as la
from .glue import GlueError, Overlattice, unimodular_embedding_search
from .isometry import Isometry, fixed_sublattice
from .lattice import Lattice, catalog, direct_sum, inner, k3_lattice
from .sublattice import PrimitiveEmbedding, SublatticeError
from .sublattice import divisibility as _ambient_divisibility

DEFAULT_BOUND = 6
DEFAULT_SQUARES = (-2, -10)
MAX_BOX = 10**7
K3_SIGNATURE = (3, 19)


class WallError(ValueError):
    pass


def k3sq_lattice() -> Lattice:
    """``U^3 ⊕ E8(-1)^2 ⊕ <-2>``: rank 23, signature (3, 20), det 2."""
    return catalog("U^3+E8(-1)^2+<-2>")


@dataclass(frozen=True)
class PolarizedPicard:
    pic: Lattice
    epsilon_index: int
    x_k3: Tuple[int, ...]
    theta: Tuple[int, ...]
    ambient: PrimitiveEmbedding
    k3_glue: Optional[Overlattice] = None

    @property
    def epsilon(self) -> Tuple[int, ...]:
        return tuple(int(i == self.epsilon_index) for i in range(self.pic.rank))

    @property
    def L(self) -> Lattice:
        return self.ambient.ambient

    def to_ambient(self, v) -> Tuple[int, ...]:
        return tuple(self.ambient.to_ambient(v))


def hilbert_square_picard(picK3: Lattice, x: Sequence[int], transcendental: Lattice) -> PolarizedPicard:
    """``picK3 ⊕ <-2>`` with ``θ = 2x - 3ε``, placed inside ``L_K3 ⊕ <-2>``.

    The K3 part is glued to ``transcendental`` into an even unimodular lattice
    of signature (3, 19) and the class ``ε`` spans the extra ``<-2>``.
    """
    x = tuple(int(c) for c in x)
    if len(x) != picK3.rank:
        raise WallError("class length does not match the Picard rank")
    if inner(picK3, x, x) != 6:
        raise WallError(f"class has square {inner(picK3, x, x)}, expected 6")
    try:
        over = unimodular_embedding_search(picK3, transcendental, K3_SIGNATURE)
    except GlueError as exc:
        raise WallError(f"K3 embedding search failed: {exc}") from exc
    lam = over.lattice
    L = direct_sum(lam, catalog("<-2>"))
    n = picK3.rank
    rows = [tuple(r) + (0,) for r in over.emb_S.basis]
    rows.append((0,) * lam.rank + (1,))
    emb = PrimitiveEmbedding(L, rows)
    pic = direct_sum(picK3, catalog("<-2>"))
    if emb.induced_gram != pic.gram:
        raise WallError("embedding does not reproduce the Picard Gram matrix")
    theta = tuple(2 * c for c in x) + (-3,)
    return PolarizedPicard(pic, n, x, theta, emb, over)


def divisibility(v: Sequence[int], E: PrimitiveEmbedding) -> int:
    """Divisibility in the ambient lattice of a vector given in sublattice coordinates."""
    if not any(v):
        raise WallError("divisibility of the zero vector")
    return _ambient_divisibility(E.ambient, E.to_ambient(v))


def is_wall_divisor(v: Sequence[int], E: PrimitiveEmbedding) -> bool:
    """Numerical wall class: square -2, or square -10 with divisibility 2."""
    if not any(v):
        raise WallError("the zero vector is not a wall class")
    sq = la.dot(v, la.matvec(E.induced_gram, v))
    if sq == -2:
        return True
    return sq == -10 and divisibility(v, E) == 2


def box_shells(n: int, bound: int) -> Iterator[Tuple[int, ...]]:
    """Nonzero vectors with entries in ``[-bound, bound]``.

    Ordered by L1 norm, then in decreasing lexicographic order.
    """
    def shell(k, s):
        if k == 0:
            if s == 0:
                yield ()
            return
        top = min(bound, s)
        for c in range(top, -top - 1, -1):
            for rest in shell(k - 1, s - abs(c)):
                yield (c,) + rest

    for s in range(1, n * bound + 1):
        yield from shell(n, s)


@dataclass(frozen=True)
class WallWitness:
    wall: Tuple[int, ...]
    square: int
    divisibility: int
    invariant_class: Tuple[int, ...]
    invariant_square: int

    def to_json(self) -> dict:
        return {
            "wall": list(self.wall),
            "square": self.square,
            "divisibility": self.divisibility,
            "invariant_class": list(self.invariant_class),
            "invariant_square": self.invariant_square,
        }


def _check_box(n: int, bound: int):
    if bound < 1:
        raise WallError("bound must be positive")
    if (2 * bound + 1) ** n > MAX_BOX:
        raise WallError(f"coefficient box of rank {n} and bound {bound} is too large")


def kgen_obstruction(P: PolarizedPicard, f: Isometry, bound: int = DEFAULT_BOUND,
                     squares: Sequence[int] = DEFAULT_SQUARES) -> List[Optional[WallWitness]]:
    """For each requested square, the first non-fixed wall class orthogonal to
    an invariant class of positive square (pairing positively with θ).

    Entries are ``None`` when nothing is found inside the coefficient box.
    """
    if f.lattice != P.pic:
        raise WallError("isometry does not act on this Picard lattice")
    G = P.pic.gram
    n = P.pic.rank
    fixed = fixed_sublattice(f).basis
    results: List[Optional[WallWitness]] = [None] * len(squares)
    if f.matrix == la.identity(n):
        return results
    _check_box(n, bound)
    theta_pair = la.matvec(G, P.theta)
    inv_gram = la.matmul(la.matmul(fixed, G), la.transpose(fixed))
    inv_candidates = []
    for c in box_shells(len(fixed), bound):
        w = la.vecmat(c, fixed)
        sq = la.dot(c, la.matvec(inv_gram, c))
        if sq > 0 and la.dot(w, theta_pair) > 0:
            inv_candidates.append((w, sq))
    pending = {s: i for i, s in enumerate(squares)}
    for v in box_shells(n, bound):
        if not pending:
            break
        sq = la.dot(v, la.matvec(G, v))
        if sq not in pending:
            continue
        if tuple(f(v)) == v:
            continue
        div = divisibility(v, P.ambient)
        if sq == -10 and div != 2:
            continue
        if sq != -2 and sq != -10:
            continue
        gv = la.matvec(G, v)
        for w, wsq in inv_candidates:
            if la.dot(w, gv) == 0:
                results[pending.pop(sq)] = WallWitness(v, sq, div, tuple(w), wsq)
                break
    return results


def verify_witness(P: PolarizedPicard, f: Isometry, wit: WallWitness) -> bool:
    G = P.pic.gram
    w, mu = wit.invariant_class, wit.wall
    return (
        la.dot(w, la.matvec(G, w)) > 0
        and tuple(f(w)) == tuple(w)
        and la.dot(mu, la.matvec(G, w)) == 0
        and is_wall_divisor(mu, P.ambient)
        and tuple(f(mu)) != tuple(mu)
    )


def wall_classes(P: PolarizedPicard, bound: int = DEFAULT_BOUND,
                 squares: Sequence[int] = DEFAULT_SQUARES) -> List[Tuple[Tuple[int, ...], int]]:
    """All numerical wall classes in the coefficient box (one of each ± pair)."""
    n = P.pic.rank
    _check_box(n, bound)
    G = P.pic.gram
    out = []
    for v in box_shells(n, bound):
        first = next(c for c in v if c)
        if first < 0:
            continue
        sq = la.dot(v, la.matvec(G, v))
        if sq in squares and is_wall_divisor(v, P.ambient):
            out.append((v, sq))
    return out


__all__ = [
    "DEFAULT_BOUND",
    "DEFAULT_SQUARES",
    "PolarizedPicard",
    "WallError",
    "WallWitness",
    "box_shells",
    "divisibility",
    "hilbert_square_picard",
    "is_wall_divisor",
    "k3_lattice",
    "k3sq_lattice",
    "kgen_obstruction",
    "verify_witness",
    "wall_classes",
]
