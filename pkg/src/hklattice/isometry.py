"""Isometries of lattices and orthogonal groups of small definite lattices.

Matrices act on column coordinate vectors: column ``j`` holds the image of
basis vector ``j``.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import linalg as la
from .lattice import Lattice, load_lattice, vectors_of_norm
from .sublattice import PrimitiveEmbedding, orth_complement, saturate

CAP_ENV = "HKLATTICE_CAP"
DEFAULT_ELEMENT_CAP = 200_000
MAX_ORDER_SCAN = 120


class IsometryError(ValueError):
    pass


class CapExceededError(IsometryError):
    pass


def default_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    if raw:
        try:
            value = int(raw)
        except ValueError as exc:
            raise IsometryError(f"{CAP_ENV} must be an integer") from exc
        if value <= 0:
            raise IsometryError(f"{CAP_ENV} must be positive")
        return value
    return DEFAULT_ELEMENT_CAP


def verify_isometry(L: Lattice, M) -> bool:
    M = la.as_int_matrix(M)
    if la.shape(M) != (L.rank, L.rank):
        raise IsometryError(f"matrix must be {L.rank}x{L.rank}")
    if la.matmul(la.matmul(la.transpose(M), L.gram), M) != L.gram:
        return False
    return abs(la.det_exact(M)) == 1


@dataclass(frozen=True)
class Isometry:
    lattice: Lattice
    matrix: la.IntMatrix

    def __post_init__(self):
        M = la.as_int_matrix(self.matrix)
        object.__setattr__(self, "matrix", M)
        if not verify_isometry(self.lattice, M):
            raise IsometryError("matrix does not preserve the Gram matrix")

    @classmethod
    def identity(cls, L: Lattice) -> "Isometry":
        return cls(L, la.identity(L.rank))

    @classmethod
    def from_images(cls, L: Lattice, images: Sequence[Sequence[int]]) -> "Isometry":
        """Build from the list of basis-vector images (each in L coordinates)."""
        return cls(L, la.transpose(la.as_int_matrix(images)))

    def __call__(self, v):
        return la.matvec(self.matrix, v)

    def compose(self, other: "Isometry") -> "Isometry":
        """``self ∘ other``."""
        if other.lattice != self.lattice:
            raise IsometryError("isometries live on different lattices")
        return Isometry(self.lattice, la.matmul(self.matrix, other.matrix))

    def inverse(self) -> "Isometry":
        return Isometry(self.lattice, la.to_int(la.inverse_rational(self.matrix)))

    def power(self, k: int) -> "Isometry":
        if k < 0:
            return self.inverse().power(-k)
        return Isometry(self.lattice, la.matpow(self.matrix, k))

    @property
    def char_poly(self) -> la.Poly:
        return la.char_poly(self.matrix)

    def to_json(self) -> dict:
        return {"lattice": {"gram": [list(r) for r in self.lattice.gram]},
                "matrix": [list(r) for r in self.matrix]}


def isometry_from_json(data: dict) -> Isometry:
    L = load_lattice(data["lattice"])
    return Isometry(L, la.as_int_matrix(data["matrix"]))


def order_of(f: Isometry, cap: int = 1000) -> Optional[int]:
    """Least ``k >= 1`` with ``f^k = id``, or ``None`` if that exceeds ``cap``."""
    ident = la.identity(f.lattice.rank)
    P = f.matrix
    for k in range(1, cap + 1):
        if P == ident:
            return k
        P = la.matmul(P, f.matrix)
    return None


def fixed_sublattice(f: Isometry) -> PrimitiveEmbedding:
    n = f.lattice.rank
    K = la.kernel_basis(la.sub(f.matrix, la.identity(n)))
    return saturate(f.lattice, K)


def coinvariant_sublattice(f: Isometry) -> PrimitiveEmbedding:
    return orth_complement(fixed_sublattice(f))


def eigen_multiplicity(f: Isometry, e: int) -> int:
    """Dimension of the ``ζ_e`` eigenspace, via the cyclotomic factorisation."""
    return la.multiplicity(la.char_poly(f.matrix), la.cyclotomic(e))


def is_fixed_point_free(f: Isometry) -> bool:
    return fixed_sublattice(f).rank == 0


# ---------------------------------------------------------------------------
# orthogonal group enumeration


def _definite_sign(L: Lattice) -> int:
    p, m = L.signature
    if p and m:
        raise IsometryError("orthogonal group enumeration needs a definite lattice")
    return 1 if m == 0 else -1


def _backtrack(gram, cands, pair, order, first_range, cap):
    """Enumerate image tuples level by level; returns list of index tuples."""
    n = len(order)
    out = []
    chosen = [0] * n

    def rec(level):
        i = order[level]
        if level == 0:
            pool = first_range
        else:
            mask = np.ones(len(cands[i]), dtype=bool)
            for prev in range(level):
                j = order[prev]
                mask &= pair[j][i][chosen[j]] == gram[j][i]
            pool = np.nonzero(mask)[0]
        for c in pool:
            chosen[i] = int(c)
            if level + 1 == n:
                out.append(tuple(chosen))
                if len(out) > cap:
                    raise CapExceededError(f"orthogonal group exceeds cap {cap}")
            else:
                rec(level + 1)

    if n:
        rec(0)
    else:
        out.append(())
    return out


def _setup(gram):
    L = Lattice(gram)
    sign = _definite_sign(L)
    n = L.rank
    cands = [np.array(vectors_of_norm(L, gram[i][i]), dtype=np.int64).reshape(-1, n) for i in range(n)]
    G = np.array(gram, dtype=np.int64)
    pair = [[cands[j] @ G @ cands[i].T for i in range(n)] for j in range(n)]
    order = sorted(range(n), key=lambda i: (len(cands[i]), i))
    return sign, cands, pair, order


def _worker(args):
    gram, first_chunk, cap = args
    _, cands, pair, order = _setup(gram)
    return _backtrack(gram, cands, pair, order, first_chunk, cap)


@lru_cache(maxsize=32)
def _enumerate(gram, cap: int, workers: int):
    _, cands, pair, order = _setup(gram)
    n = len(gram)
    if n == 0:
        return ((),)
    first = list(range(len(cands[order[0]])))
    if workers > 1 and len(first) > 1:
        chunks = [first[k::workers] for k in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_worker, [(gram, ch, cap) for ch in chunks if ch]))
        idx = [t for part in parts for t in part]
        if len(idx) > cap:
            raise CapExceededError(f"orthogonal group exceeds cap {cap}")
    else:
        idx = _backtrack(gram, cands, pair, order, first, cap)
    mats = []
    for t in idx:
        cols = [cands[i][t[i]] for i in range(n)]
        mats.append(tuple(tuple(int(cols[c][r]) for c in range(n)) for r in range(n)))
    mats.sort()
    return tuple(mats)


@dataclass(frozen=True, eq=False)
class OrthogonalGroup:
    lattice: Lattice
    elements: Tuple[la.IntMatrix, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, M) -> bool:
        return la.as_int_matrix(M) in self.index

    def isometries(self):
        return [Isometry(self.lattice, M) for M in self.elements]

    @cached_property
    def index(self) -> Dict[la.IntMatrix, int]:
        return {M: k for k, M in enumerate(self.elements)}

    @cached_property
    def array(self) -> np.ndarray:
        n = self.lattice.rank
        return np.array(self.elements, dtype=np.int64).reshape(-1, n, n)

    @cached_property
    def reflections(self) -> Tuple[la.IntMatrix, ...]:
        n = self.lattice.rank
        A = self.array
        tr = np.trace(A, axis1=1, axis2=2)
        is_inv = np.all(A @ A == np.eye(n, dtype=np.int64), axis=(1, 2))
        hits = np.nonzero(is_inv & (tr == n - 2))[0]
        return tuple(self.elements[k] for k in hits)

    @cached_property
    def generators(self) -> Tuple[la.IntMatrix, ...]:
        """Reflections plus ``-id``, completed greedily to generate the whole group."""
        n = self.lattice.rank
        minus = la.scale(la.identity(n), -1)
        gens = list(self.reflections)
        if minus in self.index and minus not in gens:
            gens.append(minus)
        group = closure(gens, n)
        for M in self.elements:
            if len(group) == self.order:
                break
            if _key(np.array(M, dtype=np.int64)) not in group:
                gens.append(M)
                group = closure(gens, n)
        return tuple(gens)

    @cached_property
    def reflection_subgroup(self) -> Tuple[la.IntMatrix, ...]:
        """Sorted elements of the subgroup generated by all reflections."""
        W = closure(self.reflections, self.lattice.rank)
        return tuple(sorted(tuple(tuple(int(x) for x in r) for r in M) for M in W.values()))

    @cached_property
    def power_data(self):
        """Orders of all elements and traces of their powers."""
        n = self.lattice.rank
        A = self.array
        N = len(A)
        orders = np.zeros(N, dtype=np.int64)
        traces = np.zeros((N, MAX_ORDER_SCAN + 1), dtype=np.int64)
        traces[:, 0] = n
        P = A.copy()
        ident = np.eye(n, dtype=np.int64)
        for k in range(1, MAX_ORDER_SCAN + 1):
            traces[:, k] = np.trace(P, axis1=1, axis2=2)
            done = np.all(P == ident, axis=(1, 2)) & (orders == 0)
            orders[done] = k
            if np.all(orders > 0):
                break
            P = P @ A
        if np.any(orders == 0):
            raise IsometryError("element order exceeds scan limit")
        return orders, traces


_GROUPS: Dict[Tuple, OrthogonalGroup] = {}


def orthogonal_group(L: Lattice, element_cap: Optional[int] = None, workers: int = 1) -> OrthogonalGroup:
    """All isometries of a definite lattice, by backtracking on basis images."""
    cap = default_cap() if element_cap is None else int(element_cap)
    if cap <= 0:
        raise IsometryError("element cap must be positive")
    _definite_sign(L)
    if L.rank > 8:
        raise IsometryError("orthogonal group enumeration supports rank <= 8")
    key = (L.gram, cap)
    if key not in _GROUPS:
        _GROUPS[key] = OrthogonalGroup(L, _enumerate(L.gram, cap, max(1, int(workers))))
    return _GROUPS[key]


# ---------------------------------------------------------------------------
# batched group arithmetic


def _key(A: np.ndarray) -> bytes:
    return A.astype(np.int64).tobytes()


def _keys(batch: np.ndarray) -> List[bytes]:
    flat = np.ascontiguousarray(batch.astype(np.int64)).reshape(len(batch), -1)
    return [row.tobytes() for row in flat]


def closure(gens: Sequence, n: int, limit: Optional[int] = None) -> Dict[bytes, np.ndarray]:
    """Group generated by ``gens`` (finite), as a dict keyed by matrix bytes."""
    ident = np.eye(n, dtype=np.int64)
    seen = {_key(ident): ident}
    frontier = ident[None, :, :]
    gen_arrays = [np.array(g, dtype=np.int64) for g in gens]
    while len(frontier):
        new = []
        for g in gen_arrays:
            prod_ = frontier @ g
            for key, M in zip(_keys(prod_), prod_):
                if key not in seen:
                    seen[key] = M
                    new.append(M)
        if limit is not None and len(seen) > limit:
            raise IsometryError("closure exceeds limit")
        frontier = np.array(new, dtype=np.int64).reshape(-1, n, n)
    return seen


def reflection_subgroup(G: OrthogonalGroup):
    return G.reflection_subgroup


def element_orders(G: OrthogonalGroup) -> np.ndarray:
    return G.power_data[0]


def _mobius(n: int) -> int:
    res, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            res = -res
        p += 1
    return -res if n > 1 else res


def _totient(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def _ramanujan_sum(e: int, k: int) -> int:
    g = gcd(e, k)
    return sum(_mobius(e // d) * d for d in range(1, g + 1) if g % d == 0)


def eigen_multiplicities(G: OrthogonalGroup, e: int) -> np.ndarray:
    """``dim V(w, ζ_e)`` for every element, from integer traces of powers."""
    orders, traces = G.power_data
    out = np.zeros(len(orders), dtype=np.int64)
    phi = _totient(e)
    for o in np.unique(orders):
        o = int(o)
        sel = orders == o
        if o % e:
            continue
        weights = np.array([_ramanujan_sum(e, k) for k in range(o)], dtype=np.int64)
        total = traces[sel, :o] @ weights
        if np.any(total % (o * phi)):
            raise IsometryError("non-integral eigenvalue multiplicity")
        out[sel] = total // (o * phi)
    return out


def fixed_ranks(G: OrthogonalGroup) -> np.ndarray:
    return eigen_multiplicities(G, 1)


def find_order_e_fpf(L: Lattice, e: int, element_cap: Optional[int] = None,
                     workers: int = 1) -> List[Isometry]:
    """All group elements of exact order ``e`` with no nonzero fixed vector."""
    G = orthogonal_group(L, element_cap, workers)
    orders = element_orders(G)
    fixed = fixed_ranks(G)
    hits = np.nonzero((orders == e) & (fixed == 0))[0]
    return [Isometry(L, G.elements[k]) for k in hits]


def conjugacy_partition(G: OrthogonalGroup, S: Sequence, generators: Optional[Sequence] = None) -> List[List[la.IntMatrix]]:
    """Partition ``S`` into orbits under conjugation by the group generated by ``generators``.

    Defaults to the generating set of the full group.
    """
    n = G.lattice.rank
    index = G.index
    mats = [la.as_int_matrix(s.matrix if isinstance(s, Isometry) else s) for s in S]
    for M in mats:
        if M not in index:
            raise IsometryError("element is not in the group")
    gens = list(G.generators if generators is None else generators)
    pairs = []
    for g in gens:
        g = np.array(g, dtype=np.int64)
        ginv = np.rint(np.linalg.inv(g)).astype(np.int64)
        if not np.array_equal(g @ ginv, np.eye(n, dtype=np.int64)):
            raise IsometryError("generator is not unimodular")
        pairs.append((g, ginv))
    want = {_key(np.array(M, dtype=np.int64)): M for M in mats}
    assigned = set()
    classes = []
    for M in mats:
        k0 = _key(np.array(M, dtype=np.int64))
        if k0 in assigned:
            continue
        orbit = {k0}
        frontier = np.array([M], dtype=np.int64)
        while len(frontier):
            new = []
            for g, ginv in pairs:
                conj = g @ frontier @ ginv
                for key, X in zip(_keys(conj), conj):
                    if key not in orbit:
                        orbit.add(key)
                        new.append(X)
            frontier = np.array(new, dtype=np.int64).reshape(-1, n, n)
        members = sorted(want[k] for k in orbit if k in want)
        assigned.update(k for k in orbit if k in want)
        classes.append(members)
    return classes


def order_histogram(G: OrthogonalGroup) -> Dict[int, int]:
    return dict(sorted(Counter(int(o) for o in element_orders(G)).items()))


# ---------------------------------------------------------------------------
# isometries between definite lattices


def find_isometry(A: Lattice, B: Lattice) -> Optional[la.IntMatrix]:
    """Matrix ``M`` with ``Mᵀ·B·M = A`` (columns are images in B coordinates), or None."""
    if A.rank != B.rank or A.det != B.det or A.signature != B.signature:
        return None
    n = A.rank
    if n == 0:
        return ()
    _definite_sign(B)
    cands = [np.array(vectors_of_norm(B, A.gram[i][i]), dtype=np.int64).reshape(-1, n) for i in range(n)]
    GB = np.array(B.gram, dtype=np.int64)
    dual = [c @ GB for c in cands]  # row k: pairings of candidate k with B's basis
    order = sorted(range(n), key=lambda i: (len(cands[i]), i))
    chosen = [0] * n

    def rec(level):
        if level == n:
            return True
        i = order[level]
        mask = np.ones(len(cands[i]), dtype=bool)
        for prev in range(level):
            j = order[prev]
            mask &= cands[i] @ dual[j][chosen[j]] == A.gram[j][i]
        for c in np.nonzero(mask)[0]:
            chosen[i] = int(c)
            if rec(level + 1):
                return True
        return False

    if not rec(0):
        return None
    cols = [cands[i][chosen[i]] for i in range(n)]
    return tuple(tuple(int(cols[c][r]) for c in range(n)) for r in range(n))
