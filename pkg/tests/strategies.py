"""Shared hypothesis settings and generators."""

import itertools

import numpy as np
from hypothesis import HealthCheck, seed, settings
from hypothesis import strategies as st

from hklattice import linalg as la
from hklattice.lattice import Lattice

SEED = 20260118
CASES = 1000


def property_test(fn):
    """At least 1000 examples, fixed seed, no example database."""
    fn = settings(
        max_examples=CASES,
        deadline=None,
        database=None,
        suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
    )(fn)
    return seed(SEED)(fn)


def int_matrices(rows, cols, lo=-6, hi=6):
    return st.lists(
        st.lists(st.integers(lo, hi), min_size=cols, max_size=cols),
        min_size=rows, max_size=rows,
    ).map(lambda m: tuple(tuple(r) for r in m))


@st.composite
def square_matrices(draw, max_n=4, lo=-6, hi=6):
    n = draw(st.integers(1, max_n))
    return draw(int_matrices(n, n, lo, hi))


@st.composite
def nonsingular(draw, n, lo=-3, hi=3):
    A = draw(int_matrices(n, n, lo, hi))
    if la.det_exact(A) == 0:
        # fall back to the unipotent upper-triangular part (determinant 1)
        A = tuple(tuple(1 if i == j else (x if j > i else 0) for j, x in enumerate(r)) for i, r in enumerate(A))
    return A


@st.composite
def definite_grams(draw, max_n=4, even=False, lo=-2, hi=2):
    """Positive definite Gram matrices ``Bᵀ·B`` (doubled when ``even``)."""
    n = draw(st.integers(1, max_n))
    B = draw(nonsingular(n, lo, hi))
    G = la.matmul(la.transpose(B), B)
    return la.scale(G, 2) if even else G


@st.composite
def even_lattices(draw, bases, max_det=None):
    """``Pᵀ·A·P`` for a base lattice ``A`` and a small nonsingular ``P``."""
    A = draw(st.sampled_from(bases))
    P = draw(nonsingular(A.rank, -1, 1))
    G = la.matmul(la.matmul(la.transpose(P), A.gram), P)
    return Lattice(G)


def box_group_order(L, radius):
    """Count integer matrices preserving the Gram matrix, columns drawn from a box."""
    n = L.rank
    G = np.array(L.gram, dtype=np.int64)
    pts = np.array(list(itertools.product(range(-radius, radius + 1), repeat=n)), dtype=np.int64)
    norms = np.einsum("ij,jk,ik->i", pts, G, pts)
    cols = [pts[norms == G[i, i]] for i in range(n)]
    count = 0
    for combo in itertools.product(*(range(len(c)) for c in cols[:-1])):
        head = np.stack([cols[i][k] for i, k in enumerate(combo)], axis=1)
        if not np.array_equal(head.T @ G @ head, G[:-1, :-1]):
            continue
        last = cols[-1]
        ok = np.all(last @ G @ head == G[-1, :-1], axis=1)
        count += int(ok.sum())
    return count
