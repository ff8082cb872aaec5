import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from hklattice import linalg as la
from hklattice.glue import decompose
from hklattice.lattice import Lattice, catalog
from hklattice.sublattice import (
    PrimitiveEmbedding,
    SublatticeError,
    divisibility,
    orth_complement,
    orth_complement_of_rows,
    saturate,
    sublattice_index,
)

from strategies import definite_grams, int_matrices, property_test


def test_saturate_scaled_line():
    U = catalog("U")
    E = saturate(U, [(3, 0)])
    assert E.basis == ((1, 0),)


def test_finite_index_inside_u_a2():
    # U(3)+A2(-2) sits with index 3 in U+A2(-2)
    amb = catalog("U+A2(-2)")
    rows = [(1, 0, 0, 0), (0, 3, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    assert sublattice_index(rows) == 3
    assert saturate(amb, rows).basis == la.identity(4)
    sub = Lattice(la.matmul(la.matmul(rows, amb.gram), la.transpose(rows)))
    assert abs(sub.det) == 108 and abs(amb.det) == 12


def test_saturate_idempotent_on_primitive():
    L = catalog("U+U")
    E = saturate(L, [(1, 0, 0, 0), (0, 1, 0, 0)])
    assert saturate(L, E.basis).basis == E.basis


def test_theta_complement_is_a2():
    P = catalog("U(3)+<-2>")
    E = orth_complement_of_rows(P, [(2, 2, -3)])
    assert E.rank == 2
    T = E.lattice
    assert T.signature == (0, 2) and T.det == 3 and T.is_even
    assert E.contains((1, 0, -1)) and E.contains((0, -1, 1))


def test_complement_of_first_u():
    L = catalog("U+U")
    E = PrimitiveEmbedding(L, [(1, 0, 0, 0), (0, 1, 0, 0)])
    assert orth_complement(E).basis == ((0, 0, 1, 0), (0, 0, 0, 1))


def test_errors():
    L = catalog("U")
    with pytest.raises(SublatticeError):
        PrimitiveEmbedding(L, [(2, 0)])
    with pytest.raises(SublatticeError):
        sublattice_index([(1, 1), (2, 2)])
    with pytest.raises(SublatticeError):
        orth_complement(PrimitiveEmbedding(L, [(1, 0)]))
    with pytest.raises(SublatticeError):
        divisibility(L, (0, 0))


def test_divisibility():
    L = catalog("U+<-2>")
    assert divisibility(L, (0, 0, 1)) == 2
    assert divisibility(L, (1, 0, 0)) == 1


def test_coords_of():
    L = catalog("U+U")
    E = PrimitiveEmbedding(L, [(1, 1, 0, 0), (0, 0, 1, 2)])
    assert E.coords_of((2, 2, -1, -2)) == (2, -1)
    with pytest.raises(SublatticeError):
        E.coords_of((1, 0, 0, 0))


@st.composite
def rows_in(draw, n):
    k = draw(st.integers(1, n))
    rows = draw(int_matrices(k, n, -6, 6))
    return rows


@property_test
@given(st.integers(1, 5).flatmap(rows_in))
def test_saturation_idempotent(rows):
    assume(la.rank(rows) == len(rows))
    n = len(rows[0])
    L = Lattice(la.identity(n))
    E = saturate(L, rows)
    assert E.rank == len(rows)
    assert saturate(L, E.basis).basis == E.basis
    assert all(E.contains(r) for r in rows)
    idx = sublattice_index(rows)
    # index of the span equals the product of the coordinates' invariant factors
    C = [E.coords_of(r) for r in rows]
    assert abs(la.det_exact(C)) == idx


AMBIENTS = [catalog(s) for s in ("U+U+A2(-1)", "U(3)+<-2>+A2", "U+D4(-1)", "A3+<6>")]


@property_test
@given(st.sampled_from(AMBIENTS), st.data())
def test_double_complement(L, data):
    k = data.draw(st.integers(1, L.rank - 1))
    rows = data.draw(int_matrices(k, L.rank, -3, 3))
    assume(la.rank(rows) == k)
    E = saturate(L, rows)
    assume(la.det_exact(E.induced_gram) != 0)
    P = orth_complement(E)
    assert P.rank == L.rank - k
    PP = orth_complement(P)
    assert PP.basis == E.basis
    for a in E.basis:
        for b in P.basis:
            assert la.dot(a, la.matvec(L.gram, b)) == 0


@property_test
@given(definite_grams(max_n=4, even=True), st.data())
def test_decompose_recovers_ambient(G, data):
    L = Lattice(G)
    assume(L.rank >= 2)
    k = data.draw(st.integers(1, L.rank - 1))
    rows = data.draw(int_matrices(k, L.rank, -2, 2))
    assume(la.rank(rows) == k)
    E = saturate(L, rows)
    d = decompose(E)
    assert abs(d.over.lattice.det) == abs(L.det)
    # index law for S + S^perp inside L
    assert abs(d.sub.det * d.complement.det) == abs(L.det) * d.glue.order ** 2
