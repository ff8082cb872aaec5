import pytest

from hklattice import linalg as la
from hklattice.isometry import (
    CapExceededError,
    Isometry,
    IsometryError,
    conjugacy_partition,
    eigen_multiplicities,
    eigen_multiplicity,
    element_orders,
    find_isometry,
    find_order_e_fpf,
    fixed_sublattice,
    isometry_from_json,
    order_histogram,
    order_of,
    orthogonal_group,
    verify_isometry,
)
from hklattice.lattice import catalog
from hklattice.scenarios import e6_listed_isometry

from strategies import box_group_order as _box_group_order


@pytest.mark.parametrize("spec,radius", [
    ("A2", 2), ("A1+A1", 1), ("A1+A2", 2), ("A3", 2), ("<2>+<4>", 2), ("D4", 2),
])
def test_group_order_matches_box_oracle(spec, radius):
    L = catalog(spec)
    assert orthogonal_group(L).order == _box_group_order(L, radius)


def test_known_group_orders():
    assert orthogonal_group(catalog("A2")).order == 12
    assert orthogonal_group(catalog("A2(-1)")).order == 12
    assert orthogonal_group(catalog("D4")).order == 1152
    assert orthogonal_group(catalog("E6")).order == 103680


def test_e6_reflection_bookkeeping():
    G = orthogonal_group(catalog("E6"))
    assert len(G.reflections) == 36
    assert len(G.reflection_subgroup) == 51840
    assert G.order == 2 * len(G.reflection_subgroup)


def test_d4_reflection_subgroup():
    G = orthogonal_group(catalog("D4"))
    assert len(G.reflections) == 24
    assert len(G.reflection_subgroup) == 1152


def test_cap_and_definiteness():
    with pytest.raises(CapExceededError):
        orthogonal_group(catalog("D4"), element_cap=100)
    with pytest.raises(IsometryError):
        orthogonal_group(catalog("U"))
    with pytest.raises(IsometryError):
        orthogonal_group(catalog("E8+A1"))


def test_cap_env(monkeypatch):
    monkeypatch.setenv("HKLATTICE_CAP", "5")
    with pytest.raises(CapExceededError):
        orthogonal_group(catalog("A3"))


def test_verify_isometry_examples():
    U = catalog("U")
    assert verify_isometry(U, la.identity(2))
    assert verify_isometry(U, ((0, 1), (1, 0)))
    assert verify_isometry(catalog("E6(-1)"), e6_listed_isometry().matrix)
    assert not verify_isometry(U, ((1, 1), (0, 1)))


def test_order_of_examples():
    A2 = catalog("A2")
    assert order_of(Isometry.identity(A2)) == 1
    assert order_of(e6_listed_isometry()) == 3
    assert order_of(Isometry(A2, la.scale(la.identity(2), -1))) == 2
    shear = Isometry(catalog("U"), ((1, 0), (0, 1)))
    assert order_of(shear, cap=1) == 1


def test_fixed_sublattice_examples():
    L = catalog("U+U")
    assert fixed_sublattice(Isometry.identity(L)).rank == 4
    assert fixed_sublattice(e6_listed_isometry()).rank == 0
    swap = Isometry.from_images(L, [(0, 0, 1, 0), (0, 0, 0, 1), (1, 0, 0, 0), (0, 1, 0, 0)])
    F = fixed_sublattice(swap)
    assert F.rank == 2
    assert F.basis == ((1, 0, 1, 0), (0, 1, 0, 1))


def test_eigen_multiplicity_examples():
    A = catalog("A3")
    assert eigen_multiplicity(Isometry.identity(A), 1) == 3
    assert eigen_multiplicity(e6_listed_isometry(), 3) == 3
    for rho in find_order_e_fpf(catalog("D4(-1)"), 3):
        assert eigen_multiplicity(rho, 3) == 2


def test_batched_multiplicities_match_exact():
    G = orthogonal_group(catalog("D4"))
    for e in (1, 2, 3, 4, 6, 8, 12):
        fast = eigen_multiplicities(G, e)
        for k in range(0, G.order, 37):
            assert fast[k] == eigen_multiplicity(Isometry(G.lattice, G.elements[k]), e)


def test_order_histograms():
    assert order_histogram(orthogonal_group(catalog("D4"))) == {
        1: 1, 2: 139, 3: 80, 4: 228, 6: 464, 8: 144, 12: 96}
    orders = element_orders(orthogonal_group(catalog("A2")))
    assert sorted(orders.tolist()) == [1, 2, 2, 2, 2, 2, 2, 2, 3, 3, 6, 6]


def test_find_order3_fpf():
    A2 = find_order_e_fpf(catalog("A2(-1)"), 3)
    assert len(A2) == 2
    assert all(r.char_poly == (1, 1, 1) for r in A2)
    assert find_order_e_fpf(catalog("<-2>"), 3) == []
    D4 = find_order_e_fpf(catalog("D4(-1)"), 3)
    assert D4 and all(r.char_poly == (1, 2, 3, 2, 1) for r in D4)


def test_conjugacy_classes():
    G = orthogonal_group(catalog("D4"))
    assert len(conjugacy_partition(G, [la.identity(4)])) == 1
    S = find_order_e_fpf(catalog("D4"), 3)
    assert len(conjugacy_partition(G, S)) == 1
    assert len(conjugacy_partition(G, S, G.reflections)) == 1


def test_e6_order3_single_class():
    L = catalog("E6")
    G = orthogonal_group(L)
    S = find_order_e_fpf(L, 3)
    assert len(S) == 80
    assert len(conjugacy_partition(G, S)) == 1
    W = set(G.reflection_subgroup)
    SW = [s for s in S if s.matrix in W]
    assert len(conjugacy_partition(G, SW, G.reflections)) == 1


def test_listed_e6_matrix_is_in_the_class():
    rho = e6_listed_isometry()
    L = rho.lattice
    assert rho.matrix in {r.matrix for r in find_order_e_fpf(L, 3)}


def test_find_isometry():
    A = catalog("A2(-1)")
    B = catalog("A2(-1)")
    M = find_isometry(A, B)
    assert la.matmul(la.matmul(la.transpose(M), B.gram), M) == A.gram
    assert find_isometry(catalog("A3"), catalog("A1+A2")) is None
    E8 = catalog("E8(-1)")
    from hklattice.lattice import Lattice
    P = ((1, 1, 0, 0, 0, 0, 0, 0),) + tuple(la.identity(8)[1:])
    twisted = Lattice(la.matmul(la.matmul(la.transpose(P), E8.gram), P))
    M = find_isometry(E8, twisted)
    assert la.matmul(la.matmul(la.transpose(M), twisted.gram), M) == E8.gram


def test_isometry_json_roundtrip():
    rho = e6_listed_isometry()
    again = isometry_from_json(rho.to_json())
    assert again.matrix == rho.matrix and again.lattice.gram == rho.lattice.gram


def test_isometry_rejects_non_isometry():
    with pytest.raises(IsometryError):
        Isometry(catalog("A2"), ((1, 0), (0, 2)))
