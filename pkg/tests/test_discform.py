from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hklattice import linalg as la
from hklattice.discform import (
    DiscFormError,
    anti_isometry_search,
    discriminant_form,
    form_from_tables,
    identity_map,
    induced_action,
    is_trivial_action,
    isometry_search,
    mod2,
)
from hklattice.isometry import Isometry, find_order_e_fpf, orthogonal_group
from hklattice.lattice import catalog
from hklattice.scenarios import e6_listed_isometry

from strategies import even_lattices, property_test


def test_trivial_and_small_forms():
    assert discriminant_form(catalog("E8(-1)")).is_trivial
    F = discriminant_form(catalog("D4(-1)"))
    assert F.cyclic_orders == (2, 2)
    F = discriminant_form(catalog("<6>"))
    assert F.cyclic_orders == (6,)
    assert F.q_table == (Fraction(1, 6),)
    assert F.generators == ((Fraction(1, 6),),)


def test_odd_lattice_rejected():
    with pytest.raises(DiscFormError):
        discriminant_form(catalog("<1>"))


def test_identity_action():
    L = catalog("U(3)+<-2>")
    a = induced_action(Isometry.identity(L))
    assert a.images == identity_map(a.source).images
    assert is_trivial_action(a)


def test_d4_order3_actions_nontrivial():
    L = catalog("D4(-1)")
    rhos = find_order_e_fpf(L, 3)
    assert len(rhos) == 16
    for rho in rhos:
        a = induced_action(rho)
        assert not is_trivial_action(a)
        # order 3 on (Z/2)^2 means no nonzero fixed element
        F = a.source
        fixed = [x for x in F.elements() if a(x) == x]
        assert fixed == [F.zero()]


def test_e6_action_trivial():
    assert is_trivial_action(induced_action(e6_listed_isometry()))


def test_e8_any_action_trivial():
    L = catalog("E8(-1)")
    assert is_trivial_action(induced_action(Isometry(L, la.scale(la.identity(8), -1))))


def test_anti_isometry_examples():
    E = discriminant_form(catalog("E8"))
    assert anti_isometry_search(E, E) is not None
    F1 = discriminant_form(catalog("<6>+A2(-1)"))
    F2 = discriminant_form(catalog("U(3)+<-2>"))
    # isometric, but the signatures mod 8 forbid an anti-isometry
    assert anti_isometry_search(F1, F2) is None
    g = isometry_search(F1, F2)
    assert g is not None and g.is_bijective() and g.scales_form(1)
    h = form_from_tables((2,), (Fraction(1, 2),))
    assert anti_isometry_search(h, h) is None


def test_anti_isometry_of_complementary_forms():
    F = discriminant_form(catalog("A2(-1)"))
    G = discriminant_form(catalog("E6(-1)"))
    g = anti_isometry_search(G, F)
    assert g is not None and g.scales_form(-1)


def test_non_isometry_rejected():
    L = catalog("A2")
    with pytest.raises(Exception):
        induced_action(Isometry(L, ((1, 1), (0, 1))))


BASES = [catalog(s) for s in ("A2", "D4(-1)", "U(3)+<-2>", "<6>+A2(-1)", "A1+A2", "U+<4>", "<2>+<-6>")]


@property_test
@given(even_lattices(BASES), st.data())
def test_q_well_defined(L, data):
    F = discriminant_form(L)
    n = L.rank
    a = tuple(data.draw(st.integers(0, d - 1)) for d in F.cyclic_orders)
    lam = data.draw(st.lists(st.integers(-5, 5), min_size=n, max_size=n))
    x = F.lift(a)
    y = tuple(xi + li for xi, li in zip(x, lam))
    assert F.is_dual_vector(y)
    assert F.coords(y) == F.reduce(a)
    assert F.q_of_vector(y) == F.q(a)
    # bilinear form is the polarisation of q
    c = tuple(data.draw(st.integers(0, d - 1)) for d in F.cyclic_orders)
    z = F.lift(c)
    two_b = mod2(F.q(F.add(a, c)) - F.q(a) - F.q(c))
    assert two_b == mod2(2 * F.b(a, c))
    assert F.b(a, c) == la.dot(y, la.matvec(L.gram, z)) - (la.dot(y, la.matvec(L.gram, z)) // 1)


GROUP_LATTICES = [catalog(s) for s in ("D4(-1)", "A1+A1+A2", "A2(-1)", "A3")]


@property_test
@given(st.sampled_from(GROUP_LATTICES), st.data())
def test_induced_action_functorial(L, data):
    G = orthogonal_group(L)
    i = data.draw(st.integers(0, G.order - 1))
    j = data.draw(st.integers(0, G.order - 1))
    f, g = Isometry(L, G.elements[i]), Isometry(L, G.elements[j])
    af, ag = induced_action(f), induced_action(g)
    fg = induced_action(f.compose(g))
    assert fg.images == af.compose(ag).images
    assert af.is_bijective()
    assert af.scales_form(1)
    inv = induced_action(f.inverse())
    assert is_trivial_action(af.compose(inv))
