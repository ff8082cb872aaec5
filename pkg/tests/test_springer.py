import pytest
from hypothesis import given
from hypothesis import strategies as st

from hklattice.springer import GROUPS, SpringerError, get_group, lam, lam_star, springer_report

from strategies import property_test


def test_lambda_values():
    F4, E6 = get_group("f4"), get_group("E6")
    assert lam(F4, 3) == 2 and lam_star(F4, 3) == 2
    assert lam(E6, 3) == 3 and lam_star(E6, 3) == 3
    assert lam(F4, 5) == 0
    assert lam_star(E6, 2) == 4
    assert lam_star(E6, 12) == 1
    assert lam(F4, 1) == 4 and lam(E6, 1) == 6


def test_group_orders_from_degrees():
    assert get_group("f4").order == 1152
    assert get_group("e6").order == 51840


def test_errors():
    with pytest.raises(SpringerError):
        get_group("g2")
    with pytest.raises(SpringerError):
        lam(get_group("f4"), 0)


def test_reports_cross_check():
    r = springer_report(get_group("f4"), 3, enumerate_group=True)
    assert r["lambda"] == r["lambda_star"] == 2 and r["regular_uniqueness"]
    assert r["enumerated_max_eigendim"] == 2 and r["cross_check"]
    assert r["classes_in_orthogonal_group"] == 1 and r["classes_in_reflection_subgroup"] == 1
    r = springer_report(get_group("e6"), 3, enumerate_group=True)
    assert r["enumerated_max_eigendim"] == 3 and r["cross_check"]
    assert r["classes_in_orthogonal_group"] == 1 and r["classes_in_reflection_subgroup"] == 1
    assert r["orthogonal_group_order"] == 103680 and r["reflection_subgroup_order"] == 51840


@property_test
@given(st.sampled_from(sorted(GROUPS)), st.integers(1, 40), st.integers(1, 6))
def test_lambda_monotone_under_divisibility(name, e, k):
    g = GROUPS[name]
    assert lam(g, e * k) <= lam(g, e)
    assert lam_star(g, e) >= 1
    assert lam(g, 1) == g.rank
