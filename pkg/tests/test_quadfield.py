import pytest
from hypothesis import given, strategies as st

from fermatquad.quadfield import (QElem, brute_force_fundamental_unit, make_field,
                                  totally_positive_unit_generator)

from conftest import SMALL_D

ints = st.integers(-60, 60)


def elems(F):
    return st.builds(F.from_basis, ints, ints)


def test_rejects_non_squarefree_and_out_of_range():
    for d in (1, 4, 12, 1001):
        with pytest.raises(ValueError):
            make_field(d)


def test_half_coordinates_require_integrality():
    F = make_field(5)
    assert str(F.half(1, 1)) == "(1+√5)/2"
    with pytest.raises(ValueError):
        make_field(3).half(1, 1)
    with pytest.raises(ValueError):
        F.half(1, 2)


@pytest.mark.parametrize("d,unit", [(2, "1+√2"), (3, "2+√3"), (5, "(1+√5)/2"),
                                    (7, "8+3√7"), (79, "80+9√79"), (94, "2143295+221064√94")])
def test_fundamental_unit(d, unit):
    assert str(make_field(d).fundamental_unit) == unit


@pytest.mark.parametrize("d", SMALL_D + [30, 46, 79])
def test_fundamental_unit_matches_brute_force(d):
    F = make_field(d)
    assert brute_force_fundamental_unit(F, 10**4) == F.fundamental_unit


@pytest.mark.parametrize("d", SMALL_D)
def test_totally_positive_generator(d):
    F = make_field(d)
    u = totally_positive_unit_generator(F)
    assert u.is_totally_positive() and u.norm() == 1
    eps = F.fundamental_unit
    assert u in (eps, eps * eps, -eps, (-eps) * (-eps))


@pytest.mark.parametrize("d", [3, 5, 17])
def test_norm_is_multiplicative(d):
    F = make_field(d)

    @given(elems(F), elems(F))
    def check(a, b):
        assert (a * b).norm() == a.norm() * b.norm()
        assert (a * b).conj() == a.conj() * b.conj()
        assert (a + b).trace() == a.trace() + b.trace()

    check()


def test_exact_division_and_unit_powers():
    F = make_field(7)
    a, b = F(3, 1), F(5, -2)
    assert (a * b).exact_div(b) == a
    eps = F.fundamental_unit
    assert eps ** -2 * eps ** 2 == F.one
    with pytest.raises(ValueError):
        F(2).exact_div(F(3))


def test_ordering_uses_the_real_embedding():
    F = make_field(2)
    assert F(-1, 1) > 0 > F(1, -1)
    assert F(1, -1).conj_sign() == 1
    assert isinstance(F.sqrt_d, QElem)
