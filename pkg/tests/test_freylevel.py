from collections import Counter

import pytest
from hypothesis import assume, given, strategies as st

from fermatquad.freylevel import (ADDITIVE_POT_GOOD, ADDITIVE_POT_MULT, GOOD, MULTIPLICATIVE,
                                  SCENARIO_COPRIME, FreyTriple, cokernel_classes, distinct_levels,
                                  dyadic_primes, even_conductor_exponent, even_rows,
                                  frey_invariants, frey_j_valuation, level_string,
                                  local_quad_discriminant, odd_local_type, predict_levels,
                                  square_classes)
from fermatquad.ideals import ResidueRing, elem_val, primes_above
from fermatquad.quadfield import make_field

from conftest import SMALL_D
from even_levels import COPRIME_ROW, TABLE, table_element as _elem

ints = st.integers(-30, 30)


def test_triple_validation():
    F = make_field(5)
    with pytest.raises(ValueError):
        FreyTriple(F(1), F(1), F(1))
    with pytest.raises(ValueError):
        FreyTriple.from_uv(F(1), F(-1))
    with pytest.raises(ValueError):
        FreyTriple.from_solution(F(1), F(1), F(-2), 3)
    t = FreyTriple.from_solution(F(1), F(2), F(-3), 1)
    assert (t.u, t.v, t.w) == (F(1), F(2), F(-3))


@pytest.mark.parametrize("d", [2, 5, 17])
def test_discriminant_identity(d):
    F = make_field(d)

    @given(ints, ints, ints, ints)
    def check(a, b, c, e):
        u, v = F.from_basis(a, b), F.from_basis(c, e)
        assume(not (u * v * (u + v)).is_zero())
        inv = frey_invariants(FreyTriple.from_uv(u, v))
        assert inv.c4 ** 3 - inv.c6 ** 2 == 1728 * inv.disc

    check()


def _root_oracle(u0, v0, k, q):
    """Reduction type read off from coincidences of the roots 0, u0, -v0 mod q
    of the model scaled by q^k (k odd means a ramified quadratic twist)."""
    R = ResidueRing(q)
    distinct = len({R.reduce(u0.field.zero), R.reduce(u0), R.reduce(-v0)})
    assert distinct >= 2
    if k % 2 == 0:
        return (GOOD, 0) if distinct == 3 else (MULTIPLICATIVE, 1)
    return (ADDITIVE_POT_GOOD, 2) if distinct == 3 else (ADDITIVE_POT_MULT, 2)


@pytest.mark.parametrize("d,p", [(5, 11), (10, 3), (15, 7), (7, 3)])
def test_odd_types_against_root_coincidence(d, p):
    F = make_field(d)
    q = primes_above(F, p)[0]
    pi = q.uniformizer

    @given(ints, ints, ints, ints, st.integers(0, 3))
    def check(a, b, c, e, k):
        u0, v0 = F.from_basis(a, b), F.from_basis(c, e)
        assume(not (u0 * v0 * (u0 + v0)).is_zero())
        assume(u0 not in q or v0 not in q)
        t = FreyTriple.from_uv(pi ** k * u0, pi ** k * v0)
        loc = odd_local_type(t, q)
        assert (loc.reduction_type, loc.conductor_exp) == _root_oracle(u0, v0, k, q)
        assert loc.ord_min_disc == elem_val(frey_invariants(t).disc, q) - 12 * (k // 2)

    check()


def test_odd_type_rejects_dyadic_primes():
    F = make_field(3)
    t = FreyTriple.from_uv(F(1), F(2))
    with pytest.raises(ValueError):
        odd_local_type(t, dyadic_primes(F)[0])


def test_two_adic_sanity_set():
    # over d=17 both dyadic completions are Q_2
    F = make_field(17)
    for P in dyadic_primes(F):
        assert (P.e, P.f) == (1, 1)
        assert local_quad_discriminant(F(-1), P) == 2
        assert local_quad_discriminant(F(2), P) == 3
        assert local_quad_discriminant(F(-7), P) == 0
        assert local_quad_discriminant(F(3), P) == 2
        assert local_quad_discriminant(F(5), P) == 0
        assert local_quad_discriminant(F(6), P) == 3


@pytest.mark.parametrize("d", [2, 3, 5, 17, 21])
def test_local_discriminant_square_invariance(d):
    F = make_field(d)
    S = dyadic_primes(F)

    @given(ints, ints, ints, ints)
    def check(a, b, c, e):
        lam, mu = F.from_basis(a, b), F.from_basis(c, e)
        assume(not lam.is_zero() and not mu.is_zero())
        for P in S:
            assume(elem_val(mu, P) <= 3 and elem_val(lam, P) <= 3)
            D = local_quad_discriminant(lam, P)
            assert local_quad_discriminant(lam * mu * mu, P) == D
            assert D in range(0, 2 * P.e + 2)
            assert (D == 2 * P.e + 1) == (elem_val(lam, P) % 2 == 1)

    check()


def test_frey_j_valuation():
    P = dyadic_primes(make_field(3))[0]
    assert frey_j_valuation(P, 17, 1) == 16 - 102
    assert all(frey_j_valuation(P, p, t) < 0 for p in (17, 19) for t in (1, 2))


# -- the even-level table -----------------------------------------------------------------

@pytest.mark.parametrize("d", SMALL_D)
def test_even_table_by_square_class(d):
    F = make_field(d)
    sc = square_classes(F)
    ours = {c.coset: c for c in cokernel_classes(F)}
    assert len(ours) == len(TABLE[d])
    for entry, k in TABLE[d]:
        lam = _elem(F, entry)
        cls = ours[sc.coset_label(sc.vector(lam))]
        for P, exp in zip(dyadic_primes(F), cls.exponents):
            assert exp == k
            assert even_conductor_exponent(lam, P) == k


@pytest.mark.parametrize("d", SMALL_D)
def test_even_level_multiset(d):
    F = make_field(d)
    rows = even_rows(F)
    table = Counter(k for _, k in TABLE[d]) + Counter({4: int(d in COPRIME_ROW)})
    got = Counter(r[2][0] for r in rows)
    assert +got == +table
    assert any(r[1] == SCENARIO_COPRIME for r in rows) == (d in COPRIME_ROW)


def test_levels_for_30_and_79():
    F = make_field(30)
    names = {level_string(F, L) for L in distinct_levels(F)}
    assert "P^8 * (3, √30)^2" in names
    F = make_field(79)
    assert [level_string(F, L) for L in distinct_levels(F)] == ["P", "P^4"]
    assert len(predict_levels(make_field(10))) == 4
