from math import gcd, isqrt

import pytest

from fermatquad.classgroup import class_group, h_set, narrow_class_group, ray_class_group
from fermatquad.ideals import Ideal, equivalent, is_principal
from fermatquad.quadfield import make_field

from conftest import SMALL_D


def _rho(D, f):
    a, b, c = f
    s = isqrt(D)
    m = 2 * abs(c)
    if c * c > D:
        r = -b % m
        if r > abs(c):
            r -= m
    else:
        r = -b % m
        while r <= s - m:
            r += m
        while r > s:
            r -= m
    return (c, r, (r * r - D) // (4 * c))


def narrow_class_number_by_forms(D: int) -> int:
    """Number of rho-cycles of reduced primitive forms of discriminant D."""
    s = isqrt(D)
    forms = set()
    for b in range(1, s + 1):
        if (b - D) % 2:
            continue
        n = (D - b * b) // 4
        for a in range(1, n + 1):
            if n % a:
                continue
            for sa in (a, -a):
                c = -n // sa
                f = (sa, b, c)
                if gcd(gcd(sa, b), c) == 1 and _is_reduced(D, f):
                    forms.add(f)
    cycles = 0
    while forms:
        start = forms.pop()
        f = _rho(D, start)
        for _ in range(10 * D):
            if f == start:
                break
            assert f in forms, f"rho left the reduced set at {f}"
            forms.discard(f)
            f = _rho(D, f)
        else:
            raise AssertionError("cycle did not close")
        cycles += 1
    return cycles


def _is_reduced(D, f):
    """|sqrt D - 2|a|| < b < sqrt D, in integer arithmetic."""
    a, b, _ = f
    two_a = 2 * abs(a)
    if not 0 < b * b < D:
        return False
    # sqrt D - 2|a| < b  and  2|a| - sqrt D < b
    low = two_a - b <= 0 or (two_a - b) ** 2 < D
    high = two_a + b > 0 and (two_a + b) ** 2 > D
    return low and high


@pytest.mark.parametrize("d", SMALL_D + [26, 30, 34, 79, 82, 226])
def test_narrow_class_number_matches_form_cycles(d):
    F = make_field(d)
    assert narrow_class_group(F).order == narrow_class_number_by_forms(F.disc)
    h, eps = class_group(F).order, F.fundamental_unit
    assert narrow_class_group(F).order == (h if eps.norm() == -1 else 2 * h)


@pytest.mark.parametrize("d,structure", [(79, "Z/3"), (10, "Z/2"), (15, "Z/2"), (2, "0"),
                                         (82, "Z/4"), (226, "Z/8"), (30, "Z/2")])
def test_class_group_structure(d, structure):
    assert class_group(make_field(d)).group.structure() == structure


def test_certificates_and_dlog():
    F = make_field(82)
    cg = class_group(F)
    (g,) = cg.generator_ideals
    assert is_principal(g ** 4) is not None and is_principal(g ** 2) is None
    assert cg.dlog(g * g) == cg.group.reduce([2])
    for P in sorted(cg.prime_table, key=lambda I: I.key())[:6]:
        rep = cg.rep_coprime_to(cg.dlog(P), Ideal.generated_by(F, 2 * 3 * 5 * 7))
        assert equivalent(rep, P)


@pytest.mark.parametrize("d,expected", [
    (10, ["(1)", "(3, 1+√10)"]),
    (15, ["(1)", "(3, √15)"]),
    (79, ["(1)"]),
] + [(d, ["(1)"]) for d in SMALL_D if d not in (10, 15)])
def test_h_sets(d, expected):
    H = h_set(make_field(d))
    assert [str(I) for I in H] == expected
    for I in H:
        assert I.is_unit() or (I.norm % 2 == 1)


def test_ray_class_groups_for_79():
    F = make_field(79)
    assert narrow_class_group(F).structure() == "Z/6"
    assert ray_class_group(F, Ideal.unit(F), "none").structure() == "Z/3"
    assert ray_class_group(F, Ideal.generated_by(F, 2)).structure() == "Z/6"


@pytest.mark.parametrize("d", [19, 23])
def test_narrow_groups_of_order_two(d):
    F = make_field(d)
    assert narrow_class_group(F).structure() == "Z/2"
