from itertools import product

import pytest
from hypothesis import given, strategies as st

from fermatquad.abgroup import (Presentation, group_from_elements,
                                invariants_from_order_profile, smith_normal_form)


def _matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=1, max_size=4))
def test_smith_form_factorisation(rows):
    D, U, V, Vinv = smith_normal_form(rows)
    assert _matmul(_matmul(U, rows), V) == D
    n = len(V)
    assert _matmul(V, Vinv) == [[int(i == j) for j in range(n)] for i in range(n)]
    diag = [D[i][i] for i in range(min(len(D), n))]
    for i in range(len(diag)):
        assert all(D[i][j] == 0 for j in range(n) if j != i)
    nz = [x for x in diag if x]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


@pytest.mark.parametrize("mods,expected", [((2, 4), (2, 4)), ((6,), (6,)),
                                           ((4, 6), (2, 12)), ((3, 3, 9), (3, 3, 9))])
def test_product_of_cyclic_groups(mods, expected):
    elems = list(product(*[range(m) for m in mods]))

    def add(a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, mods))

    G = group_from_elements(elems, add, tuple(0 for _ in mods))
    assert G.invariants == expected
    for a in elems[:20]:
        for b in elems[:20]:
            assert G.dlog(add(a, b)) == G.reduce(x + y for x, y in zip(G.dlog(a), G.dlog(b)))


def test_order_profile_oracle():
    # Z/2 x Z/4: one identity, three involutions, four of order 4
    assert invariants_from_order_profile([1, 2, 2, 2, 4, 4, 4, 4]) == (2, 4)
    assert invariants_from_order_profile([1] + [2] * 7) == (2, 2, 2)


def test_presentation_structure():
    P = Presentation(2, [[2, 0], [0, 6]])
    assert P.invariants == (2, 6)
    assert Presentation(2, [[2, 4], [0, 3]]).invariants == (6,)
