"""Arithmetic in Q_f = Q[x]/(h) for a monic integer polynomial h, with
elements stored as integer coefficient lists (lowest degree first)."""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property

from sympy import Poly, ZZ, symbols
from sympy import discriminant as _disc
from sympy import resultant

X = symbols("x")


def _trim(c: list[int]) -> list[int]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


class HeckeField:
    def __init__(self, coeffs: list[int]):
        c = _trim([int(a) for a in coeffs])
        if len(c) < 2:
            raise ValueError("defining polynomial must have degree >= 1")
        if c[-1] != 1:
            raise ValueError("defining polynomial must be monic")
        self.coeffs = c
        self.degree = len(c) - 1

    def __eq__(self, other):
        return isinstance(other, HeckeField) and other.coeffs == self.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __repr__(self):
        return f"HeckeField({self.poly.as_expr()})"

    @cached_property
    def poly(self) -> Poly:
        return Poly(list(reversed(self.coeffs)), X, domain=ZZ)

    def is_irreducible(self) -> bool:
        return self.poly.is_irreducible

    @cached_property
    def discriminant(self) -> int:
        if self.degree == 1:
            return 1
        return int(_disc(self.poly))

    # -- elements ------------------------------------------------------------
    def reduce(self, a: list[int]) -> list[int]:
        a = [int(x) for x in a]
        n = self.degree
        h = self.coeffs
        for k in range(len(a) - 1, n - 1, -1):
            c = a[k]
            if c:
                for i in range(n + 1):
                    a[k - n + i] -= c * h[i]
        a = a[:n]
        return a + [0] * (n - len(a))

    def const(self, c: int) -> list[int]:
        return self.reduce([c])

    def add(self, a, b):
        n = max(len(a), len(b))
        return self.reduce([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                            for i in range(n)])

    def neg(self, a):
        return [-x for x in a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        out = [0] * (len(a) + len(b))
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return self.reduce(out)

    def is_zero(self, a) -> bool:
        return not any(a)

    def norm(self, a) -> int:
        """Norm to Q of the element a(alpha)."""
        a = _trim(self.reduce(a))
        if not a:
            return 0
        if self.degree == 1:
            return a[0]
        g = Poly(list(reversed(a)), X, domain=ZZ)
        # N(g(alpha)) = Res(h, g) for monic h
        return int(resultant(self.poly, g))

    def real_embeddings(self, eps: Fraction = Fraction(1, 10**30)) -> list[tuple[Fraction, Fraction]]:
        """Isolating intervals of the real roots of h."""
        if self.degree == 1:
            r = Fraction(-self.coeffs[0])
            return [(r, r)]
        return [(Fraction(lo), Fraction(hi))
                for (lo, hi), _ in self.poly.intervals(eps=eps)]

    def in_prime_above(self, a, p: int) -> list[bool]:
        """For each prime (p, phi(alpha)), whether it contains a(alpha).

        Valid when p does not divide the discriminant of h.
        """
        if self.degree == 1:
            return [self.reduce(a)[0] % p == 0]
        _, factors = Poly(list(reversed(self.coeffs)), X, modulus=p).factor_list()
        g = Poly(list(reversed(self.reduce(a))), X, modulus=p)
        return [g.rem(phi).is_zero for phi, _ in factors]


def interval_eval(coeffs: list[int], lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Enclosure of sum c_i x^i over x in [lo, hi] by interval Horner."""
    a, b = Fraction(0), Fraction(0)
    for c in reversed(coeffs):
        prods = [a * lo, a * hi, b * lo, b * hi]
        a, b = min(prods) + c, max(prods) + c
    return a, b
