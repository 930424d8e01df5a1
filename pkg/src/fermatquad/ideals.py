"""Integral ideals of O_K for real quadratic K.

An ideal is kept as the Z-module  Z*a + Z*(b + c*omega)  with c | a, c | b,
0 <= b < a.  Its norm is a*c.
"""

from __future__ import annotations

from functools import cached_property, lru_cache
from math import gcd, isqrt
from typing import Iterable

from sympy import factorint, isprime
from sympy.ntheory import sqrt_mod

from .abgroup import FinAbGroup, group_from_elements
from .quadfield import FieldCtx, QElem

RESIDUE_NORM_LIMIT = 10**6
PRINCIPAL_NORM_LIMIT = 10**6


class CapacityError(ValueError):
    """Input exceeds the desk-scale enumeration bounds."""


def _hnf2(vectors: Iterable[tuple[int, int]]) -> tuple[int, int, int]:
    """(a, b, c) spanning the same full-rank lattice of Z^2 as ``vectors``."""
    rows = [list(v) for v in vectors if v[0] or v[1]]
    # Euclid on the second coordinate
    pivot = None
    zeros: list[int] = []
    for r in rows:
        if r[1] == 0:
            zeros.append(r[0])
            continue
        if pivot is None:
            pivot = r
            continue
        x, y = pivot, r
        while y[1]:
            q = x[1] // y[1]
            x = [x[0] - q * y[0], x[1] - q * y[1]]
            x, y = y, x
        pivot = x
        zeros.append(y[0])
    if pivot is None:
        raise ValueError("lattice is not of full rank")
    a = 0
    for z in zeros:
        a = gcd(a, z)
    if a == 0:
        raise ValueError("lattice is not of full rank")
    if pivot[1] < 0:
        pivot = [-pivot[0], -pivot[1]]
    c = pivot[1]
    b = pivot[0] % a
    return a, b, c


class Ideal:
    """Nonzero integral ideal of O_K in Hermite normal form."""

    def __init__(self, field: FieldCtx, a: int, b: int, c: int):
        self.field = field
        self.a, self.b, self.c = a, b, c

    # -- construction ------------------------------------------------------
    @classmethod
    def from_zbasis(cls, F: FieldCtx, vectors) -> Ideal:
        """Ideal whose Z-span is generated by basis-coordinate ``vectors``.

        The caller guarantees the span is closed under multiplication by omega.
        """
        return cls(F, *_hnf2(vectors))

    @classmethod
    def generated_by(cls, F: FieldCtx, *elems: QElem | int) -> Ideal:
        vecs = []
        for e in elems:
            if isinstance(e, int):
                e = F(e)
            if e.field != F:
                raise ValueError("generator from a different field")
            i, j = e.basis_coords()
            vecs.append((i, j))
            vecs.append(F.basis_mul(i, j, 0, 1))
        if not any(v[0] or v[1] for v in vecs):
            raise ValueError("the zero ideal is not supported")
        return cls.from_zbasis(F, vecs)

    @classmethod
    def unit(cls, F: FieldCtx) -> Ideal:
        return cls(F, 1, 0, 1)

    # -- basic data --------------------------------------------------------
    @property
    def norm(self) -> int:
        return self.a * self.c

    def zbasis(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (self.a, 0), (self.b, self.c)

    def gens(self) -> tuple[QElem, QElem]:
        F = self.field
        return F.from_basis(self.a, 0), F.from_basis(self.b, self.c)

    def is_unit(self) -> bool:
        return self.a == 1 and self.c == 1

    def key(self) -> tuple[int, int, int, int]:
        return (self.norm, self.a, self.b, self.c)

    def __eq__(self, other):
        return (isinstance(other, Ideal) and self.field == other.field
                and (self.a, self.b, self.c) == (other.a, other.b, other.c))

    def __hash__(self):
        return hash((self.field.d, self.a, self.b, self.c))

    def __lt__(self, other: Ideal):
        return self.key() < other.key()

    def __repr__(self):
        return f"Ideal(d={self.field.d}, {self})"

    def __str__(self):
        g1, g2 = self.gens()
        if self.c == self.a and self.b == 0:
            return f"({self.a})"
        if self.c == 1 and self.b == 0:
            return f"({self.a}, {self.field.omega})"
        return f"({g1}, {g2})"

    def to_json(self) -> dict:
        g1, g2 = self.gens()
        return {"norm": self.norm, "gens": [g1.to_pair(), g2.to_pair()]}

    @classmethod
    def from_json(cls, F: FieldCtx, obj: dict) -> Ideal:
        gens = [F.half(int(x), int(y)) for x, y in obj["gens"]]
        I = cls.generated_by(F, *gens)
        if "norm" in obj and int(obj["norm"]) != I.norm:
            raise ValueError(f"declared norm {obj['norm']} != computed norm {I.norm}")
        return I

    # -- membership and arithmetic ----------------------------------------
    def contains_coords(self, i: int, j: int) -> bool:
        if j % self.c:
            return False
        return (i - (j // self.c) * self.b) % self.a == 0

    def __contains__(self, x: QElem | int) -> bool:
        if isinstance(x, int):
            x = self.field(x)
        return self.contains_coords(*x.basis_coords())

    def contains_ideal(self, other: Ideal) -> bool:
        return all(self.contains_coords(i, j) for i, j in other.zbasis())

    def divides(self, other: Ideal) -> bool:
        return self.contains_ideal(other)

    def __mul__(self, other: Ideal | QElem | int) -> Ideal:
        F = self.field
        if isinstance(other, (QElem, int)):
            other = Ideal.generated_by(F, other)
        if other.field != F:
            raise ValueError("ideals from different fields")
        vecs = [F.basis_mul(i1, j1, i2, j2)
                for i1, j1 in self.zbasis() for i2, j2 in other.zbasis()]
        return Ideal.from_zbasis(F, vecs)

    def __add__(self, other: Ideal) -> Ideal:
        return Ideal.from_zbasis(self.field, list(self.zbasis()) + list(other.zbasis()))

    def __pow__(self, n: int) -> Ideal:
        if n < 0:
            raise ValueError("negative powers of integral ideals are not integral")
        out = Ideal.unit(self.field)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self) -> Ideal:
        F = self.field
        vecs = [F.from_basis(i, j).conj().basis_coords() for i, j in self.zbasis()]
        vecs += [F.basis_mul(i, j, 0, 1) for i, j in vecs]
        return Ideal.from_zbasis(F, vecs)

    def div_int(self, n: int) -> Ideal:
        """self / n, assuming self is contained in n*O_K."""
        if self.a % n or self.b % n or self.c % n:
            raise ValueError(f"{self} is not divisible by {n}")
        return Ideal(self.field, self.a // n, self.b // n, self.c // n)

    def intersect(self, other: Ideal) -> Ideal:
        s = self + other
        return (self * other * s.conj()).div_int(s.norm)

    def exact_div(self, other: Ideal) -> Ideal:
        """self * other^-1, which must be integral."""
        if not other.contains_ideal(self):
            raise ValueError(f"{other} does not divide {self}")
        return (self * other.conj()).div_int(other.norm)

    def factor(self) -> list[tuple[PrimeIdeal, int]]:
        out = []
        rest = self
        for p in sorted(factorint(self.norm)):
            for P in primes_above(self.field, p):
                k = 0
                while P.contains_ideal(rest) and not rest.is_unit():
                    rest = rest.exact_div(P)
                    k += 1
                if k:
                    out.append((P, k))
        if not rest.is_unit():
            raise AssertionError(f"factorisation of {self} left {rest}")
        return out


class PrimeIdeal(Ideal):
    """Prime ideal of O_K together with its residue characteristic p,
    ramification index e and residue degree f."""

    def __init__(self, ideal: Ideal, p: int, e: int, f: int):
        super().__init__(ideal.field, ideal.a, ideal.b, ideal.c)
        self.p, self.e, self.f = p, e, f

    def __repr__(self):
        return f"PrimeIdeal(d={self.field.d}, {self}, p={self.p}, e={self.e}, f={self.f})"

    __hash__ = Ideal.__hash__

    @cached_property
    def uniformizer(self) -> QElem:
        """Element of valuation exactly one at this prime."""
        F = self.field
        sq = self * self
        for cand in _small_elements(F, 4 * self.p + 8):
            if cand in self and cand not in sq:
                return cand
        raise AssertionError("no uniformizer found")

    def residue_field_size(self) -> int:
        return self.norm


def _small_elements(F: FieldCtx, bound: int):
    for h in range(1, bound + 1):
        for i in range(-h, h + 1):
            for j in range(-h, h + 1):
                if max(abs(i), abs(j)) == h:
                    yield F.from_basis(i, j)


@lru_cache(maxsize=None)
def _primes_above_cached(d: int, p: int) -> tuple[PrimeIdeal, ...]:
    from .quadfield import FieldCtx as _FC
    F = _FC(d)
    return tuple(_primes_above(F, p))


def _primes_above(F: FieldCtx, p: int) -> list[PrimeIdeal]:
    # omega is a root of x^2 - t*x - k
    t, k = F.omega_trace, F.omega_const
    if p == 2:
        roots = [r for r in range(2) if (r * r - t * r - k) % 2 == 0]
    else:
        disc = t * t + 4 * k  # discriminant of the minimal polynomial
        inv2 = pow(2, -1, p)
        if disc % p == 0:
            roots = [t * inv2 % p]
        else:
            s = sqrt_mod(disc % p, p)
            roots = [] if s is None else sorted({(t + s) * inv2 % p, (t - s) * inv2 % p})
    if not roots:
        return [PrimeIdeal(Ideal.generated_by(F, p), p, 1, 2)]
    if len(roots) == 1 and (p == 2 or (t * t + 4 * k) % p == 0):
        # double root: ramified (for p = 2 a single root mod 2 means ramified)
        P = Ideal.generated_by(F, p, F.from_basis(-roots[0], 1))
        return [PrimeIdeal(P, p, 2, 1)]
    out = [PrimeIdeal(Ideal.generated_by(F, p, F.from_basis(-r, 1)), p, 1, 1) for r in roots]
    return sorted(out, key=lambda P: P.key())


def primes_above(F: FieldCtx, p: int) -> list[PrimeIdeal]:
    """Prime ideals over the rational prime p, sorted by normal form."""
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    out = []
    for P in _primes_above_cached(F.d, p):
        Q = PrimeIdeal(Ideal(F, P.a, P.b, P.c), P.p, P.e, P.f)
        out.append(Q)
    return out


def factor_rational_prime(F: FieldCtx, p: int) -> list[tuple[PrimeIdeal, int]]:
    return [(P, P.e) for P in primes_above(F, p)]


def primes_up_to_norm(F: FieldCtx, bound: int) -> list[PrimeIdeal]:
    """All prime ideals with norm <= bound, ordered by (norm, normal form)."""
    from sympy import primerange
    out = []
    for p in primerange(2, bound + 1):
        for P in primes_above(F, p):
            if P.norm <= bound:
                out.append(P)
    return sorted(out, key=lambda P: P.key())


def ideal_val(I: Ideal, P: PrimeIdeal) -> int:
    if P.field != I.field:
        raise ValueError("ideals from different fields")
    k = 0
    while P.contains_ideal(I) and not I.is_unit():
        I = I.exact_div(P)
        k += 1
    return k


def elem_val(x: QElem, P: PrimeIdeal) -> int:
    """P-adic valuation of a nonzero element."""
    if x.is_zero():
        raise ValueError("valuation of zero")
    # divide out the rational p first: v_P(p) = e
    k = 0
    F = x.field
    while x.content() % P.p == 0:
        i, j = x.basis_coords()
        x = F.from_basis(i // P.p, j // P.p)
        k += P.e
    if x not in P:
        return k
    return k + ideal_val(Ideal.generated_by(F, x), P)


def ideal_arith(I: Ideal, J: Ideal, op: str) -> Ideal:
    if op == "mul":
        return I * J
    if op == "sum":
        return I + J
    if op == "intersect":
        return I.intersect(J)
    raise ValueError(f"unknown ideal operation {op!r}")


def gcd_of_elements(a: QElem, b: QElem, c: QElem) -> Ideal:
    """The ideal aO + bO + cO."""
    F = a.field
    elems = [e for e in (a, b, c) if not e.is_zero()]
    if not elems:
        raise ValueError("all generators are zero")
    return Ideal.generated_by(F, *elems)


# -- residue rings -----------------------------------------------------------

class ResidueRing:
    """O_K / m with residues i + j*omega, 0 <= i < a, 0 <= j < c."""

    def __init__(self, m: Ideal):
        self.m = m
        self.F = m.field
        self._primes = [P for P, _ in m.factor()] if not m.is_unit() else []

    def reduce_coords(self, i: int, j: int) -> tuple[int, int]:
        m = self.m
        q = j // m.c
        j -= q * m.c
        i -= q * m.b
        return i % m.a, j

    def reduce(self, x: QElem) -> tuple[int, int]:
        return self.reduce_coords(*x.basis_coords())

    def mul(self, r: tuple[int, int], s: tuple[int, int]) -> tuple[int, int]:
        return self.reduce_coords(*self.F.basis_mul(r[0], r[1], s[0], s[1]))

    def is_unit(self, r: tuple[int, int]) -> bool:
        return all(not P.contains_coords(*r) for P in self._primes)

    def elements(self):
        for j in range(self.m.c):
            for i in range(self.m.a):
                yield (i, j)

    def units(self):
        return (r for r in self.elements() if self.is_unit(r))


def residue_unit_group(F: FieldCtx, m: Ideal) -> FinAbGroup:
    """(O_K/m)^* with a discrete log accepting elements coprime to m."""
    if m.norm > RESIDUE_NORM_LIMIT:
        raise CapacityError(f"norm {m.norm} exceeds {RESIDUE_NORM_LIMIT}")
    R = ResidueRing(m)
    one = R.reduce(F.one)
    grp = group_from_elements(R.units(), R.mul, one)
    inner = grp.dlog

    def dlog(x):
        r = R.reduce(x) if isinstance(x, QElem) else R.reduce_coords(*x)
        if not R.is_unit(r):
            raise ValueError(f"{x} is not coprime to the modulus {m}")
        return inner(r)

    grp.dlog = dlog
    grp.gens = [F.from_basis(*g) for g in grp.gens]
    grp.ring = R
    return grp


# -- principality ------------------------------------------------------------

def is_principal(I: Ideal) -> QElem | None:
    """A generator of I, or None.  Exhaustive over a unit-reduced box."""
    if I.norm > PRINCIPAL_NORM_LIMIT:
        raise CapacityError(f"norm {I.norm} exceeds {PRINCIPAL_NORM_LIMIT}")
    F = I.field
    d = F.d
    n = I.norm
    eps = F.fundamental_unit
    # after unit reduction alpha/alpha' lies in [1, eps^2): |alpha| <= eps*sqrt n,
    # |alpha'| <= sqrt n, so |y| sqrt d = |alpha - alpha'| <= (eps + 1) sqrt n
    eps_ceil = eps.x // 2 + abs(eps.y) * (isqrt(d) + 1)  # integer upper bound on eps
    ymax = ((eps_ceil + 1) * (isqrt(n) + 1)) // max(1, isqrt(d)) + 1
    for y in range(0, ymax + 1):
        for s in (4 * n, -4 * n):
            t = d * y * y + s
            if t < 0:
                continue
            x = isqrt(t)
            if x * x != t:
                continue
            for xx, yy in ((x, y), (x, -y)):
                try:
                    cand = QElem(F, xx, yy)
                except ValueError:
                    continue
                if cand in I:
                    return cand
    return None


def principal_generator(I: Ideal) -> QElem | None:
    """Generator of I, reducing large ideals first to keep the search small."""
    if I.norm <= 4096:
        return is_principal(I)
    J, num, den = reduce_ideal(I)
    g = is_principal(J)
    if g is None:
        return None
    return (num * g).exact_div(den)


def _shortest(I: Ideal) -> QElem:
    """Shortest nonzero element for the form alpha^2 + alpha'^2 = Tr(alpha^2)."""
    F = I.field
    u, v = I.gens()

    def ip(s: QElem, t: QElem) -> int:
        return (s * t).trace()

    # Lagrange-Gauss reduction with exact integer inner products
    if ip(u, u) < ip(v, v):
        u, v = v, u
    while True:
        # v is the shorter one
        if ip(u, u) < ip(v, v):
            u, v = v, u
        nv = ip(v, v)
        q_num = ip(u, v)
        q = (2 * q_num + nv) // (2 * nv)  # round(q_num / nv)
        w = u - v * q
        if ip(w, w) >= nv:
            return v
        u = w


def reduce_ideal(I: Ideal) -> tuple[Ideal, QElem, QElem]:
    """(J, num, den) with I = (num/den) * J and N(J) = O(sqrt disc)."""
    F = I.field
    a1 = _shortest(I)
    J1 = (Ideal.generated_by(F, a1) * I.conj()).div_int(I.norm)  # I*J1 = (a1)
    a2 = _shortest(J1)
    J2 = (Ideal.generated_by(F, a2) * J1.conj()).div_int(J1.norm)  # J1*J2 = (a2)
    # I = (a1) J1^-1 = (a1/a2) J2
    return J2, a1, a2


def equivalent(I: Ideal, J: Ideal) -> bool:
    """Whether I and J have the same ideal class."""
    return principal_generator(I * J.conj()) is not None
