"""Legendre-form curves y^2 = x(x-u)(x+v) over O_K: traces of Frobenius at
odd primes by point counting in the residue field, and the two certified
curves whose newforms survive the congruence sieve."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .freylevel import FreyInvariants, FreyTriple, dyadic_primes, frey_invariants
from .ideals import Ideal, PrimeIdeal, ResidueRing, elem_val
from .quadfield import FieldCtx, QElem, make_field


@dataclass(frozen=True)
class LegendreCurve:
    field: FieldCtx
    u: QElem
    v: QElem

    @property
    def triple(self) -> FreyTriple:
        return FreyTriple.from_uv(self.u, self.v)

    @property
    def invariants(self) -> FreyInvariants:
        return frey_invariants(self.triple)

    def has_good_reduction(self, q: PrimeIdeal) -> bool:
        """Odd q of good reduction for this model (its discriminant is a q-unit)."""
        return q.p != 2 and self.invariants.disc not in q

    def trace(self, q: PrimeIdeal) -> int:
        """a_q = N(q) + 1 - #E(F_q), by counting points over O_K/q."""
        if not self.has_good_reduction(q):
            raise ValueError(f"{q} is not a prime of good reduction for this model")
        R = ResidueRing(q)
        ru, rv = R.reduce(self.u), R.reduce(self.v)
        zero = (0, 0)
        squares: dict[tuple[int, int], int] = {}
        for x in R.elements():
            s = R.mul(x, x)
            squares[s] = squares.get(s, 0) + 1
        count = 1  # point at infinity
        for x in R.elements():
            f = R.mul(R.mul(x, _sub(R, x, ru)), _add(R, x, rv))
            count += squares.get(f, 0) if f != zero else 1
        return q.norm + 1 - count


def _add(R: ResidueRing, a, b):
    return R.reduce_coords(a[0] + b[0], a[1] + b[1])


def _sub(R: ResidueRing, a, b):
    return R.reduce_coords(a[0] - b[0], a[1] - b[1])


@dataclass(frozen=True)
class CertifiedCurve:
    name: str
    curve: LegendreCurve
    level: Ideal
    fact_key: str


@lru_cache(maxsize=None)
def e_prime() -> CertifiedCurve:
    """E': y^2 = x(x+1)(x+8+4*sqrt 3) over Q(sqrt 3), conductor (1+sqrt 3)^4."""
    F = make_field(3)
    (P,) = dyadic_primes(F)
    return CertifiedCurve("E'", LegendreCurve(F, F(-1), F(8, 4)), P ** 4, "NEWFORM_D3_P4")


@lru_cache(maxsize=None)
def w_curve() -> CertifiedCurve:
    """W: y^2 = x(x-4+sqrt 17)(x+(-13+5*sqrt 17)/2) over Q(sqrt 17), conductor (2)."""
    F = make_field(17)
    return CertifiedCurve("W", LegendreCurve(F, F(4, -1), F.half(-13, 5)),
                          Ideal.generated_by(F, 2), "NEWFORM_D17_2")


def multiplicative_min_disc_vals(c: CertifiedCurve) -> dict[Ideal, int]:
    """ord_P of the minimal discriminant at each dyadic prime, for a curve with
    multiplicative reduction there: equal to -ord_P(j)."""
    F = c.curve.field
    out = {}
    for P in dyadic_primes(F):
        jv = c.curve.invariants.j_val(P)
        if jv is None or jv >= 0:
            raise ValueError(f"{c.name} is not potentially multiplicative at {P}")
        out[P] = -jv
    return out


def model_disc_vals(c: CertifiedCurve) -> dict[Ideal, int]:
    return {P: elem_val(c.curve.invariants.disc, P) for P in dyadic_primes(c.curve.field)}


def w_certified_min_disc() -> dict[Ideal, int]:
    """Quoted constants: ord(Delta_min) is 4 at ((3+sqrt 17)/2) and 2 at ((3-sqrt 17)/2)."""
    F = make_field(17)
    return {Ideal.generated_by(F, F.half(3, 1)): 4, Ideal.generated_by(F, F.half(3, -1)): 2}
