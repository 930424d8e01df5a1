"""Frey curve y^2 = x(x-u)(x+v): invariants, local reduction at odd primes,
dyadic conductor exponents via unit scaling, and the predicted levels."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .abgroup import FinAbGroup
from .classgroup import h_set
from .ideals import (
    Ideal,
    PrimeIdeal,
    ResidueRing,
    elem_val,
    primes_above,
    principal_generator,
    residue_unit_group,
)
from .quadfield import FieldCtx, QElem, make_field

GOOD = "good"
MULTIPLICATIVE = "multiplicative"
ADDITIVE_POT_MULT = "additive_pot_mult"
ADDITIVE_POT_GOOD = "additive_pot_good"

SCENARIO_DIVIDES = "P | abc"
SCENARIO_COPRIME = "P ∤ abc"


@dataclass(frozen=True)
class FreyTriple:
    u: QElem
    v: QElem
    w: QElem

    def __post_init__(self):
        if not (self.u + self.v + self.w).is_zero():
            raise ValueError("u + v + w must vanish")
        if (self.u * self.v * self.w).is_zero():
            raise ValueError("u*v*w must be nonzero")

    @classmethod
    def from_uv(cls, u: QElem, v: QElem) -> FreyTriple:
        return cls(u, v, -(u + v))

    @classmethod
    def from_solution(cls, a: QElem, b: QElem, c: QElem, p: int) -> FreyTriple:
        """The triple (a^p, b^p, c^p) attached to a^p + b^p + c^p = 0."""
        return cls(a ** p, b ** p, c ** p)

    def scaled(self, xi: QElem) -> FreyTriple:
        return FreyTriple(xi * self.u, xi * self.v, xi * self.w)

    def valuations(self, q: PrimeIdeal) -> tuple[int, int, int]:
        return elem_val(self.u, q), elem_val(self.v, q), elem_val(self.w, q)


@dataclass(frozen=True)
class FreyInvariants:
    c4: QElem
    c6: QElem
    disc: QElem

    @property
    def j_pair(self) -> tuple[QElem, QElem]:
        """j as the formal quotient (c4^3, disc)."""
        return self.c4 ** 3, self.disc

    def j_val(self, P: PrimeIdeal) -> int | None:
        """ord_P(j); None when c4 = 0 (j = 0)."""
        if self.c4.is_zero():
            return None
        return 3 * elem_val(self.c4, P) - elem_val(self.disc, P)

    def j_rational(self):
        """j as a Fraction when it lies in Q, else None."""
        from fractions import Fraction

        num, den = self.j_pair
        # num/den = num*conj(den)/N(den)
        top = num * den.conj()
        n = den.norm()
        if top.y != 0:
            return None
        return Fraction(top.x, 2 * n)


def frey_invariants(t: FreyTriple) -> FreyInvariants:
    u, v, w = t.u, t.v, t.w
    c4 = 16 * (u * u - v * w)
    c6 = -32 * (u - v) * (v - w) * (w - u)
    disc = 16 * u * u * v * v * w * w
    return FreyInvariants(c4, c6, disc)


# -- odd primes ----------------------------------------------------------------

@dataclass(frozen=True)
class LocalData:
    prime: Ideal
    reduction_type: str
    ord_min_disc: int
    conductor_exp: int


def local_type_from_valuations(q: Ideal, vals: tuple[int, int, int]) -> LocalData:
    """Reduction type at an odd prime from (ord u, ord v, ord w)."""
    s = min(vals)
    equal = vals[0] == vals[1] == vals[2]
    total = 2 * sum(vals)
    if s % 2 == 0:
        rtype = GOOD if equal else MULTIPLICATIVE
        return LocalData(q, rtype, total - 6 * s, 0 if equal else 1)
    rtype = ADDITIVE_POT_GOOD if equal else ADDITIVE_POT_MULT
    # after scaling by pi^(s-1) the model is minimal
    return LocalData(q, rtype, total - 6 * (s - 1), 2)


def odd_local_type(t: FreyTriple, q: PrimeIdeal) -> LocalData:
    if q.p == 2:
        raise ValueError(f"{q} lies over 2")
    return local_type_from_valuations(q, t.valuations(q))


@dataclass(frozen=True)
class OddLevelPart:
    m: Ideal
    np_odd: Ideal
    n_odd_shape: str


def odd_level_parts(F: FieldCtx) -> list[OddLevelPart]:
    out = []
    for m in h_set(F):
        head = "1" if m.is_unit() else f"{m}^2"
        shape = f"{head} * r^(0|1) * prod(q | abc, q odd, q != m, r)"
        out.append(OddLevelPart(m, m * m, shape))
    return out


# -- dyadic primes ---------------------------------------------------------------

def dyadic_primes(F: FieldCtx) -> list[PrimeIdeal]:
    return primes_above(F, 2)


def dyadic_modulus(F: FieldCtx) -> Ideal:
    """b = prod over P | 2 of P^(2 ord_P(2) + 1)."""
    b = Ideal.unit(F)
    for P in dyadic_primes(F):
        b = b * P ** (2 * P.e + 1)
    return b


def local_quad_discriminant(lam: QElem, P: PrimeIdeal) -> int:
    """ord_P of the discriminant of K_P(sqrt(lam)) / K_P."""
    if P.p != 2:
        raise ValueError("only dyadic primes are supported")
    if lam.is_zero():
        raise ValueError("lambda must be nonzero")
    e = P.e
    v = elem_val(lam, P)
    if v % 2:
        return 2 * e + 1
    if v:
        lam = _unit_part(lam, P, v)
    # maximise t with a^2 = lam mod P^(2t), t <= e; residues mod P^(e+1) suffice
    R = ResidueRing(P ** (e + 1))
    best = 0
    for r in R.units():
        diff = P.field.from_basis(*r) ** 2 - lam
        k = 2 * e if diff.is_zero() else min(elem_val(diff, P), 2 * e)
        best = max(best, k)
        if best >= 2 * e:
            break
    return 2 * e - 2 * (best // 2)


def _unit_part(lam: QElem, P: PrimeIdeal, v: int) -> QElem:
    """A P-unit mu with lam = pi^v * mu modulo P^(v + 2e + 1)."""
    pi_v = P.uniformizer ** v
    target = P ** (v + 2 * P.e + 1)
    R = ResidueRing(P ** (2 * P.e + 1))
    F = P.field
    for r in R.units():
        mu = F.from_basis(*r)
        if (pi_v * mu - lam) in target:
            return mu
    raise AssertionError("no unit part found")


def even_conductor_exponent(lam: QElem, P: PrimeIdeal) -> int:
    D = local_quad_discriminant(lam, P)
    return 1 if D == 0 else 2 * D


@dataclass
class SquareClasses:
    """(O_K/b)^* modulo squares as an F_2-vector space, with the unit image."""

    field: FieldCtx
    modulus: Ideal
    group: FinAbGroup
    even_slots: list[int]
    unit_images: list[tuple[int, ...]]

    @property
    def dim(self) -> int:
        return len(self.even_slots)

    def vector(self, x: QElem) -> tuple[int, ...]:
        vec = self.group.dlog(x)
        return tuple(vec[i] % 2 for i in self.even_slots)

    def image_span(self) -> list[tuple[int, ...]]:
        span = {tuple(0 for _ in self.even_slots)}
        for g in self.unit_images:
            span |= {_xor(s, g) for s in span}
        return sorted(span)

    def coset_label(self, vec: tuple[int, ...]) -> tuple[int, ...]:
        return min(_xor(vec, w) for w in self.image_span())

    def cokernel_order(self) -> int:
        return 2 ** self.dim // len(self.image_span())


def _xor(a, b):
    return tuple(x ^ y for x, y in zip(a, b))


@lru_cache(maxsize=None)
def _square_classes(d: int) -> SquareClasses:
    F = make_field(d)
    b = dyadic_modulus(F)
    G = residue_unit_group(F, b)
    even = [i for i, n in enumerate(G.invariants) if n % 2 == 0]
    sc = SquareClasses(F, b, G, even, [])
    sc.unit_images = [sc.vector(-F.one), sc.vector(F.fundamental_unit)]
    return sc


def square_classes(F: FieldCtx) -> SquareClasses:
    return _square_classes(F.d)


def _height_order(F: FieldCtx, radius: int):
    pts = [(i, j) for i in range(-radius, radius + 1) for j in range(-radius, radius + 1)]
    pts.sort(key=lambda ij: (max(abs(ij[0]), abs(ij[1])), abs(ij[0]) + abs(ij[1]),
                             abs(ij[1]), ij[0] < 0, ij[1] < 0))
    for i, j in pts:
        yield F.from_basis(i, j)


def _class_representatives(sc: SquareClasses) -> dict[tuple[int, ...], QElem]:
    """Smallest-height element of O_K in each square class of (O_K/b)^*."""
    F = sc.field
    reps: dict[tuple[int, ...], QElem] = {}
    radius = 8
    while len(reps) < 2 ** sc.dim:
        for x in _height_order(F, radius):
            if not sc.group.ring.is_unit(sc.group.ring.reduce(x)):
                continue
            reps.setdefault(sc.vector(x), x)
        radius *= 2
    return reps


@dataclass(frozen=True)
class CokernelClass:
    lam: QElem
    square_class: tuple[int, ...]
    coset: tuple[int, ...]
    exponents: tuple[int, ...]  # per dyadic prime, in dyadic_primes order
    even_part: Ideal


def _even_part(F: FieldCtx, lam: QElem) -> tuple[tuple[int, ...], Ideal]:
    exps = tuple(even_conductor_exponent(lam, P) for P in dyadic_primes(F))
    part = Ideal.unit(F)
    for P, k in zip(dyadic_primes(F), exps):
        part = part * P ** k
    return exps, part


@lru_cache(maxsize=None)
def _cokernel(d: int) -> tuple[CokernelClass, ...]:
    F = make_field(d)
    sc = square_classes(F)
    reps = _class_representatives(sc)
    # the four rescalings of the remark: lam, -lam, u*lam, -u*lam
    shifts = [(0,) * sc.dim, sc.unit_images[0], sc.unit_images[1],
              _xor(sc.unit_images[0], sc.unit_images[1])]
    seen = set()
    out = []
    for vec in sorted(reps, key=lambda c: (c != (0,) * sc.dim, reps[c].norm() ** 2, c)):
        label = sc.coset_label(vec)
        if label in seen:
            continue
        seen.add(label)
        best = None
        for k, s in enumerate(shifts):
            cls = _xor(vec, s)
            lam = reps[cls]
            exps, part = _even_part(F, lam)
            key = (part.norm, k)
            if best is None or key < best[0]:
                best = (key, CokernelClass(lam, cls, label, exps, part))
        out.append(best[1])
    return tuple(out)


def cokernel_classes(F: FieldCtx) -> list[CokernelClass]:
    return list(_cokernel(F.d))


def unit_square_cokernel(F: FieldCtx) -> list[QElem]:
    """Representatives lambda of coker(O_K^* -> (O_K/b)^*/squares), each
    normalised to minimise the even part of the level."""
    return [c.lam for c in cokernel_classes(F)]


# -- level prediction -------------------------------------------------------------

@dataclass(frozen=True)
class LevelPrediction:
    m: Ideal
    odd_part: Ideal
    even_part: Ideal
    lambda_class: QElem | None
    scenario: str
    exponents: tuple[int, ...] = field(default=())

    @property
    def level(self) -> Ideal:
        return self.odd_part * self.even_part


def even_rows(F: FieldCtx) -> list[tuple[QElem | None, str, tuple[int, ...], Ideal]]:
    """Rows (lambda, scenario, exponents, even part), independent of m."""
    rows = [(c.lam, SCENARIO_DIVIDES, c.exponents, c.even_part) for c in cokernel_classes(F)]
    if F.two_splitting == "inert":
        (P,) = dyadic_primes(F)
        rows.append((None, SCENARIO_COPRIME, (4,), P ** 4))
    return rows


def predict_levels(F: FieldCtx) -> list[LevelPrediction]:
    out = []
    for part in odd_level_parts(F):
        for lam, scen, exps, even in even_rows(F):
            out.append(LevelPrediction(part.m, part.np_odd, even, lam, scen, exps))
    return out


def distinct_levels(F: FieldCtx) -> list[Ideal]:
    seen: dict[Ideal, None] = {}
    for pred in predict_levels(F):
        seen.setdefault(pred.level, None)
    return sorted(seen, key=lambda I: I.key())


def frey_j_valuation(P: PrimeIdeal, p: int, t: int) -> int:
    """ord_P(j) of the Frey curve when P divides exactly one of a, b, c with
    ord_P(abc) = t >= 1."""
    return 8 * P.e - 6 * p * t


def describe_prime(P: Ideal) -> str:
    g = principal_generator(P)
    return f"({g})" if g is not None else str(P)


def level_string(F: FieldCtx, I: Ideal) -> str:
    """Level written over the dyadic primes and H, e.g. 'P^8 * m^2'."""
    if I.is_unit():
        return "(1)"
    S = dyadic_primes(F)
    names = {P: "P" if len(S) == 1 else f"P{k + 1}" for k, P in enumerate(S)}
    parts = []
    for Q, k in I.factor():
        name = names.get(Q, str(Q))
        parts.append(name if k == 1 else f"{name}^{k}")
    return " * ".join(parts)


__all__ = [
    "FreyTriple", "FreyInvariants", "LocalData", "LevelPrediction", "OddLevelPart",
    "CokernelClass", "SquareClasses", "frey_invariants", "odd_local_type",
    "local_type_from_valuations", "odd_level_parts", "unit_square_cokernel",
    "cokernel_classes", "square_classes", "local_quad_discriminant",
    "even_conductor_exponent", "predict_levels", "distinct_levels", "even_rows",
    "dyadic_primes", "dyadic_modulus", "frey_j_valuation", "level_string",
    "describe_prime",
]
