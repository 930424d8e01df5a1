"""Newform elimination by Hecke eigenvalue congruences, the two survivor
arguments, and the field-level verdict."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from math import gcd, isqrt

from sympy import factorint, isprime, legendre_symbol

from .curves import (CertifiedCurve, e_prime, multiplicative_min_disc_vals, w_certified_min_disc,
                     w_curve)
from .freylevel import distinct_levels, dyadic_primes, frey_j_valuation, level_string
from .hecke import HeckeField
from .ideals import Ideal, PrimeIdeal
from .irred import IrredReport, irreducibility_report
from .quadfield import FieldCtx

PMIN = 17
PRIME_NORM_BOUND = 60
INERTIA_ORDERS = (1, 2, 3, 4, 6, 8, 24)


class DataGapError(LookupError):
    pass


@dataclass
class NewformRecord:
    d: int
    level: Ideal
    label: str
    hecke: HeckeField
    eigenvalues: dict[PrimeIdeal, list[int]]

    @property
    def rational(self) -> bool:
        return self.hecke.degree == 1

    def a(self, q: PrimeIdeal) -> list[int]:
        try:
            return self.eigenvalues[q]
        except KeyError:
            raise DataGapError(
                f"no eigenvalue for q={q} (d={self.d}, level={self.level}, form {self.label})"
            ) from None


def a_set(Nq: int) -> list[int]:
    """Integers a with |a| <= 2 sqrt(Nq) and Nq + 1 - a = 0 mod 4."""
    if Nq < 3:
        raise ValueError("Nq must be at least 3")
    r = isqrt(4 * Nq)
    return [a for a in range(-r, r + 1) if (Nq + 1 - a) % 4 == 0]


def b_fq(form: NewformRecord, q: PrimeIdeal) -> list[int]:
    """N(q)((N(q)+1)^2 - a_q^2) prod_{a in A}(a - a_q), as an element of Q_f."""
    if q.contains_ideal(form.level):
        raise ValueError(f"{q} divides the level")
    H = form.hecke
    aq = H.reduce(form.a(q))
    N = q.norm
    out = H.sub(H.const((N + 1) ** 2), H.mul(aq, aq))
    out = H.mul(out, H.const(N))
    for a in a_set(N):
        out = H.mul(out, H.sub(H.const(a), aq))
    return out


C_F_ZERO = "C_f = 0"


@dataclass
class SieveResult:
    label: str
    c_f_zero: bool
    survivors: list[int]
    flagged: list[int]
    candidates: list[int]
    norm_gcd: int
    primes_used: int

    @property
    def eliminated(self) -> bool:
        return not self.c_f_zero and not self.survivors

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "c_f": "0" if self.c_f_zero else None,
            "norm_gcd": self.norm_gcd,
            "survivors": self.survivors,
            "flagged": self.flagged,
            "candidates": self.candidates,
            "primes_used": self.primes_used,
        }


def sieve_primes(form: NewformRecord, bound: int = PRIME_NORM_BOUND) -> list[PrimeIdeal]:
    return sorted((q for q in form.eigenvalues
                   if q.norm < bound and not q.contains_ideal(form.level)),
                  key=lambda q: q.key())


def surviving_primes(form: NewformRecord, pmin: int = PMIN,
                     bound: int = PRIME_NORM_BOUND) -> SieveResult:
    qs = sieve_primes(form, bound)
    if not qs:
        raise DataGapError(f"form {form.label} has no usable eigenvalues")
    H = form.hecke
    bs = [b_fq(form, q) for q in qs]
    nonzero = [b for b in bs if not H.is_zero(b)]
    if not nonzero:
        return SieveResult(form.label, True, [], [], [], 0, len(qs))
    g = 0
    for b in nonzero:
        g = gcd(g, abs(H.norm(b)))
    candidates = sorted(p for p in factorint(g) if p >= pmin)
    survivors, flagged = [], []
    for p in candidates:
        if form.rational:
            survivors.append(p)
            continue
        if H.discriminant % p == 0:
            survivors.append(p)
            flagged.append(p)
            continue
        # some prime above p must contain every B_{f,q}
        member = [H.in_prime_above(b, p) for b in nonzero]
        if any(all(col) for col in zip(*member)):
            survivors.append(p)
    return SieveResult(form.label, False, survivors, flagged, candidates, g, len(qs))


# -- survivors ------------------------------------------------------------------

@dataclass(frozen=True)
class SurvivorOutcome:
    p: int
    eliminated: bool
    reason: str


def _check_prime(p: int):
    if not isinstance(p, int) or not isprime(p):
        raise ValueError(f"{p!r} is not prime")
    if p < PMIN:
        raise ValueError(f"p={p} is below {PMIN}")


def survivor_d3(p: int) -> SurvivorOutcome:
    """Inertia at P = (1+sqrt 3): potentially good for E' versus a Tate curve
    for the Frey curve."""
    _check_prime(p)
    c = e_prime()
    (P,) = dyadic_primes(c.curve.field)
    jv = c.curve.invariants.j_val(P)
    if jv is None or jv < 0:
        return SurvivorOutcome(p, False, "E' is not potentially good at P")
    # Frey side: ord_P(j) = 8 ord_P(2) - 6pt is negative and = 8 ord_P(2) mod p
    if frey_j_valuation(P, p, 1) >= 0 or (8 * P.e) % p == 0:
        return SurvivorOutcome(p, False, "Frey curve j-valuation does not force p | #inertia")
    if p in INERTIA_ORDERS:
        return SurvivorOutcome(p, False, f"{p} is a possible inertia order for E'")
    return SurvivorOutcome(
        p, True, f"p={p} must divide the inertia image order of E', which lies in "
        f"{set(INERTIA_ORDERS)}")


def survivor_d17(p: int) -> SurvivorOutcome:
    """Symplectic criterion at P1, P2 against W."""
    _check_prime(p)
    c = w_curve()
    F = c.curve.field
    S = dyadic_primes(F)
    w_vals = multiplicative_min_disc_vals(c)
    if w_vals != w_certified_min_disc():
        raise AssertionError(f"derived W discriminant valuations {w_vals} disagree with the quoted ones")
    # Frey curve: ord_P(Delta_min) = 4 ord_P(2) + 2pt - 12 = 4e - 12 mod p
    num = 1
    den = 1
    for P in S:
        num *= 4 * P.e - 12
        den *= w_vals[P]
    ratio = num * pow(den, -1, p) % p
    chi = legendre_symbol(ratio, p)
    if chi == -1:
        return SurvivorOutcome(p, True, f"ratio {ratio} is a non-square mod {p}")
    return SurvivorOutcome(p, False, f"ratio {ratio} is a square mod {p}")


def d17_congruence_classes() -> tuple[list[int], list[int]]:
    """(eliminated, retained) residues mod 8, read off survivor_d17 on primes."""
    elim, kept = set(), set()
    p = PMIN
    while len(elim | kept) < 4:
        if isprime(p):
            (elim if survivor_d17(p).eliminated else kept).add(p % 8)
        p += 1
    return sorted(elim), sorted(kept)


@dataclass
class SurvivorHandler:
    curve: CertifiedCurve
    kind: str  # "all" or "classes"


SURVIVOR_HANDLERS = {
    3: lambda: SurvivorHandler(e_prime(), "all"),
    17: lambda: SurvivorHandler(w_curve(), "classes"),
}


def matches_curve(form: NewformRecord, c: CertifiedCurve) -> bool:
    """True when the form is rational with eigenvalues equal to the curve's
    traces at every prime supplied."""
    if not form.rational or form.level != c.level or form.d != c.curve.field.d:
        return False
    for q, a in form.eigenvalues.items():
        if not c.curve.has_good_reduction(q):
            continue
        if form.hecke.reduce(a)[0] != c.curve.trace(q):
            return False
    return True


# -- verdict ------------------------------------------------------------------------

class Outcome(str, Enum):
    PROVEN_ALL = "PROVEN_ALL"
    PROVEN_CONGRUENCE_CLASSES = "PROVEN_CONGRUENCE_CLASSES"
    OBSTRUCTED = "OBSTRUCTED"
    DATA_INCOMPLETE = "DATA_INCOMPLETE"


@dataclass
class FormResolution:
    level: Ideal
    sieve: SieveResult
    resolution: str
    resolved: bool
    classes: list[int] | None = None

    def to_json(self, F: FieldCtx) -> dict:
        out = {"level": level_string(F, self.level), **self.sieve.to_json(),
               "resolution": self.resolution, "resolved": self.resolved}
        if self.classes is not None:
            out["eliminated_classes_mod_8"] = self.classes
        return out


@dataclass
class Verdict:
    d: int
    outcome: Outcome
    classes_mod_8: list[int] = field(default_factory=list)
    missing_levels: list[Ideal] = field(default_factory=list)
    surviving_forms: list[str] = field(default_factory=list)
    forms: list[FormResolution] = field(default_factory=list)
    empty_levels: list[Ideal] = field(default_factory=list)
    irred: IrredReport | None = None
    cited: list[str] = field(default_factory=list)

    @property
    def proven(self) -> bool:
        return self.outcome in (Outcome.PROVEN_ALL, Outcome.PROVEN_CONGRUENCE_CLASSES)


def _resolve(F: FieldCtx, level: Ideal, form: NewformRecord, cited: set[str]) -> FormResolution:
    res = surviving_primes(form)
    if res.eliminated:
        return FormResolution(level, res, "no prime p >= 17 divides C_f", True)
    handler_fn = SURVIVOR_HANDLERS.get(F.d)
    if res.c_f_zero and handler_fn is not None:
        h = handler_fn()
        if matches_curve(form, h.curve):
            cited.add(h.curve.fact_key)
            if h.kind == "all":
                cited.update({"KRAUS_INERTIA_ORDERS", "TATE_CURVE"})
                outs = [survivor_d3(p) for p in (17, 19, 23, 29, 31)]
                ok = all(o.eliminated for o in outs)
                return FormResolution(level, res, f"matches {h.curve.name}; inertia argument "
                                      "eliminates every p >= 17", ok)
            cited.update({"HALBERSTADT_KRAUS", "NEWFORM_D17_W_DISC"})
            elim, _ = d17_congruence_classes()
            return FormResolution(level, res, f"matches {h.curve.name}; symplectic criterion "
                                  f"eliminates p = {elim} mod 8", True, elim)
    why = "C_f = 0" if res.c_f_zero else f"survivors {res.survivors}"
    return FormResolution(level, res, f"unresolved ({why})", False)


def verdict(F: FieldCtx, dataset) -> Verdict:
    """Combine levels, irreducibility and the dataset into a theorem-level outcome."""
    cited = {"MODULARITY", "LEVEL_LOWERING", "AIGNER_SMALL_EXPONENTS", "GROSS_ROHRLICH",
             "TZERMIAS"}
    irred = irreducibility_report(F)
    cited.update(irred.cited)
    missing, empty, forms = [], [], []
    for level in distinct_levels(F):
        recs = dataset.forms_at(F.d, level) if dataset is not None else None
        if recs is None:
            missing.append(level)
            continue
        if not recs:
            empty.append(level)
            key = dataset.citation_for(F.d, level)
            if key:
                cited.add(key)
            continue
        for rec in recs:
            forms.append(_resolve(F, level, rec, cited))
    unresolved = [f"{level_string(F, r.level)}:{r.sieve.label}" for r in forms if not r.resolved]
    classes = sorted({c for r in forms if r.classes for c in r.classes})
    if not irred.clean or unresolved:
        outcome = Outcome.OBSTRUCTED
    elif missing:
        outcome = Outcome.DATA_INCOMPLETE
    elif classes:
        outcome = Outcome.PROVEN_CONGRUENCE_CLASSES
    else:
        outcome = Outcome.PROVEN_ALL
    return Verdict(F.d, outcome, classes, missing, unresolved, forms, empty, irred,
                   sorted(cited))
