"""Irreducibility of the mod-p Frey representation for p >= 17.

Three routes: (i) one reducibility character is unramified at p, so it is a
character of a narrow ray class group and torsion bounds apply; (iia) p
ramifies (d = p) and a Frobenius congruence rules out supersingular
reduction; (iib) p splits and must divide norm(u^n - 1).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from sympy import factorint, isprime

from . import facts
from .classgroup import RayClassGroup, ray_class_group
from .freylevel import dyadic_primes, predict_levels
from .ideals import Ideal
from .quadfield import FieldCtx, QElem, totally_positive_unit_generator

PMIN = 17


def theta_moduli(F: FieldCtx) -> list[Ideal]:
    """Square roots of the additive parts of the conductor, one per level row."""
    seen: dict[Ideal, None] = {}
    for pred in predict_levels(F):
        N = pred.m
        for P, eps in zip(dyadic_primes(F), pred.exponents):
            if eps >= 2:
                N = N * P ** (eps // 2)
        seen.setdefault(N, None)
    return sorted(seen, key=lambda I: I.key())


@dataclass
class RayEvidence:
    modulus: Ideal
    group: RayClassGroup
    exponent: int

    @property
    def divides_four(self) -> bool:
        return 4 % self.exponent == 0

    def routes(self) -> list[str]:
        """Torsion-bound facts covering each possible order of theta."""
        if not self.divides_four:
            return []
        keys = ["KKM_QUADRATIC_TORSION"]
        if self.exponent > 1:
            keys.append("DKSS_QUARTIC_TORSION")
        return keys


def case_i_exponents(F: FieldCtx) -> list[RayEvidence]:
    out = []
    for N in theta_moduli(F):
        G = ray_class_group(F, N, "both")
        out.append(RayEvidence(N, G, G.exponent))
    return out


@dataclass(frozen=True)
class SupersingularOutcome:
    p: int
    q0_norm: int
    n: int
    residue: int

    @property
    def congruent(self) -> bool:
        return self.residue == 1

    @property
    def eliminated(self) -> bool:
        return not self.congruent


def supersingular_check(F: FieldCtx | None, p: int, q0_norm: int, n: int) -> SupersingularOutcome:
    """Test norm(q0)^n = 1 (mod p); failure rules out supersingular reduction."""
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    return SupersingularOutcome(p, q0_norm, n, pow(q0_norm, n, p))


@dataclass
class IIbOutcome:
    n: int
    unit: QElem
    norm_value: int
    factors: dict[int, int]
    large_primes: list[int]

    def remultiplied(self) -> int:
        out = 1
        for q, k in self.factors.items():
            out *= q ** k
        return out


def iib_exponent(F: FieldCtx) -> int:
    # dyadic potentially good reduction (inert 2) forces theta^6
    return 6 if F.two_splitting == "inert" else 2


def case_iib_check(F: FieldCtx) -> IIbOutcome:
    u = totally_positive_unit_generator(F)
    n = iib_exponent(F)
    val = (u ** n - 1).norm()
    assert val != 0, "u^n = 1 for a non-torsion unit"
    fac = {int(q): int(k) for q, k in sorted(factorint(abs(val)).items())}
    large = [q for q in fac if q >= 19]
    return IIbOutcome(n, u, val, fac, large)


def splitting_of(F: FieldCtx, p: int) -> str:
    if F.disc % p == 0:
        return "ramified"
    from sympy import jacobi_symbol

    return "split" if jacobi_symbol(F.disc % p, p) == 1 else "inert"


@dataclass
class IrredReport:
    d: int
    case_i: list[RayEvidence]
    case_iia: list[SupersingularOutcome]
    case_iib: IIbOutcome
    residual: list[int] = field(default_factory=list)
    obstructions: list[str] = field(default_factory=list)
    resolved_by: list[str] = field(default_factory=list)
    cited: list[str] = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not self.residual and not self.obstructions

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "case_i": [
                {"modulus": N.modulus.to_json(), "modulus_str": str(N.modulus),
                 "group": N.group.structure(), "exponent": N.exponent,
                 "divides_4": N.divides_four}
                for N in self.case_i
            ],
            "case_iia": [
                {"p": s.p, "q0_norm": s.q0_norm, "n": s.n, "residue": s.residue,
                 "eliminated": s.eliminated}
                for s in self.case_iia
            ],
            "case_iib": {
                "n": self.case_iib.n, "u": str(self.case_iib.unit),
                "norm": self.case_iib.norm_value,
                "factors": {str(q): k for q, k in self.case_iib.factors.items()},
            },
            "residual": self.residual,
            "obstructions": self.obstructions,
            "resolved_by": self.resolved_by,
            "cited": self.cited,
            "clean": self.clean,
        }


def irreducibility_report(F: FieldCtx) -> IrredReport:
    cited = {"OZMAN_X0_34", "KRAUS_INERT", "SERRE_INERTIA"}
    obstructions: list[str] = []
    resolved: list[str] = []

    case_i = case_i_exponents(F)
    for ev in case_i:
        cited.update(ev.routes())
        if not ev.divides_four:
            msg = (f"case (i): ray class group {ev.group.structure()} for modulus "
                   f"{ev.modulus} has exponent {ev.exponent}, not dividing 4")
            override = facts.FIELD_OVERRIDES.get(F.d)
            if override:
                resolved.append(f"{msg}; cleared by {override}")
                cited.add(override)
            else:
                obstructions.append(msg)

    iib = case_iib_check(F)
    if F.two_splitting == "inert":
        cited.add("KRAUS_INERTIA_ORDERS")

    residual: list[int] = []
    case_iia: list[SupersingularOutcome] = []
    ramified_large = sorted({q for q in factorint(F.disc) if q >= 19})
    candidates = sorted(set(iib.large_primes) | set(ramified_large))
    for p in candidates:
        how = splitting_of(F, p)
        if how == "inert":
            continue  # covered by case (i)
        if how == "split":
            residual.append(p)
            continue
        # ramified: supersingular subcase via a potentially multiplicative dyadic prime
        if F.d != p:
            obstructions.append(f"case (iia): p={p} ramifies but d != p")
            continue
        q0 = [P for P in dyadic_primes(F) if P.f == 1]
        if not q0:
            obstructions.append(f"case (iia): no dyadic prime of degree 1 for p={p}")
            continue
        for ev in case_i:
            out = supersingular_check(F, p, q0[0].norm, ev.exponent)
            case_iia.append(out)
            if not out.eliminated:
                obstructions.append(
                    f"case (iia): {q0[0].norm}^{ev.exponent} = 1 mod {p} for modulus {ev.modulus}")
    return IrredReport(F.d, case_i, case_iia, iib, residual, obstructions, resolved,
                       sorted(cited))
