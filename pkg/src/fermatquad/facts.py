"""Registry of results that are consumed as inputs, never recomputed.

Each entry names the claim, where it comes from, and which step relies on
it, so the trust boundary of a verdict can be audited by listing the keys a
report cites.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ExternalFact:
    key: str
    claim: str
    citation: str
    used_for: str


_FACTS = [
    ExternalFact(
        "MODULARITY",
        "Elliptic curves over real quadratic fields are modular.",
        "Freitas, Le Hung, Siksek, Invent. Math. 199 (2015)",
        "attaching a Hilbert newform to the Frey curve",
    ),
    ExternalFact(
        "LEVEL_LOWERING",
        "An irreducible mod-p representation of a modular Frey curve arises from a "
        "Hilbert newform of parallel weight 2 at the level N_p.",
        "Fujiwara; Jarvis; Rajaei (level lowering over totally real fields)",
        "passing from the Frey curve to newforms at predicted levels",
    ),
    ExternalFact(
        "AIGNER_SMALL_EXPONENTS",
        "Non-trivial solutions of x^n + y^n = z^n for n = 4, 6, 9 in quadratic fields "
        "occur only over imaginary quadratic fields.",
        "Aigner, Monatsh. Math. 56 (1952) and 60 (1956)",
        "reducing n >= 4 to prime exponents p >= 5",
    ),
    ExternalFact(
        "GROSS_ROHRLICH",
        "For p = 5, 7, 11 the only non-trivial quadratic solutions are permutations "
        "of (1, w, w^2) with w a primitive cube root of unity.",
        "Gross, Rohrlich, Invent. Math. 44 (1978), Theorem 5",
        "excluding p = 5, 7, 11 over real quadratic fields",
    ),
    ExternalFact(
        "TZERMIAS",
        "The same conclusion holds for p = 13.",
        "Tzermias, Proc. AMS (2007)",
        "excluding p = 13",
    ),
    ExternalFact(
        "OZMAN_X0_34",
        "All quadratic points on X_0(34) are defined over Q(i), Q(sqrt -2) or Q(sqrt -15).",
        "Ozman, Int. J. Number Theory (2012)",
        "irreducibility at p = 17 over real quadratic fields",
    ),
    ExternalFact(
        "KKM_QUADRATIC_TORSION",
        "A point of prime order p on an elliptic curve over a quadratic field forces p <= 13.",
        "Kamienny; Kenku, Momose",
        "case (i) with theta of order 1",
    ),
    ExternalFact(
        "DKSS_QUARTIC_TORSION",
        "A point of prime order p on an elliptic curve over a quartic field forces p <= 17.",
        "Derickx, Kamienny, Stein, Stoll",
        "case (i) with theta of order 2 or 4",
    ),
    ExternalFact(
        "KRAUS_INERT",
        "At a prime of semistable reduction inert over p, at most one of the "
        "reducibility characters is ramified.",
        "Kraus, Lemma 1 (courbes elliptiques semi-stables sur les corps quadratiques)",
        "routing inert p to case (i)",
    ),
    ExternalFact(
        "SERRE_INERTIA",
        "Inertia at a prime above p acts through fundamental characters of level 1 or 2 "
        "according to ordinary or supersingular reduction.",
        "Serre, Invent. Math. 15 (1972), Propositions 10 and 12",
        "cases (iia) and (iib)",
    ),
    ExternalFact(
        "KRAUS_INERTIA_ORDERS",
        "For potentially good reduction at a dyadic prime the image of inertia has "
        "order in {1, 2, 3, 4, 6, 8, 24}; when ord(Delta) = 4 it is cyclic of order 3 or 6, "
        "or SL_2(F_3).",
        "Kraus, Manuscripta Math. 69 (1990), Theorem 3",
        "the exponent n = 6 for inert 2 and the d = 3 survivor",
    ),
    ExternalFact(
        "TATE_CURVE",
        "Potentially multiplicative reduction with p not dividing ord(j) makes p divide "
        "the order of the inertia image.",
        "Silverman, Advanced Topics, Proposition V.6.1",
        "the d = 3 survivor",
    ),
    ExternalFact(
        "HALBERSTADT_KRAUS",
        "Two curves with multiplicative reduction at q1, q2 and isomorphic mod-p "
        "representations have ratio ord(D1)ord(D2)/(ord(D1')ord(D2')) a square mod p "
        "when the isomorphism is symplectic, a non-square when anti-symplectic; "
        "a mismatch of quadratic characters rules out the isomorphism.",
        "Halberstadt, Kraus, Lemma 1.6 (proof valid over number fields)",
        "the d = 17 survivor",
    ),
    ExternalFact(
        "NEWFORM_D3_P4",
        "Over Q(sqrt 3) the space of newforms at level (1+sqrt 3)^4 is one-dimensional, "
        "with rational eigenvalues matching y^2 = x(x+1)(x+8+4 sqrt 3).",
        "Hilbert modular forms computation (ingested)",
        "identifying the surviving form at d = 3",
    ),
    ExternalFact(
        "NEWFORM_D17_2",
        "Over Q(sqrt 17) the space of newforms at level (2) is one-dimensional, "
        "with rational eigenvalues matching y^2 = x(x-4+sqrt 17)(x+(-13+5 sqrt 17)/2).",
        "Hilbert modular forms computation (ingested)",
        "identifying the surviving form at d = 17",
    ),
    ExternalFact(
        "NEWFORM_D17_W_DISC",
        "The curve W has conductor (2) and minimal discriminant valuations 4 and 2 at "
        "P1 = ((3+sqrt 17)/2) and P2 = ((3-sqrt 17)/2).",
        "certified constant quoted with the curve",
        "the d = 17 symplectic criterion",
    ),
    ExternalFact(
        "JARVIS_MEEKIN",
        "There are no Hilbert newforms of parallel weight 2 and level (sqrt 2) over Q(sqrt 2).",
        "Jarvis, Meekin, J. Number Theory 109 (2004)",
        "the empty level for d = 2",
    ),
    ExternalFact(
        "IRRED_Q79",
        "For Q(sqrt 79) the mod-p Frey representation is irreducible for p >= 17, by a "
        "variant of the ray class group argument.",
        "claimed without computational detail in the source of the d = 79 theorem",
        "clearing the order-3 part of the narrow ray class groups for d = 79",
    ),
]

REGISTRY: dict[str, ExternalFact] = {f.key: f for f in _FACTS}

# torsion bounds used by case (i): order of theta -> largest possible prime
TORSION_BOUND_BY_ORDER = {1: 13, 2: 17, 4: 17}
SMALL_PRIME_FACTS = {5: "GROSS_ROHRLICH", 7: "GROSS_ROHRLICH", 11: "GROSS_ROHRLICH",
                     13: "TZERMIAS"}
# additional per-field citations that clear an obstruction the computation surfaces
FIELD_OVERRIDES = {79: "IRRED_Q79"}


def fact(key: str) -> ExternalFact:
    return REGISTRY[key]
