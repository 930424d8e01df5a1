"""Class groups, odd representatives of Cl(K)/Cl(K)^2, and narrow ray class
groups of real quadratic fields."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import isqrt

from .abgroup import FinAbGroup, Presentation
from .ideals import (
    CapacityError,
    Ideal,
    PrimeIdeal,
    equivalent,
    primes_up_to_norm,
    principal_generator,
    reduce_ideal,
    residue_unit_group,
)
from .quadfield import FieldCtx, QElem, make_field

CLASS_GROUP_DISC_LIMIT = 10**4


@dataclass
class ClassGroupData:
    field: FieldCtx
    group: FinAbGroup
    # ideal representing each Smith generator, and gamma with gen^order = (gamma)
    generator_ideals: list[Ideal]
    certificates: list[QElem]
    prime_table: dict[Ideal, tuple[int, ...]] = field(default_factory=dict)
    _reps: list[tuple[Ideal, tuple[int, ...]]] = field(default_factory=list, repr=False)
    _pres: Presentation | None = field(default=None, repr=False)

    @property
    def order(self) -> int:
        return self.group.order

    def dlog(self, I: Ideal) -> tuple[int, ...]:
        J = reduce_ideal(I)[0] if I.norm > 64 else I
        for R, vec in self._reps:
            if equivalent(J, R):
                if self._pres is None:
                    return ()
                return self._pres.coords(list(vec) + [0] * (self._pres.ngens - len(vec)))
        raise AssertionError(f"class of {I} not found")

    def coset_mod_squares(self, I: Ideal) -> tuple[int, ...]:
        v = self.dlog(I)
        return tuple(x % 2 for x, d in zip(v, self.group.invariants) if d % 2 == 0)

    def quotient_by_squares_order(self) -> int:
        return 2 ** sum(1 for d in self.group.invariants if d % 2 == 0)

    def rep_coprime_to(self, vec: tuple[int, ...], m: Ideal) -> PrimeIdeal:
        """Smallest prime ideal coprime to m in the class with coordinates vec."""
        target = self.group.reduce(vec)
        bound = 50
        while True:
            for P in primes_up_to_norm(self.field, bound):
                if P.contains_ideal(m) and not m.is_unit():
                    continue
                if self.dlog(P) == target:
                    return P
            bound *= 4


def _reduced(I: Ideal) -> Ideal:
    return reduce_ideal(I)[0] if I.norm > 64 else I


def class_group(F: FieldCtx) -> ClassGroupData:
    return _class_group_cached(F.d)


@lru_cache(maxsize=None)
def _class_group_cached(d: int) -> ClassGroupData:
    F = make_field(d)
    if F.disc > CLASS_GROUP_DISC_LIMIT:
        raise CapacityError(f"discriminant {F.disc} exceeds {CLASS_GROUP_DISC_LIMIT}")
    # Minkowski bound sqrt(disc)/2
    mink = isqrt(F.disc) // 2 + 1
    primes = [P for P in primes_up_to_norm(F, mink) if 4 * P.norm * P.norm <= F.disc]
    reps: list[tuple[Ideal, tuple[int, ...]]] = [(Ideal.unit(F), ())]

    def lookup(J):
        for R, vec in reps:
            if equivalent(J, R):
                return vec
        return None

    gens: list[Ideal] = []
    relations: list[list[int]] = []
    for P in primes:
        if lookup(P) is not None:
            continue
        t = len(gens)
        k, cur = 1, P
        while True:
            v = lookup(cur)
            if v is not None:
                break
            cur = _reduced(cur * P)
            k += 1
        rel = [-c for c in v] + [0] * (t - len(v)) + [k]
        relations = [r + [0] for r in relations] + [rel]
        gens.append(P)
        new = []
        for R, vec in reps:
            cur = R
            base = list(vec) + [0] * (t - len(vec))
            for i in range(k):
                new.append((cur, tuple(base + [i])))
                cur = _reduced(cur * P)
        reps = new
    if not gens:
        grp = FinAbGroup((), [], None)
        data = ClassGroupData(F, grp, [], [], _reps=reps)
    else:
        pres = Presentation(len(gens), relations)
        gen_ideals = []
        certs = []
        for coeffs, order in zip(pres.generator_vectors(), pres.invariants):
            I = Ideal.unit(F)
            for P, c in zip(gens, coeffs):
                Q = P if c >= 0 else P.conj()
                for _ in range(abs(c)):
                    I = _reduced(I * Q)
            gen_ideals.append(I)
        grp = FinAbGroup(pres.invariants, gen_ideals, None)
        data = ClassGroupData(F, grp, gen_ideals, certs, _reps=reps, _pres=pres)
        for I, order in zip(gen_ideals, pres.invariants):
            g = principal_generator(I ** order)
            if g is None:
                raise AssertionError(f"{I}^{order} is not principal")
            certs.append(g)
    data.group.dlog = data.dlog
    for P in primes:
        data.prime_table[P] = data.dlog(P)
    return data


@dataclass
class HSet:
    """Odd prime representatives (plus the unit ideal) of Cl(K)/Cl(K)^2."""

    field: FieldCtx
    members: list[Ideal]

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)


def h_set(F: FieldCtx) -> HSet:
    cg = class_group(F)
    r = cg.quotient_by_squares_order()
    trivial = tuple(0 for d in cg.group.invariants if d % 2 == 0)
    found: dict[tuple[int, ...], Ideal] = {trivial: Ideal.unit(F)}
    bound = 50
    while len(found) < r:
        for P in primes_up_to_norm(F, bound):
            if P.p == 2:
                continue
            c = cg.coset_mod_squares(P)
            if c not in found:
                found[c] = P
        bound *= 2
    members = [found[trivial]] + sorted(
        (I for c, I in found.items() if c != trivial), key=lambda I: I.key())
    return HSet(F, members)


# -- ray class groups ----------------------------------------------------------

def _infinite_flags(infinite_places) -> tuple[bool, bool]:
    if infinite_places in ("both", True):
        return True, True
    if infinite_places in ("none", None, False):
        return False, False
    a, b = infinite_places
    return bool(a), bool(b)


@dataclass
class RayClassGroup(FinAbGroup):
    modulus: Ideal | None = None
    infinite: tuple[bool, bool] = (True, True)
    unit_image_order: int = 0
    residue_group: FinAbGroup | None = None


def ray_class_group(F: FieldCtx, m: Ideal, infinite_places="both") -> RayClassGroup:
    """Ray class group for the modulus m * (chosen real places).

    Presentation: generators of (O/m)^* x {+-1}^k and one prime per class
    group generator; relations from the structure of (O/m)^*, the unit images,
    and the principality certificates of the class group generators.
    """
    inf = _infinite_flags(infinite_places)
    nsign = sum(inf)
    Gm = residue_unit_group(F, m)
    cg = class_group(F)
    s = Gm.rank
    t = cg.group.rank
    n = s + nsign + t

    def phi(alpha: QElem) -> list[int]:
        vec = list(Gm.dlog(alpha))
        if inf[0]:
            vec.append(int(alpha.sign() < 0))
        if inf[1]:
            vec.append(int(alpha.conj_sign() < 0))
        return vec

    relations: list[list[int]] = []
    for i, d in enumerate(Gm.invariants):
        row = [0] * n
        row[i] = d
        relations.append(row)
    for k in range(nsign):
        row = [0] * n
        row[s + k] = 2
        relations.append(row)
    units = [-F.one, F.fundamental_unit]
    for eta in units:
        relations.append(phi(eta) + [0] * t)
    for j, h in enumerate(cg.group.invariants):
        e = [0] * t
        e[j] = 1
        Q = cg.rep_coprime_to(tuple(e), m)
        gamma = principal_generator(Q ** h)
        if gamma is None:
            raise AssertionError(f"{Q}^{h} not principal")
        row = [-c for c in phi(gamma)]
        row += [h if jj == j else 0 for jj in range(t)]
        relations.append(row)
    if n == 0:
        invariants: tuple[int, ...] = ()
    else:
        invariants = Presentation(n, relations).invariants
    img = _unit_image_order(Gm, inf, [phi(u) for u in units])
    return RayClassGroup(invariants, [], None, [], modulus=m, infinite=inf,
                         unit_image_order=img, residue_group=Gm)


def _unit_image_order(Gm: FinAbGroup, inf, images: list[list[int]]) -> int:
    """Order of the subgroup of (O/m)^* x {+-1}^k generated by ``images``."""
    mods = list(Gm.invariants) + [2] * sum(inf)
    seen = {tuple(0 for _ in mods)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for v in frontier:
            for g in images:
                w = tuple((a + b) % m for a, b, m in zip(v, g, mods))
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return len(seen)


def narrow_class_group(F: FieldCtx) -> RayClassGroup:
    return ray_class_group(F, Ideal.unit(F), "both")
