"""Finite abelian groups: Smith normal form over Z and presentations with
discrete logarithms."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Hashable, Iterable, Sequence


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(A: Sequence[Sequence[int]]):
    """Return (D, U, V, Vinv) with U*A*V = D diagonal, d_i | d_{i+1}, d_i >= 0.

    U (m x m) and V (n x n) are unimodular; Vinv is the inverse of V.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(map(int, row)) for row in A]
    U = _identity(m)
    V = _identity(n)
    Vi = _identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst, src, k):  # row_dst += k*row_src
        if k:
            D[dst] = [a + k * b for a, b in zip(D[dst], D[src])]
            U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, k):  # col_dst += k*col_src
        if k:
            for row in D:
                row[dst] += k * row[src]
            for row in V:
                row[dst] += k * row[src]
            # inverse: row_src of Vinv -= k * row_dst
            Vi[src] = [a - k * b for a, b in zip(Vi[src], Vi[dst])]

    def negate_row(i):
        D[i] = [-a for a in D[i]]
        U[i] = [-a for a in U[i]]

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero |entry| in the trailing block
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] and (piv is None or abs(D[i][j]) < abs(D[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            done = True
            for i in range(t + 1, m):
                if D[i][t]:
                    q = D[i][t] // D[t][t]
                    add_row(i, t, -q)
                    if D[i][t]:
                        done = False
            for j in range(t + 1, n):
                if D[t][j]:
                    q = D[t][j] // D[t][t]
                    add_col(j, t, -q)
                    if D[t][j]:
                        done = False
            if done:
                # enforce divisibility of the rest of the block
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if D[i][j] % D[t][t]:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                add_row(t, bad, 1)
                continue
            # move the smallest remaining entry of row/col t into the pivot
            best = (t, t)
            for i in range(t + 1, m):
                if D[i][t] and abs(D[i][t]) < abs(D[best[0]][best[1]]):
                    best = (i, t)
            for j in range(t + 1, n):
                if D[t][j] and abs(D[t][j]) < abs(D[best[0]][best[1]]):
                    best = (t, j)
            if best[0] != t:
                swap_rows(t, best[0])
            if best[1] != t:
                swap_cols(t, best[1])
        if D[t][t] < 0:
            negate_row(t)
        t += 1
    return D, U, V, Vi


def hnf_index(rows: Sequence[Sequence[int]]) -> int:
    """Index of the lattice spanned by ``rows`` in Z^n (0 if not full rank)."""
    if not rows:
        return 0
    n = len(rows[0])
    D, _, _, _ = smith_normal_form(rows)
    prod = 1
    for i in range(n):
        if i >= len(D) or D[i][i] == 0:
            return 0
        prod *= D[i][i]
    return prod


@dataclass
class FinAbGroup:
    """Finite abelian group Z/d_1 x ... x Z/d_k with d_i | d_{i+1}, d_i > 1.

    ``dlog`` maps an ambient element to its exponent vector over ``gens``.
    """

    invariants: tuple[int, ...]
    gens: list = field(default_factory=list)
    dlog: Callable | None = None
    labels: list[str] = field(default_factory=list)

    @property
    def order(self) -> int:
        o = 1
        for d in self.invariants:
            o *= d
        return o

    @property
    def exponent(self) -> int:
        return self.invariants[-1] if self.invariants else 1

    @property
    def rank(self) -> int:
        return len(self.invariants)

    def structure(self) -> str:
        if not self.invariants:
            return "0"
        return " x ".join(f"Z/{d}" for d in self.invariants)

    def reduce(self, vec: Iterable[int]) -> tuple[int, ...]:
        return tuple(v % d for v, d in zip(vec, self.invariants))

    def __repr__(self):
        return f"FinAbGroup({self.structure()})"


class Presentation:
    """Abelian group Z^n / (row span of relations), reduced by Smith form."""

    def __init__(self, ngens: int, relations: list[list[int]]):
        self.ngens = ngens
        rels = [list(r) for r in relations if any(r)]
        if not rels:
            rels = [[0] * ngens]
        D, _, V, Vi = smith_normal_form(rels)
        diag = [D[i][i] if i < len(D) else 0 for i in range(ngens)]
        if any(x == 0 for x in diag):
            raise ValueError("presentation defines an infinite group")
        self.V = V
        self.Vinv = Vi
        self.keep = [i for i, x in enumerate(diag) if x != 1]
        self.invariants = tuple(diag[i] for i in self.keep)

    def coords(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Coordinates in the Smith basis of the class of ``vec``."""
        y = [sum(vec[k] * self.V[k][i] for k in range(self.ngens)) for i in self.keep]
        return tuple(v % d for v, d in zip(y, self.invariants))

    def generator_vectors(self) -> list[list[int]]:
        """Vectors over the original generators for each Smith generator."""
        return [list(self.Vinv[i]) for i in self.keep]


def group_from_elements(
    elements: Iterable[Hashable],
    mul: Callable[[Hashable, Hashable], Hashable],
    identity: Hashable,
) -> FinAbGroup:
    """Structure and discrete log of a finite abelian group given by enumeration.

    Generators are added greedily; each one contributes a single relation
    ``k*e_new = (vector of g^k)``, which together span the full relation
    lattice.  The Smith form of that triangular system gives the invariants.
    """
    table: dict = {identity: ()}
    gens: list = []
    relations: list[list[int]] = []
    for g in elements:
        if g in table:
            continue
        t = len(gens)
        # order of g modulo the current subgroup
        k, power = 1, g
        while power not in table:
            power = mul(power, g)
            k += 1
        rel = [-c for c in table[power]] + [0] * (t - len(table[power]))
        rel.append(k)
        relations = [r + [0] for r in relations]
        relations.append(rel)
        gens.append(g)
        new_table = {}
        for h, vec in table.items():
            cur = h
            base = list(vec) + [0] * (t - len(vec))
            for i in range(k):
                new_table[cur] = tuple(base + [i])
                cur = mul(cur, g)
        table = new_table
    n = len(gens)
    if n == 0:
        return FinAbGroup((), [], lambda x: ())
    pres = Presentation(n, relations)

    def dlog(x):
        vec = table.get(x)
        if vec is None:
            raise KeyError(f"{x!r} is not in the group")
        return pres.coords(list(vec) + [0] * (n - len(vec)))

    snf_gens = []
    for coeffs in pres.generator_vectors():
        el = identity
        for g, c in zip(gens, coeffs):
            el = mul(el, _power(g, c, mul, identity))
        snf_gens.append(el)
    return FinAbGroup(pres.invariants, snf_gens, dlog)


def _power(g, c, mul, identity):
    # negative exponents via the order of g
    if c < 0:
        order = 1
        cur = g
        while cur != identity:
            cur = mul(cur, g)
            order += 1
        c %= order
    out = identity
    for _ in range(c):
        out = mul(out, g)
    return out


def invariants_from_order_profile(orders: Iterable[int]) -> tuple[int, ...]:
    """Invariant factors of a finite abelian group from the multiset of its
    element orders.

    For each prime l, #{x : l^i x = 0} = l^(sum_j min(i, e_j)) determines the
    l-primary exponents e_j.
    """
    orders = list(orders)
    N = len(orders)
    primes = _prime_factors(N)
    primary: dict[int, list[int]] = {}
    for l in primes:
        counts = []
        i = 0
        while True:
            i += 1
            li = l ** i
            c = sum(1 for o in orders if li % o == 0)
            counts.append(c)
            if c == l ** _valuation(N, l):
                break
        logs = [0] + [_valuation(c, l) for c in counts]
        # number of cyclic factors of exponent >= i is logs[i] - logs[i-1]
        ge = [logs[i] - logs[i - 1] for i in range(1, len(logs))]
        exps = []
        for i in range(len(ge)):
            nxt = ge[i + 1] if i + 1 < len(ge) else 0
            exps += [i + 1] * (ge[i] - nxt)
        primary[l] = sorted(exps)
    k = max((len(v) for v in primary.values()), default=0)
    inv = [1] * k
    for l, exps in primary.items():
        exps = [0] * (k - len(exps)) + exps
        for idx, e in enumerate(exps):
            inv[idx] *= l ** e
    return tuple(x for x in inv if x > 1)


def _valuation(n: int, l: int) -> int:
    v = 0
    while n % l == 0:
        n //= l
        v += 1
    return v


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)
