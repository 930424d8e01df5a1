"""Exact arithmetic in real quadratic fields Q(sqrt d) and their rings of integers.

Elements are stored over the common denominator 2: the pair ``(x, y)`` stands
for ``(x + y*sqrt(d)) / 2``.  Both integral-basis conventions (omega = sqrt d,
or omega = (1 + sqrt d)/2 when d = 1 mod 4) fit this representation.
"""

from __future__ import annotations

from functools import total_ordering
from math import gcd, isqrt

MAX_D = 1000


def is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


def _sign_of(x: int, y: int, d: int) -> int:
    """Exact sign of x + y*sqrt(d)."""
    if y == 0:
        return (x > 0) - (x < 0)
    if x == 0:
        return (y > 0) - (y < 0)
    if x > 0 and y > 0:
        return 1
    if x < 0 and y < 0:
        return -1
    # opposite signs: compare x^2 with d*y^2
    diff = x * x - d * y * y
    if x > 0:
        return 1 if diff > 0 else -1
    return -1 if diff > 0 else 1


class FieldCtx:
    """Context for K = Q(sqrt d), d squarefree.  Build with :func:`make_field`."""

    def __init__(self, d: int):
        self.d = d
        self.disc = d if d % 4 == 1 else 4 * d
        # omega = (1+sqrt d)/2 when d = 1 mod 4, else sqrt d
        self.omega_half = d % 4 == 1
        if d % 8 == 1:
            self.two_splitting = "split"
        elif d % 8 == 5:
            self.two_splitting = "inert"
        else:
            self.two_splitting = "ramified"
        # omega^2 = omega_trace * omega + omega_const
        if self.omega_half:
            self.omega_trace, self.omega_const = 1, (d - 1) // 4
        else:
            self.omega_trace, self.omega_const = 0, d
        self._fundamental_unit: QElem | None = None

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and other.d == self.d

    def __hash__(self):
        return hash(("FieldCtx", self.d))

    def __repr__(self):
        return f"FieldCtx(d={self.d})"

    # -- element constructors ------------------------------------------------
    def __call__(self, a, b=0) -> QElem:
        """The element a + b*sqrt(d) with a, b rational integers."""
        return QElem(self, 2 * a, 2 * b)

    def half(self, x: int, y: int) -> QElem:
        """The element (x + y*sqrt d)/2; raises if it is not integral."""
        return QElem(self, x, y)

    def from_basis(self, i: int, j: int) -> QElem:
        """The element i + j*omega."""
        if self.omega_half:
            return QElem(self, 2 * i + j, j)
        return QElem(self, 2 * i, 2 * j)

    @property
    def omega(self) -> QElem:
        return self.from_basis(0, 1)

    @property
    def one(self) -> QElem:
        return QElem(self, 2, 0)

    @property
    def zero(self) -> QElem:
        return QElem(self, 0, 0)

    @property
    def sqrt_d(self) -> QElem:
        return QElem(self, 0, 2)

    @property
    def fundamental_unit(self) -> QElem:
        if self._fundamental_unit is None:
            self._fundamental_unit = _fundamental_unit_cf(self)
        return self._fundamental_unit

    # -- basis multiplication on coordinate pairs (fast path) ---------------
    def basis_mul(self, i1: int, j1: int, i2: int, j2: int) -> tuple[int, int]:
        jj = j1 * j2
        return (i1 * i2 + self.omega_const * jj,
                i1 * j2 + i2 * j1 + self.omega_trace * jj)


def make_field(d: int) -> FieldCtx:
    """Validated field context for Q(sqrt d), 2 <= d <= 1000 squarefree."""
    if not isinstance(d, int) or d < 2:
        raise ValueError(f"d must be an integer >= 2, got {d!r}")
    if d > MAX_D:
        raise ValueError(f"d={d} exceeds the desk-scale guard {MAX_D}")
    if not is_squarefree(d):
        raise ValueError(f"d={d} is not squarefree")
    F = FieldCtx(d)
    F.fundamental_unit  # populate eagerly
    return F


@total_ordering
class QElem:
    """Integral element (x + y*sqrt d)/2 of O_K, ordered by its real value
    under the embedding sqrt d > 0."""

    __slots__ = ("field", "x", "y")

    def __init__(self, field: FieldCtx, x: int, y: int):
        if field.omega_half:
            if (x - y) % 2:
                raise ValueError(f"({x} + {y}√{field.d})/2 is not integral")
        elif x % 2 or y % 2:
            raise ValueError(f"({x} + {y}√{field.d})/2 is not integral")
        self.field = field
        self.x = x
        self.y = y

    def _check(self, other) -> QElem:
        if isinstance(other, int):
            return QElem(self.field, 2 * other, 0)
        if not isinstance(other, QElem):
            return NotImplemented
        if other.field != self.field:
            raise ValueError(f"mixed fields: d={self.field.d} and d={other.field.d}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return QElem(self.field, self.x + other.x, self.y + other.y)

    __radd__ = __add__

    def __neg__(self):
        return QElem(self.field, -self.x, -self.y)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return QElem(self.field, self.x - other.x, self.y - other.y)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        d = self.field.d
        X = self.x * other.x + d * self.y * other.y
        Y = self.x * other.y + self.y * other.x
        return QElem(self.field, X // 2, Y // 2)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.unit_inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> QElem:
        return QElem(self.field, self.x, -self.y)

    def norm(self) -> int:
        return (self.x * self.x - self.field.d * self.y * self.y) // 4

    def trace(self) -> int:
        return self.x

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def is_unit(self) -> bool:
        return abs(self.norm()) == 1

    def unit_inverse(self) -> QElem:
        n = self.norm()
        if abs(n) != 1:
            raise ValueError(f"{self} is not a unit")
        return self.conj() * n

    def exact_div(self, other) -> QElem:
        """self / other, raising ValueError unless the quotient is integral."""
        other = self._check(other)
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero element")
        num = self * other.conj()
        if num.x % n or num.y % n:
            raise ValueError(f"{other} does not divide {self}")
        return QElem(self.field, num.x // n, num.y // n)

    def divides(self, other: QElem) -> bool:
        try:
            other.exact_div(self)
        except ValueError:
            return False
        return True

    def content(self) -> int:
        """Largest rational integer n with self/n integral."""
        i, j = self.basis_coords()
        return gcd(i, j)

    # -- basis coordinates ---------------------------------------------------
    def basis_coords(self) -> tuple[int, int]:
        """(i, j) with self = i + j*omega."""
        if self.field.omega_half:
            return (self.x - self.y) // 2, self.y
        return self.x // 2, self.y // 2

    # -- real embeddings -----------------------------------------------------
    def sign(self) -> int:
        """Sign under the embedding sqrt d -> +sqrt d."""
        return _sign_of(self.x, self.y, self.field.d)

    def conj_sign(self) -> int:
        return _sign_of(self.x, -self.y, self.field.d)

    def is_totally_positive(self) -> bool:
        return self.sign() > 0 and self.conj_sign() > 0

    def __float__(self):
        return (self.x + self.y * self.field.d ** 0.5) / 2

    def __eq__(self, other):
        if isinstance(other, int):
            return self.y == 0 and self.x == 2 * other
        if not isinstance(other, QElem):
            return NotImplemented
        return self.field == other.field and self.x == other.x and self.y == other.y

    def __lt__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return (self - other).sign() < 0

    def __hash__(self):
        return hash((self.field.d, self.x, self.y))

    def __repr__(self):
        return f"QElem(d={self.field.d}, {self})"

    def __str__(self):
        d = self.field.d
        if self.x % 2 == 0 and self.y % 2 == 0:
            a, b = self.x // 2, self.y // 2
            den = ""
        else:
            a, b = self.x, self.y
            den = "/2"
        if b == 0:
            s = f"{a}"
        else:
            coef = "" if abs(b) == 1 else str(abs(b))
            root = f"{coef}√{d}"
            if a == 0:
                s = root if b > 0 else f"-{root}"
            else:
                s = f"{a}{'+' if b > 0 else '-'}{root}"
        if den:
            return f"({s}){den}"
        return s

    def to_pair(self) -> list[int]:
        return [self.x, self.y]


def _fundamental_unit_cf(F: FieldCtx) -> QElem:
    """Fundamental unit > 1 via the continued fraction of -conj(omega).

    If eps = a + b*omega is the fundamental unit then a/b approximates
    -conj(omega), which is (sqrt d - 1)/2 or sqrt d.
    """
    d = F.d
    # alpha = (P + sqrt D)/Q
    if F.omega_half:
        P, Q = -1, 2
    else:
        P, Q = 0, 1
    r = isqrt(d)
    hm2, hm1 = 0, 1
    km2, km1 = 1, 0
    for _ in range(10000):
        a = (P + r) // Q
        h = a * hm1 + hm2
        k = a * km1 + km2
        cand = F.from_basis(h, k)
        if abs(cand.norm()) == 1:
            return _normalize_unit(cand)
        hm2, hm1 = hm1, h
        km2, km1 = km1, k
        P = a * Q - P
        Q = (d - P * P) // Q
    raise RuntimeError(f"continued fraction did not yield a unit for d={d}")


def _normalize_unit(e: QElem) -> QElem:
    """Among +-e, +-e^-1 return the one that is > 1."""
    for c in (e, -e, e.unit_inverse(), -e.unit_inverse()):
        if c > 1:
            return c
    raise ValueError(f"{e} is a root of unity")


def brute_force_fundamental_unit(F: FieldCtx, y_max: int) -> QElem | None:
    """Smallest unit > 1 found by scanning y = 1..y_max in x^2 - d*y^2 = +-4.

    Independent of the continued-fraction route; used as a cross-check.
    """
    d = F.d
    for y in range(1, y_max + 1):
        for s in (-4, 4):
            t = d * y * y + s
            if t < 0:
                continue
            x = isqrt(t)
            if x * x != t:
                continue
            try:
                return QElem(F, x, y)
            except ValueError:
                continue
    return None


def totally_positive_unit_generator(F: FieldCtx) -> QElem:
    """Generator of the totally positive units modulo torsion."""
    u = F.fundamental_unit
    if u.norm() == 1:
        return u if u.sign() > 0 else -u
    return u * u


def elem_arith(a: QElem, b: QElem | None, op: str):
    """Dispatch form of the basic operations: add, sub, mul, conj, norm, trace."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "conj":
        return a.conj()
    if op == "norm":
        return a.norm()
    if op == "trace":
        return a.trace()
    raise ValueError(f"unknown operation {op!r}")
