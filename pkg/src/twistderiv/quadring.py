"""Rings of integers of quadratic fields, Z[√d] and Z[ω] with ω = (1+√d)/2."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .algebra import StructAlgebra, make_algebra
from .errors import DimensionMismatch, DisallowedD, NotSquarefree, TooLargeToFactor

SQRT = "SQRT"
OMEGA = "OMEGA"

#: Largest |d| accepted; squarefreeness is decided by trial division up to |d|^(1/3).
MAX_ABS_D = 2**63


def _icbrt(n: int) -> int:
    r = round(n ** (1 / 3))
    while r**3 > n:
        r -= 1
    while (r + 1) ** 3 <= n:
        r += 1
    return r


def square_factor(n: int) -> int | None:
    """Return some p > 1 with p² | n, or None when n is squarefree.

    Every prime up to the cube root is tried.  What remains then has at most
    two prime factors, so it has a square factor only if it is itself a square.
    """
    n = abs(n)
    bound = _icbrt(n) + 1
    p = 2
    while p <= bound and p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return p
        p += 1 if p == 2 else 2
    if n > 1:
        r = isqrt(n)
        if r * r == n:
            return r
    return None


@dataclass(frozen=True)
class QuadRing:
    d: int
    branch: str

    @property
    def gen(self) -> str:
        return f"sqrt({self.d})" if self.branch == SQRT else "omega"

    @property
    def omega_const(self) -> int:
        """(d-1)/4, so that ω² = ω + omega_const in the OMEGA branch."""
        return (self.d - 1) // 4

    def __call__(self, a: int = 0, b: int = 0) -> "QuadInt":
        return QuadInt(self, int(a), int(b))

    @property
    def one(self) -> "QuadInt":
        return QuadInt(self, 1, 0)

    @property
    def zero(self) -> "QuadInt":
        return QuadInt(self, 0, 0)

    @property
    def generator(self) -> "QuadInt":
        return QuadInt(self, 0, 1)

    def rat(self, u, v) -> "QuadRat":
        return QuadRat(self, Fraction(u), Fraction(v))


def make_ring(d: int) -> QuadRing:
    if d in (0, 1):
        raise DisallowedD(f"d={d} does not define a quadratic field")
    if abs(d) > MAX_ABS_D:
        raise TooLargeToFactor(f"|d| exceeds {MAX_ABS_D}")
    p = square_factor(d)
    if p is not None:
        raise NotSquarefree(f"{p}^2 divides {d}")
    return QuadRing(d, OMEGA if d % 4 == 1 else SQRT)


@dataclass(frozen=True)
class QuadInt:
    """a + b·gen in the integral basis {1, gen}."""

    ring: QuadRing
    a: int
    b: int

    def _coerce(self, other) -> "QuadInt":
        if isinstance(other, QuadInt):
            if other.ring != self.ring:
                raise DimensionMismatch(f"elements of d={self.ring.d} and d={other.ring.d}")
            return other
        if isinstance(other, int):
            return QuadInt(self.ring, other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadInt(self.ring, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadInt(self.ring, -self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadInt(self.ring, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return qmul(self.ring, self, o)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.a or self.b)

    def to_rat(self) -> "QuadRat":
        if self.ring.branch == SQRT:
            return QuadRat(self.ring, Fraction(self.a), Fraction(self.b))
        return QuadRat(self.ring, self.a + Fraction(self.b, 2), Fraction(self.b, 2))

    def __str__(self) -> str:
        return f"{self.a}{self.b:+}*{self.ring.gen}"


def qmul(R: QuadRing, x: QuadInt, y: QuadInt) -> QuadInt:
    ac, bd = x.a * y.a, x.b * y.b
    cross = x.a * y.b + x.b * y.a
    if R.branch == SQRT:
        return QuadInt(R, ac + R.d * bd, cross)
    # ω² = ω + (d-1)/4
    return QuadInt(R, ac + R.omega_const * bd, cross + bd)


def conj(R: QuadRing, x: QuadInt) -> QuadInt:
    if R.branch == SQRT:
        return QuadInt(R, x.a, -x.b)
    return QuadInt(R, x.a + x.b, -x.b)


def norm(R: QuadRing, x: QuadInt) -> int:
    n = qmul(R, x, conj(R, x))
    assert n.b == 0, "norm left a generator component"
    return n.a


@dataclass(frozen=True)
class QuadRat:
    """u + v√d with rational u, v; the √d basis is used in both branches."""

    ring: QuadRing
    u: Fraction
    v: Fraction

    def __mul__(self, other: "QuadRat") -> "QuadRat":
        d = self.ring.d
        return QuadRat(self.ring, self.u * other.u + d * self.v * other.v, self.u * other.v + self.v * other.u)

    def __truediv__(self, other: "QuadRat") -> "QuadRat":
        d = self.ring.d
        n = other.u * other.u - d * other.v * other.v
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(d))")
        c = QuadRat(self.ring, other.u / n, -other.v / n)
        return self * c

    def __str__(self) -> str:
        return f"{self.u} + {self.v}*sqrt({self.ring.d})"


def member(R: QuadRing, z: QuadRat) -> QuadInt | None:
    """The element of O_K equal to z, or None if z is not integral."""
    if R.branch == SQRT:
        if z.u.denominator == 1 and z.v.denominator == 1:
            return QuadInt(R, int(z.u), int(z.v))
        return None
    # u + v√d = m + nω  <=>  n = 2v, m = u - v
    n, m = 2 * z.v, z.u - z.v
    if n.denominator == 1 and m.denominator == 1:
        return QuadInt(R, int(m), int(n))
    return None


def as_algebra(R: QuadRing) -> StructAlgebra:
    """O_K ⊗ Q as a dim-2 algebra over the basis {1, gen}."""
    if R.branch == SQRT:
        gg = [R.d, 0]
    else:
        gg = [R.omega_const, 1]
    table = [[[1, 0], [0, 1]], [[0, 1], gg]]
    return make_algebra(2, [1, 0], table)


def to_dict(x: QuadInt) -> dict:
    return {"a": x.a, "b": x.b}


def rat_to_dict(z: QuadRat) -> dict:
    return {"u": str(z.u), "v": str(z.v)}
