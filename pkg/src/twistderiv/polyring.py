"""Twisted derivations of Q[x] and the rank-one generator Δ = (τ-σ)/g."""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import BothZero, InexactDivision, PolySyntaxError, SigmaEqualsTau

ZERO_DEGREE = -1


def _trim(cs: Iterable[Fraction]) -> tuple[Fraction, ...]:
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


@dataclass(frozen=True)
class Poly:
    """Dense polynomial over Q, constant term first, no trailing zeros."""

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(Fraction(c) for c in self.coeffs))

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((Fraction(c),))

    @classmethod
    def x(cls) -> "Poly":
        return cls((Fraction(0), Fraction(1)))

    @classmethod
    def monomial(cls, n: int, c=1) -> "Poly":
        return cls((Fraction(0),) * n + (Fraction(c),))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = o.coeffs + (Fraction(0),) * (n - len(o.coeffs))
        return Poly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if not self or not o:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        out = Poly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        dg = other.degree
        q = [Fraction(0)] * max(len(r) - dg, 0)
        inv = 1 / other.lc
        for k in range(len(r) - 1, dg - 1, -1):
            c = r[k] * inv
            if c:
                q[k - dg] = c
                for j, b in enumerate(other.coeffs):
                    r[k - dg + j] -= c * b
        return Poly(q), Poly(r)

    def monic(self) -> "Poly":
        if not self:
            return self
        return Poly(c / self.lc for c in self.coeffs)

    def compose(self, inner: "Poly") -> "Poly":
        """self(inner), by Horner's rule."""
        out = Poly()
        for c in reversed(self.coeffs):
            out = out * inner + c
        return out

    def __call__(self, t):
        out = Fraction(0)
        for c in reversed(self.coeffs):
            out = out * t + c
        return out

    def __str__(self) -> str:
        return format_poly(self)


_TERM = re.compile(r"^(?P<coef>\d+(?:/\d+)?)?(?:(?(coef)\*?)(?P<x>x)(?:\^(?P<exp>\d+))?)?$")


def parse_poly(text: str) -> Poly:
    """Parse e.g. ``"3*x^2 - 1/2*x + 4"``; whitespace is ignored."""
    s = re.sub(r"\s+", "", text)
    if not s:
        raise PolySyntaxError("empty polynomial")
    parts = re.findall(r"[+-]?[^+-]+|[+-]", s)
    if "".join(parts) != s:
        raise PolySyntaxError(f"cannot parse {text!r}")
    total = Poly()
    for part in parts:
        sign = -1 if part.startswith("-") else 1
        body = part.lstrip("+-")
        m = _TERM.match(body)
        if not body or m is None or (m.group("coef") is None and m.group("x") is None):
            raise PolySyntaxError(f"bad term {part!r} in {text!r}")
        try:
            coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        except ZeroDivisionError:
            raise PolySyntaxError(f"zero denominator in {part!r}") from None
        exp = 0 if m.group("x") is None else int(m.group("exp") or 1)
        total = total + Poly.monomial(exp, sign * coef)
    return total


def format_poly(f: Poly) -> str:
    if not f:
        return "0"
    pieces = []
    for n in range(f.degree, -1, -1):
        c = f.coeffs[n]
        if not c:
            continue
        mag = abs(c)
        if n == 0:
            body = str(mag)
        else:
            xs = "x" if n == 1 else f"x^{n}"
            body = xs if mag == 1 else f"{mag}*{xs}"
        if not pieces:
            pieces.append(("-" if c < 0 else "") + body)
        else:
            pieces.append(("- " if c < 0 else "+ ") + body)
    return " ".join(pieces)


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd by Euclid's algorithm."""
    if not f and not g:
        raise BothZero("gcd(0, 0) is undefined")
    while g:
        f, g = g, divmod(f, g)[1]
    return f.monic()


@dataclass(frozen=True)
class PolyEndo:
    """The Q-algebra endomorphism f ↦ f(image_of_x)."""

    image_of_x: Poly

    def __call__(self, f: Poly) -> Poly:
        return endo_apply(self, f)


def endo_apply(phi: PolyEndo, f: Poly) -> Poly:
    return f.compose(phi.image_of_x)


@dataclass(frozen=True)
class DeltaGenerator:
    """Δ = (τ-σ)/g with g = τ(x) - σ(x) = unit·monic(g), so Δ(x) = 1."""

    sigma: PolyEndo
    tau: PolyEndo
    g: Poly
    unit: Fraction

    def __call__(self, f: Poly) -> Poly:
        return delta_apply(self, f)


def delta_generator(sigma: PolyEndo, tau: PolyEndo) -> DeltaGenerator:
    g = tau.image_of_x - sigma.image_of_x
    if not g:
        raise SigmaEqualsTau("sigma(x) == tau(x)")
    return DeltaGenerator(sigma, tau, g, g.lc)


def delta_apply(delta: DeltaGenerator, f: Poly) -> Poly:
    num = delta.tau(f) - delta.sigma(f)
    q, r = divmod(num, delta.g)
    if r:
        raise InexactDivision(f"({num}) is not divisible by ({delta.g})")
    return q


@dataclass(frozen=True)
class PolyDerivation:
    """The (σ,τ)-derivation D = image_of_x · Δ."""

    delta: DeltaGenerator
    image_of_x: Poly

    def __call__(self, f: Poly) -> Poly:
        return self.image_of_x * self.delta(f)


def poly_derivation(sigma: PolyEndo, tau: PolyEndo, image_of_x: Poly) -> PolyDerivation:
    return PolyDerivation(delta_generator(sigma, tau), image_of_x)
