"""Exact linear algebra over the rationals.

Matrices are tuples of rows of :class:`fractions.Fraction`.  Nothing here
touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch

Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]


def frac(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot read {x!r} as an exact rational")


def frac_str(x: Fraction) -> str:
    return str(x)


def vec(xs: Iterable) -> Vector:
    return tuple(frac(x) for x in xs)


def mat(rows: Iterable[Iterable]) -> Matrix:
    m = tuple(vec(r) for r in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise DimensionMismatch("ragged matrix")
    return m


def zeros(n: int, m: int | None = None) -> Matrix:
    m = n if m is None else m
    return tuple(tuple(Fraction(0) for _ in range(m)) for _ in range(n))


def zero_vec(n: int) -> Vector:
    return tuple(Fraction(0) for _ in range(n))


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def unit_vec(n: int, i: int) -> Vector:
    return tuple(Fraction(int(k == i)) for k in range(n))


def shape(m: Matrix) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m)) if m else ()


def column(m: Matrix, j: int) -> Vector:
    return tuple(r[j] for r in m)


def from_columns(cols: Sequence[Sequence[Fraction]], nrows: int | None = None) -> Matrix:
    if not cols:
        return tuple(() for _ in range(nrows or 0))
    return transpose(tuple(tuple(c) for c in cols))


def add(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatch(f"vector lengths {len(u)} and {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatch(f"vector lengths {len(u)} and {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: Sequence[Fraction]) -> Vector:
    c = frac(c)
    return tuple(c * a for a in v)


def is_zero(v: Sequence[Fraction]) -> bool:
    return all(a == 0 for a in v)


def matvec(m: Matrix, v: Sequence[Fraction]) -> Vector:
    if m and len(m[0]) != len(v):
        raise DimensionMismatch(f"matrix has {len(m[0])} columns, vector length {len(v)}")
    return tuple(sum((a * b for a, b in zip(row, v) if a and b), Fraction(0)) for row in m)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if shape(a)[1] != len(b):
        raise DimensionMismatch(f"cannot multiply {shape(a)} by {shape(b)}")
    bt = transpose(b)
    return tuple(
        tuple(sum((x * y for x, y in zip(row, col) if x and y), Fraction(0)) for col in bt)
        for row in a
    )


def rref(rows: Iterable[Sequence[Fraction]], ncols: int | None = None) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form; zero rows dropped, pivots normalized to 1."""
    m = [[frac(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return tuple(tuple(row) for row in m[:r]), tuple(pivots)


def rank(m: Matrix) -> int:
    return len(rref(m)[0])


def nullspace(m: Matrix, ncols: int | None = None) -> list[Vector]:
    """Basis of {v : m v = 0}, one vector per free column."""
    ncols = shape(m)[1] if ncols is None else ncols
    red, pivots = rref(m, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def inverse(m: Matrix) -> Matrix | None:
    """Inverse of a square matrix, or None if singular."""
    n = len(m)
    if any(len(r) != n for r in m):
        raise DimensionMismatch("inverse of a non-square matrix")
    aug = [tuple(r) + identity(n)[i] for i, r in enumerate(m)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != tuple(range(n)) or len(red) < n:
        return None
    return tuple(row[n:] for row in red)


def is_invertible(m: Matrix) -> bool:
    return len(m) == shape(m)[1] and rank(m) == len(m)


@dataclass(frozen=True)
class Submodule:
    """A subspace of Q^ambient in canonical reduced row echelon form.

    Equality of two submodules is equality of the dataclasses, because the
    echelon basis is unique.
    """

    ambient: int
    basis: Matrix
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence[Fraction]], ambient: int) -> "Submodule":
        vectors = [vec(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient:
                raise DimensionMismatch(f"vector of length {len(v)} in Q^{ambient}")
        basis, pivots = rref(vectors, ambient)
        return cls(ambient, basis, pivots)

    @classmethod
    def zero(cls, ambient: int) -> "Submodule":
        return cls(ambient, (), ())

    @classmethod
    def whole(cls, ambient: int) -> "Submodule":
        return cls(ambient, identity(ambient), tuple(range(ambient)))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coords(self, v: Sequence[Fraction]) -> Vector | None:
        """Coordinates of v against the echelon basis, or None if v is outside."""
        if len(v) != self.ambient:
            raise DimensionMismatch(f"vector of length {len(v)} in Q^{self.ambient}")
        c = tuple(v[p] for p in self.pivots)
        rebuilt = zero_vec(self.ambient)
        for coef, row in zip(c, self.basis):
            if coef:
                rebuilt = add(rebuilt, scale(coef, row))
        return c if rebuilt == tuple(v) else None

    def contains(self, v: Sequence[Fraction]) -> bool:
        return self.coords(v) is not None

    def contains_submodule(self, other: "Submodule") -> bool:
        return all(self.contains(row) for row in other.basis)

    def element(self, coords: Sequence[Fraction]) -> Vector:
        out = zero_vec(self.ambient)
        for coef, row in zip(coords, self.basis):
            if coef:
                out = add(out, scale(coef, row))
        return out
