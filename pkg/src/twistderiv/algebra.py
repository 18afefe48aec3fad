"""Finite-dimensional commutative algebras over Q given by structure constants."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg as la
from .errors import (
    BadUnit,
    DimensionMismatch,
    NonAssociative,
    NonCommutative,
    NotAnIdeal,
)
from .linalg import Matrix, Submodule, Vector

ENDO = "endomorphism-claimed"
LINEAR = "linear-only"


@dataclass(frozen=True)
class StructAlgebra:
    """Basis e_0..e_{dim-1} with e_i e_j = sum_k table[i][j][k] e_k."""

    dim: int
    unit: Vector
    table: tuple[tuple[Vector, ...], ...]

    def basis(self, i: int) -> Vector:
        return la.unit_vec(self.dim, i)

    def mul_vec(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatch(
                f"operands of length {len(x)}, {len(y)} in an algebra of dim {self.dim}"
            )
        acc = [Fraction(0)] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self.table[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                for k, t in enumerate(row[j]):
                    if t:
                        acc[k] += c * t
        return tuple(acc)

    def elem(self, coords: Iterable) -> "AlgElem":
        e = AlgElem(la.vec(coords))
        if len(e.coords) != self.dim:
            raise DimensionMismatch(f"{len(e.coords)} coordinates for dim {self.dim}")
        return e

    def left_mult_matrix(self, x: Sequence[Fraction]) -> Matrix:
        """Matrix of y -> x*y."""
        return la.from_columns([self.mul_vec(x, self.basis(j)) for j in range(self.dim)])


@dataclass(frozen=True)
class AlgElem:
    coords: Vector


@dataclass(frozen=True)
class AlgMap:
    """Linear map between algebras; columns of ``matrix`` are images of basis vectors."""

    matrix: Matrix
    kind: str = LINEAR

    @classmethod
    def from_images(cls, images: Sequence[Sequence], kind: str = LINEAR, target_dim: int | None = None) -> "AlgMap":
        return cls(la.from_columns([la.vec(v) for v in images], target_dim), kind)

    @property
    def source_dim(self) -> int:
        return la.shape(self.matrix)[1]

    @property
    def target_dim(self) -> int:
        return la.shape(self.matrix)[0]

    def __call__(self, v: Sequence[Fraction]) -> Vector:
        return la.matvec(self.matrix, v)

    def image_of(self, i: int) -> Vector:
        return la.column(self.matrix, i)

    def compose(self, other: "AlgMap") -> "AlgMap":
        """self after other."""
        kind = ENDO if self.kind == other.kind == ENDO else LINEAR
        return AlgMap(la.matmul(self.matrix, other.matrix), kind)


def _algebra_unchecked(dim: int, unit: Sequence, table) -> StructAlgebra:
    return StructAlgebra(
        dim,
        la.vec(unit),
        tuple(tuple(la.vec(table[i][j]) for j in range(dim)) for i in range(dim)),
    )


def make_algebra(dim: int, unit: Sequence, table) -> StructAlgebra:
    """Build an algebra from structure constants, verifying every axiom.

    Raises NonCommutative, NonAssociative or BadUnit naming the offending
    basis indices; DimensionMismatch for malformed tables.
    """
    if not isinstance(dim, int) or dim < 1:
        raise DimensionMismatch(f"dim must be a positive integer, got {dim!r}")
    if len(unit) != dim:
        raise DimensionMismatch(f"unit has length {len(unit)}, expected {dim}")
    if len(table) != dim or any(len(row) != dim for row in table):
        raise DimensionMismatch(f"table must be {dim}x{dim}x{dim}")
    if any(len(table[i][j]) != dim for i in range(dim) for j in range(dim)):
        raise DimensionMismatch(f"table must be {dim}x{dim}x{dim}")
    A = _algebra_unchecked(dim, unit, table)

    for i in range(dim):
        for j in range(i + 1, dim):
            for k in range(dim):
                if A.table[i][j][k] != A.table[j][i][k]:
                    raise NonCommutative(f"c[{i}][{j}][{k}] != c[{j}][{i}][{k}]")
    for i in range(dim):
        prod = A.mul_vec(A.unit, A.basis(i))
        if prod != A.basis(i):
            k = next(k for k in range(dim) if prod[k] != A.basis(i)[k])
            raise BadUnit(f"unit*e_{i} differs from e_{i} at coordinate {k}")
    for i in range(dim):
        for j in range(dim):
            ij = A.table[i][j]
            for k in range(dim):
                left = A.mul_vec(ij, A.basis(k))
                right = A.mul_vec(A.basis(i), A.table[j][k])
                if left != right:
                    raise NonAssociative(f"(e_{i}e_{j})e_{k} != e_{i}(e_{j}e_{k})")
    return A


def mul(A: StructAlgebra, x: AlgElem, y: AlgElem) -> AlgElem:
    return AlgElem(A.mul_vec(x.coords, y.coords))


def check_hom(src: StructAlgebra, dst: StructAlgebra, phi: AlgMap) -> bool:
    """True iff phi is a unital multiplicative linear map src -> dst."""
    if la.shape(phi.matrix) != (dst.dim, src.dim):
        return False
    if phi(src.unit) != dst.unit:
        return False
    images = [phi.image_of(i) for i in range(src.dim)]
    for i in range(src.dim):
        for j in range(i, src.dim):
            if dst.mul_vec(images[i], images[j]) != phi(src.table[i][j]):
                return False
    return True


def check_endo(A: StructAlgebra, phi: AlgMap) -> bool:
    return check_hom(A, A, phi)


def kernel(phi: AlgMap) -> Submodule:
    return Submodule.span(la.nullspace(phi.matrix, phi.source_dim), phi.source_dim)


def image(phi: AlgMap) -> Submodule:
    return Submodule.span(la.transpose(phi.matrix), phi.target_dim)


def is_ideal(A: StructAlgebra, I: Submodule) -> bool:
    return _escaping_product(A, I) is None


def _escaping_product(A: StructAlgebra, I: Submodule) -> tuple[int, int] | None:
    for r, row in enumerate(I.basis):
        for i in range(A.dim):
            if not I.contains(A.mul_vec(row, A.basis(i))):
                return r, i
    return None


@dataclass(frozen=True)
class Quotient:
    algebra: StructAlgebra
    projection: AlgMap
    section: AlgMap
    ideal: Submodule = field(repr=False)


def quotient(A: StructAlgebra, I: Submodule) -> Quotient:
    """A/I with basis the images of the standard vectors at non-pivot columns of I.

    The section sends each quotient basis vector to that standard vector, so
    projection∘section is the identity.
    """
    if I.ambient != A.dim:
        raise DimensionMismatch(f"submodule of Q^{I.ambient} in an algebra of dim {A.dim}")
    bad = _escaping_product(A, I)
    if bad is not None:
        r, i = bad
        raise NotAnIdeal(f"(ideal basis row {r}) * e_{i} leaves the submodule")
    comp = [c for c in range(A.dim) if c not in I.pivots]
    if not comp:
        raise DimensionMismatch("quotient by the whole algebra is the zero ring")

    def reduce(v: Sequence[Fraction]) -> Vector:
        out = tuple(v)
        for row, p in zip(I.basis, I.pivots):
            if out[p]:
                out = la.sub(out, la.scale(out[p], row))
        return tuple(out[c] for c in comp)

    q = len(comp)
    proj = la.from_columns([reduce(A.basis(j)) for j in range(A.dim)], q)
    sect = la.from_columns([A.basis(c) for c in comp], A.dim)
    table = [[reduce(A.table[a][b]) for b in comp] for a in comp]
    Q = make_algebra(q, reduce(A.unit), table)
    return Quotient(Q, AlgMap(proj, ENDO), AlgMap(sect, LINEAR), I)


@dataclass(frozen=True)
class Tensor:
    """L⊗R with basis e_i⊗e_j at flat index i*R.dim + j."""

    algebra: StructAlgebra
    left: StructAlgebra
    right: StructAlgebra

    def index(self, i: int, j: int) -> int:
        return i * self.right.dim + j

    @property
    def index_map(self) -> dict[tuple[int, int], int]:
        return {(i, j): self.index(i, j) for i in range(self.left.dim) for j in range(self.right.dim)}

    def pure(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
        """Coordinates of x⊗y."""
        return tuple(a * b for a in x for b in y)

    def left_unit(self, x: Sequence[Fraction]) -> Vector:
        return self.pure(x, self.right.unit)

    def right_unit(self, y: Sequence[Fraction]) -> Vector:
        return self.pure(self.left.unit, y)


def tensor(L: StructAlgebra, R: StructAlgebra) -> Tensor:
    n, m = L.dim, R.dim
    table = [[None] * (n * m) for _ in range(n * m)]
    for i in range(n):
        for j in range(m):
            for k in range(n):
                for l in range(m):
                    prod = tuple(a * b for a in L.table[i][k] for b in R.table[j][l])
                    table[i * m + j][k * m + l] = prod
    unit = tuple(a * b for a in L.unit for b in R.unit)
    # bilinear extension of two valid algebras; axioms hold without re-checking
    return Tensor(_algebra_unchecked(n * m, unit, table), L, R)


def tensor_square(A: StructAlgebra) -> tuple[StructAlgebra, dict[tuple[int, int], int]]:
    T = tensor(A, A)
    return T.algebra, T.index_map


def ideal_closure(A: StructAlgebra, gens: Iterable[Sequence[Fraction]]) -> Submodule:
    """Smallest subspace containing gens and closed under multiplication by A."""
    gens = [g.coords if isinstance(g, AlgElem) else tuple(g) for g in gens]
    S = Submodule.span(gens, A.dim)
    while True:
        prods = [A.mul_vec(row, A.basis(i)) for row in S.basis for i in range(A.dim)]
        T = Submodule.span(list(S.basis) + prods, A.dim)
        if T.rank == S.rank:
            return S
        S = T


# --- JSON ----------------------------------------------------------------


def _q(x: Fraction) -> str:
    return la.frac_str(x)


def matrix_to_json(m: Matrix) -> list:
    return [[_q(x) for x in row] for row in m]


def algebra_to_dict(A: StructAlgebra) -> dict:
    return {
        "dim": A.dim,
        "unit": [_q(x) for x in A.unit],
        "table": [[[_q(x) for x in A.table[i][j]] for j in range(A.dim)] for i in range(A.dim)],
    }


def algebra_from_dict(obj: dict) -> StructAlgebra:
    try:
        dim, unit, table = obj["dim"], obj["unit"], obj["table"]
    except (KeyError, TypeError) as exc:
        raise DimensionMismatch(f"algebra JSON needs dim, unit, table: {exc}") from None
    return make_algebra(
        dim,
        [la.frac(x) for x in unit],
        [[[la.frac(x) for x in cell] for cell in row] for row in table],
    )


def map_to_dict(phi: AlgMap) -> dict:
    return {"kind": phi.kind, "matrix": matrix_to_json(phi.matrix)}


def map_from_dict(obj: dict) -> AlgMap:
    try:
        rows = obj["matrix"]
    except (KeyError, TypeError):
        raise DimensionMismatch("map JSON needs a 'matrix' field") from None
    kind = obj.get("kind", LINEAR)
    if kind not in (ENDO, LINEAR):
        raise DimensionMismatch(f"unknown map kind {kind!r}")
    return AlgMap(la.mat(rows), kind)


def dumps(obj: dict) -> str:
    return json.dumps(obj, separators=(",", ":"))
