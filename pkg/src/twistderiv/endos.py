"""Ring endomorphisms of quadratic O_K.

Nonzero endomorphisms fix Z, so each is determined by where it sends the
generator.  :func:`classify` finds those images by solving the integer
equations that the relation on the generator imposes.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from . import linalg as la
from .algebra import ENDO, AlgMap, check_endo, kernel
from .errors import NotAnEndomorphism
from .quadring import OMEGA, SQRT, QuadInt, QuadRing, as_algebra, conj

IDENTITY = "id"
CONJUGATION = "conj"


@dataclass(frozen=True)
class QuadEndo:
    kind: str
    ring: QuadRing

    def __call__(self, x: QuadInt) -> QuadInt:
        return apply_endo(self, x)

    def as_map(self) -> AlgMap:
        """Matrix over the basis {1, gen}."""
        g = self(self.ring.generator)
        return AlgMap.from_images([[1, 0], [g.a, g.b]], ENDO)

    def compose(self, other: "QuadEndo") -> "QuadEndo":
        kind = IDENTITY if self.kind == other.kind else CONJUGATION
        return QuadEndo(kind, self.ring)


def _is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def generator_images(R: QuadRing) -> list[tuple[int, int]]:
    """All (a, b) with gen ↦ a + b·gen extending to a ring endomorphism.

    SQRT: σ(√d) = a + b√d squares to d, i.e. a² + d b² = d and 2ab = 0.
    OMEGA: σ(√d) = 2σ(ω) - 1 = (2a+b-1) + b√d squares to d, i.e.
    (2a+b-1)² + d b² = d and 2b(2a+b-1) = 0.
    """
    d = R.d
    sols: list[tuple[int, int]] = []
    if R.branch == SQRT:
        # a = 0: d b² = d
        sols += [(0, b) for b in (1, -1)]
        # b = 0: a² = d, impossible for squarefree d != 1
        if _is_square(d):
            r = isqrt(d)
            sols += [(r, 0), (-r, 0)]
    else:
        # 2a + b - 1 = 0: then d b² = d, b = ±1 and a = (1 - b)/2
        for b in (1, -1):
            sols.append(((1 - b) // 2, b))
        # b = 0: (2a-1)² = d needs a square d; the half-integer root is rejected
        if _is_square(d):
            r = isqrt(d)
            sols += [((1 + s * r) // 2, 0) for s in (1, -1) if (1 + s * r) % 2 == 0]
    return sols


def classify(R: QuadRing) -> list[QuadEndo]:
    conj_gen = conj(R, R.generator)
    out = []
    for a, b in generator_images(R):
        if (a, b) == (0, 1):
            e = QuadEndo(IDENTITY, R)
        elif (a, b) == (conj_gen.a, conj_gen.b):
            e = QuadEndo(CONJUGATION, R)
        else:  # pragma: no cover - unreachable for squarefree d
            raise AssertionError(f"unexpected generator image {(a, b)} for d={R.d}")
        out.append(e)
    A = as_algebra(R)
    for e in out:
        if not check_endo(A, e.as_map()):  # pragma: no cover
            raise AssertionError(f"{e.kind} failed the endomorphism check for d={R.d}")
    return sorted(out, key=lambda e: e.kind != IDENTITY)


def apply_endo(phi: QuadEndo, x: QuadInt) -> QuadInt:
    if phi.kind == IDENTITY:
        return x
    return conj(phi.ring, x)


def check_injective(R: QuadRing, phi: AlgMap) -> bool:
    """Trivial kernel for an endomorphism of as_algebra(R).

    Raises NotAnEndomorphism when phi is not multiplicative and unital.
    """
    if not check_endo(as_algebra(R), phi):
        raise NotAnEndomorphism("map is not a unital ring endomorphism")
    return kernel(phi).rank == 0 and la.is_invertible(phi.matrix)


def endo_from_kind(R: QuadRing, kind: str) -> QuadEndo:
    if kind not in (IDENTITY, CONJUGATION):
        raise NotAnEndomorphism(f"unknown endomorphism kind {kind!r}")
    return QuadEndo(kind, R)


def to_dict(phi: QuadEndo) -> dict:
    out: dict = {"kind": phi.kind}
    if phi.kind == CONJUGATION:
        if phi.ring.branch == OMEGA:
            out["omega_image"] = "1-omega"
        else:
            out["sqrt_image"] = f"-sqrt({phi.ring.d})"
    return out
