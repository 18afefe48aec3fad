"""Ready-made algebras, maps and derivations used by the tests and the CLI docs."""
from __future__ import annotations

from .algebra import ENDO, LINEAR, AlgMap, StructAlgebra, make_algebra
from .endos import QuadEndo, endo_from_kind
from .quadring import as_algebra, make_ring
from .universal import GeneralDerivation, make_general_derivation


def nilpotent3() -> StructAlgebra:
    """Basis {1, x, y} with x² = y² = xy = 0."""
    z = [0, 0, 0]
    table = [
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[0, 1, 0], z, z],
        [[0, 0, 1], z, z],
    ]
    return make_algebra(3, [1, 0, 0], table)


def nil_map(x_image, y_image) -> AlgMap:
    """Unital map of nilpotent3 fixing 1 with the given images of x and y."""
    return AlgMap.from_images([[1, 0, 0], x_image, y_image], ENDO)


SWAP = ((0, 0, 1), (0, 1, 0))  # x ↔ y
KILL_Y = ((0, 1, 0), (0, 0, 0))  # x ↦ x, y ↦ 0
SHIFT = ((0, 0, 1), (0, 0, 0))  # x ↦ y, y ↦ 0


def case3_example() -> GeneralDerivation:
    """σ: x ↦ y, y ↦ 0; τ: x ↦ x, y ↦ 0; D(x) = y, D(y) = 0."""
    A = nilpotent3()
    values = AlgMap.from_images([[0, 0, 0], [0, 0, 1], [0, 0, 0]], LINEAR)
    return make_general_derivation(A, nil_map(*SHIFT), nil_map(*KILL_Y), values)


def case4_example() -> GeneralDerivation:
    """σ: x ↦ x, y ↦ 0; τ: x ↦ y, y ↦ 0; D(x) = x, D(y) = 0."""
    A = nilpotent3()
    values = AlgMap.from_images([[0, 0, 0], [0, 1, 0], [0, 0, 0]], LINEAR)
    return make_general_derivation(A, nil_map(*KILL_Y), nil_map(*SHIFT), values)


def quad_derivation(d: int, sigma: str, tau: str, alpha, beta) -> GeneralDerivation:
    """D(gen) = alpha + beta·gen on as_algebra(O_K), with rational alpha, beta allowed."""
    R = make_ring(d)
    s: QuadEndo = endo_from_kind(R, sigma)
    t: QuadEndo = endo_from_kind(R, tau)
    values = AlgMap.from_images([[0, 0], [alpha, beta]], LINEAR)
    return make_general_derivation(as_algebra(R), s.as_map(), t.as_map(), values)
