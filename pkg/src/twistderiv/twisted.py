"""(σ,τ)-derivations of quadratic O_K.

A Z-linear map D with D(1) = 0 is fixed by its value on the generator:
D(a + b·gen) = b·D(gen).  Every such map is a (σ,τ)-derivation as soon as
σ ≠ τ, so the derivations form a free O_K-module of rank one.

Innerness is decided by computing the only possible witness
w = D(gen) / (τ-σ)(gen) in Q(√d) and testing whether it is integral.
For Z[√d] this reproduces the condition "2d | α and 2 | β" on
D(√d) = α + β√d.  For Z[ω] with D(ω) = α + βω the same computation gives
w = ∓(β/2 + (2α+β)/(2d)·√d), which is integral exactly when d | 2α + β;
parity of β plays no role (d=5, α=1, β=2 is not inner).
"""
from __future__ import annotations

from dataclasses import dataclass

from .endos import QuadEndo
from .errors import DimensionMismatch, SigmaEqualsTau
from .quadring import QuadInt, QuadRat, QuadRing, member


@dataclass(frozen=True)
class GenLinearMap:
    """Z-linear map killing 1, given by its value on gen, with a claimed twist pair.

    Nothing guarantees the Leibniz law here; use :func:`leibniz_holds`.
    """

    ring: QuadRing
    sigma: QuadEndo
    tau: QuadEndo
    image_of_gen: QuadInt

    def __post_init__(self):
        for part in (self.sigma.ring, self.tau.ring, self.image_of_gen.ring):
            if part != self.ring:
                raise DimensionMismatch("derivation data from different rings")

    def __call__(self, x: QuadInt) -> QuadInt:
        return apply(self, x)


@dataclass(frozen=True)
class TwistedDerivation(GenLinearMap):
    def __post_init__(self):
        super().__post_init__()
        if self.sigma.kind == self.tau.kind:
            raise SigmaEqualsTau("a twisted derivation needs sigma != tau")


def make_derivation(ring: QuadRing, sigma: QuadEndo, tau: QuadEndo, alpha: int, beta: int) -> TwistedDerivation:
    return TwistedDerivation(ring, sigma, tau, ring(alpha, beta))


def apply(D: GenLinearMap, x: QuadInt) -> QuadInt:
    return x.b * D.image_of_gen


def leibniz_holds(D: GenLinearMap, x: QuadInt, y: QuadInt) -> bool:
    return D(x * y) == D(x) * D.tau(y) + D.sigma(x) * D(y)


def twist_difference(sigma: QuadEndo, tau: QuadEndo) -> QuadInt:
    """(τ - σ)(gen)."""
    g = sigma.ring.generator
    return tau(g) - sigma(g)


def inner_of(ring: QuadRing, sigma: QuadEndo, tau: QuadEndo, w: QuadInt) -> TwistedDerivation:
    """δ_w(a) = w·τ(a) - σ(a)·w = w·(τ-σ)(a)."""
    return TwistedDerivation(ring, sigma, tau, w * twist_difference(sigma, tau))


def inner_witness(D: GenLinearMap) -> tuple[QuadRat, QuadInt | None]:
    """Return (candidate, witness) with witness = None when D is not inner.

    The candidate is the unique w in Q(√d) with w·(τ-σ)(gen) = D(gen); it is
    unique because Q(√d) is a field and (τ-σ)(gen) ≠ 0.
    """
    if D.sigma.kind == D.tau.kind:
        raise SigmaEqualsTau("innerness needs sigma != tau")
    cand = D.image_of_gen.to_rat() / twist_difference(D.sigma, D.tau).to_rat()
    w = member(D.ring, cand)
    if w is not None:
        assert inner_of(D.ring, D.sigma, D.tau, w).image_of_gen == D.image_of_gen
    return cand, w


def scale(c: QuadInt, D: TwistedDerivation) -> TwistedDerivation:
    return TwistedDerivation(D.ring, D.sigma, D.tau, c * D.image_of_gen)


def bimodule_act(a1: QuadInt, a2: QuadInt, D: TwistedDerivation) -> TwistedDerivation:
    """x ↦ σ(a1)·D(x)·τ(a2)."""
    return TwistedDerivation(D.ring, D.sigma, D.tau, D.sigma(a1) * D.image_of_gen * D.tau(a2))


def free_generator(ring: QuadRing, sigma: QuadEndo, tau: QuadEndo) -> TwistedDerivation:
    """E with E(gen) = 1; every D equals scale(D(gen), E)."""
    return TwistedDerivation(ring, sigma, tau, ring.one)


def to_dict(D: GenLinearMap) -> dict:
    return {
        "d": D.ring.d,
        "sigma": D.sigma.kind,
        "tau": D.tau.kind,
        "alpha": D.image_of_gen.a,
        "beta": D.image_of_gen.b,
    }
