"""Exact computation of twisted (σ,τ)-derivations over quadratic integer rings,
Q[x], and finite-dimensional commutative algebras."""

__version__ = "0.1.0"
