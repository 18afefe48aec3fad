"""Exception hierarchy. Every error carries a stable ``code`` used by the CLI."""


class TwistDerivError(ValueError):
    code = "error"


class DimensionMismatch(TwistDerivError):
    code = "dimension_mismatch"


class NonCommutative(TwistDerivError):
    code = "non_commutative"


class NonAssociative(TwistDerivError):
    code = "non_associative"


class BadUnit(TwistDerivError):
    code = "bad_unit"


class NotAnIdeal(TwistDerivError):
    code = "not_an_ideal"


class NotAnEndomorphism(TwistDerivError):
    code = "not_an_endomorphism"


class NotSquarefree(TwistDerivError):
    code = "not_squarefree"


class DisallowedD(TwistDerivError):
    code = "disallowed_d"


class TooLargeToFactor(TwistDerivError):
    code = "too_large_to_factor"


class SigmaEqualsTau(TwistDerivError):
    code = "sigma_equals_tau"


class BothZero(TwistDerivError):
    code = "both_zero"


class InexactDivision(TwistDerivError):
    code = "inexact_division"


class PolySyntaxError(TwistDerivError):
    code = "poly_syntax"


class LeibnizViolated(TwistDerivError):
    code = "leibniz_violated"


class TauNotInvertible(TwistDerivError):
    code = "tau_not_invertible"


class SigmaNotInvertible(TwistDerivError):
    code = "sigma_not_invertible"


class InvertibleEndo(TwistDerivError):
    code = "invertible_endo"


class KernelNotContained(TwistDerivError):
    code = "kernel_not_contained"


class DiagramBroken(TwistDerivError):
    """A universal construction failed one of its own identities (a bug)."""

    code = "diagram_broken"
