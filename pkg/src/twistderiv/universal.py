"""Universal factorization D = f ∘ δ for twisted derivations of finite-dimensional algebras.

All four constructions share one shape.  Pick algebras L and R, algebra maps
Σ: A → L and T: A → R, and put

    δ(a) = 1⊗T(a) - Σ(a)⊗1   in L⊗R,

with carrier the ideal of L⊗R generated by the δ(a).  Then:

=====  =====  =====  =====  ==================  ==========================
case   L      R      Σ      T                   f
=====  =====  =====  =====  ==================  ==========================
1      A      A      σ      τ                   x⊗y ↦ x·D(τ⁻¹ y)
2      A      A      σ      τ                   x⊗y ↦ -D(σ⁻¹ x)·y
3      A      A/Kτ   σ      π_τ                 x⊗ȳ ↦ x·D(s_τ ȳ)
4      A/Kσ   A      π_σ    τ                   x̄⊗y ↦ -D(s_σ x̄)·y
=====  =====  =====  =====  ==================  ==========================

where s is the linear section of the projection π.  In cases 3 and 4 the
quotient A/K stands in for the image of the endomorphism through the
isomorphism ψ = τ∘s_τ (resp. φ = σ∘s_σ), which is built and checked
explicitly; ψ∘π_τ = τ.  Cases 1 and 3 make f linear for the plain left
action x·(a⊗b) = (xa)⊗b, cases 2 and 4 for the plain right action.  The
(Σ,T)-twisted bimodule action used by the Leibniz law for δ is a separate
operation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import linalg as la
from .algebra import (
    ENDO,
    LINEAR,
    AlgMap,
    StructAlgebra,
    Tensor,
    algebra_from_dict,
    algebra_to_dict,
    check_endo,
    check_hom,
    ideal_closure,
    is_ideal,
    kernel,
    map_from_dict,
    map_to_dict,
    matrix_to_json,
    quotient,
    tensor,
)
from .errors import (
    DiagramBroken,
    DimensionMismatch,
    InvertibleEndo,
    KernelNotContained,
    LeibnizViolated,
    NotAnEndomorphism,
    SigmaEqualsTau,
    SigmaNotInvertible,
    TauNotInvertible,
    TwistDerivError,
)
from .linalg import Matrix, Submodule, Vector

CASES = (1, 2, 3, 4)
LEFT_LINEAR = {1: True, 2: False, 3: True, 4: False}


@dataclass(frozen=True)
class GeneralDerivation:
    algebra: StructAlgebra
    sigma: AlgMap
    tau: AlgMap
    values: AlgMap

    def __call__(self, v: Sequence[Fraction]) -> Vector:
        return self.values(v)


def derivation_problems(A: StructAlgebra, sigma: AlgMap, tau: AlgMap, values: AlgMap) -> list[str]:
    """Every reason (sigma, tau, values) fails to be a twisted derivation of A."""
    n = A.dim
    if la.shape(values.matrix) != (n, n):
        return [f"derivation matrix has shape {la.shape(values.matrix)}, expected {(n, n)}"]
    out = []
    for name, phi in (("sigma", sigma), ("tau", tau)):
        if not check_endo(A, phi):
            out.append(f"{name} is not an algebra endomorphism")
    if out:
        return out
    if sigma.matrix == tau.matrix:
        out.append("sigma equals tau")
    if not la.is_zero(values(A.unit)):
        out.append("D(1) != 0")
    imgs = [values.image_of(i) for i in range(n)]
    for i in range(n):
        for j in range(n):
            lhs = values(A.table[i][j])
            rhs = la.add(A.mul_vec(imgs[i], tau.image_of(j)), A.mul_vec(sigma.image_of(i), imgs[j]))
            if lhs != rhs:
                out.append(f"Leibniz fails on (e_{i}, e_{j})")
    return out


def make_general_derivation(A: StructAlgebra, sigma: AlgMap, tau: AlgMap, values: AlgMap) -> GeneralDerivation:
    for name, phi in (("sigma", sigma), ("tau", tau)):
        if la.shape(phi.matrix) != (A.dim, A.dim) or not check_endo(A, phi):
            raise NotAnEndomorphism(f"{name} is not an algebra endomorphism")
    if sigma.matrix == tau.matrix:
        raise SigmaEqualsTau("sigma and tau must differ")
    problems = derivation_problems(A, sigma, tau, values)
    if problems:
        raise LeibnizViolated("; ".join(problems))
    return GeneralDerivation(
        A, AlgMap(sigma.matrix, ENDO), AlgMap(tau.matrix, ENDO), AlgMap(values.matrix, LINEAR)
    )


@dataclass(frozen=True)
class Layout:
    """The case-dependent data from which δ, the carrier and f are built."""

    left: StructAlgebra
    right: StructAlgebra
    left_twist: AlgMap
    right_twist: AlgMap
    inverse: AlgMap  # τ⁻¹ or s_τ (R → A) in left cases; σ⁻¹ or s_σ (L → A) in right cases
    iso: AlgMap | None = None  # ψ = τ∘s_τ or φ = σ∘s_σ in cases 3, 4


def case_problem(case: int, D: GeneralDerivation) -> TwistDerivError | None:
    """The error the case guard raises for D, or None if the case applies."""
    if case not in CASES:
        return DimensionMismatch(f"unknown case {case}")
    s_inv = la.is_invertible(D.sigma.matrix)
    t_inv = la.is_invertible(D.tau.matrix)
    if case == 1 and not t_inv:
        return TauNotInvertible("case 1 needs an invertible tau")
    if case == 2 and not s_inv:
        return SigmaNotInvertible("case 2 needs an invertible sigma")
    if case in (3, 4):
        if s_inv or t_inv:
            which = "sigma" if s_inv else "tau"
            return InvertibleEndo(f"case {case} needs neither map invertible; {which} is")
        k_d = kernel(D.values)
        name, phi = ("tau", D.tau) if case == 3 else ("sigma", D.sigma)
        if not k_d.contains_submodule(kernel(phi)):
            return KernelNotContained(f"kernel of {name} is not inside the kernel of D")
    return None


def layout(case: int, D: GeneralDerivation) -> Layout:
    err = case_problem(case, D)
    if err is not None:
        raise err
    A, sigma, tau = D.algebra, D.sigma, D.tau
    if case == 1:
        return Layout(A, A, sigma, tau, AlgMap(la.inverse(tau.matrix), ENDO))
    if case == 2:
        return Layout(A, A, sigma, tau, AlgMap(la.inverse(sigma.matrix), ENDO))
    if case == 3:
        Q = quotient(A, kernel(tau))
        iso = tau.compose(Q.section)
        return Layout(A, Q.algebra, sigma, Q.projection, Q.section, AlgMap(iso.matrix, ENDO))
    Q = quotient(A, kernel(sigma))
    iso = sigma.compose(Q.section)
    return Layout(Q.algebra, A, Q.projection, tau, Q.section, AlgMap(iso.matrix, ENDO))


def delta_images(T: Tensor, lay: Layout, dim: int) -> Matrix:
    cols = []
    for i in range(dim):
        e = la.unit_vec(dim, i)
        cols.append(la.sub(T.right_unit(lay.right_twist(e)), T.left_unit(lay.left_twist(e))))
    return la.from_columns(cols, T.algebra.dim)


def flat_f(case: int, T: Tensor, lay: Layout, D: GeneralDerivation) -> Matrix:
    """f on the flat tensor basis, as a dim(A) × dim(L⊗R) matrix."""
    A = D.algebra
    cols = []
    for a in range(T.left.dim):
        for b in range(T.right.dim):
            if LEFT_LINEAR[case]:
                cols.append(A.mul_vec(A.basis(a), D(lay.inverse.image_of(b))))
            else:
                cols.append(la.scale(-1, A.mul_vec(D(lay.inverse.image_of(a)), A.basis(b))))
    return la.from_columns(cols, A.dim)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class FactorizationCertificate:
    case: int
    derivation: GeneralDerivation
    layout: Layout
    carrier: Submodule
    delta_images: Matrix  # columns: δ(e_i) in flat L⊗R coordinates
    f_matrix: Matrix  # dim(A) × rank(carrier), acting on carrier coordinates
    checks: tuple[Check, ...] = field(default=())

    @property
    def tensor(self) -> Tensor:
        return tensor(self.layout.left, self.layout.right)

    def f(self, t: Sequence[Fraction]) -> Vector | None:
        c = self.carrier.coords(t)
        return None if c is None else la.matvec(self.f_matrix, c)

    def delta(self, i: int) -> Vector:
        return la.column(self.delta_images, i)


def _build(case: int, D: GeneralDerivation) -> FactorizationCertificate:
    lay = layout(case, D)
    T = tensor(lay.left, lay.right)
    n = D.algebra.dim
    deltas = delta_images(T, lay, n)
    carrier = ideal_closure(T.algebra, [la.column(deltas, i) for i in range(n)])
    f_mat = la.matmul(flat_f(case, T, lay, D), la.transpose(carrier.basis)) if carrier.rank else tuple(
        () for _ in range(n)
    )
    cert = FactorizationCertificate(case, D, lay, carrier, deltas, f_mat)
    checks = run_checks(cert)
    failed = [c for c in checks if not c.passed]
    if failed:
        raise DiagramBroken("; ".join(f"{c.name}: {c.detail}" for c in failed))
    return FactorizationCertificate(case, D, lay, carrier, deltas, f_mat, tuple(checks))


def build_case1(D: GeneralDerivation) -> FactorizationCertificate:
    """τ invertible: f_L(x⊗y) = x·D(τ⁻¹(y)), left A-linear."""
    return _build(1, D)


def build_case2(D: GeneralDerivation) -> FactorizationCertificate:
    """σ invertible: f_R(x⊗y) = -D(σ⁻¹(x))·y, right A-linear."""
    return _build(2, D)


def build_case3(D: GeneralDerivation) -> FactorizationCertificate:
    """Neither invertible and K_τ ⊆ K_D: carrier inside A⊗(A/K_τ)."""
    return _build(3, D)


def build_case4(D: GeneralDerivation) -> FactorizationCertificate:
    """Neither invertible and K_σ ⊆ K_D: carrier inside (A/K_σ)⊗A."""
    return _build(4, D)


BUILDERS: dict[int, Callable[[GeneralDerivation], FactorizationCertificate]] = {
    1: build_case1,
    2: build_case2,
    3: build_case3,
    4: build_case4,
}


# --- verification --------------------------------------------------------


def _guarded(name: str, fn: Callable[[], tuple[bool, str]]) -> Check:
    try:
        ok, detail = fn()
    except (TwistDerivError, ArithmeticError, IndexError, TypeError) as exc:
        return Check(name, False, f"{type(exc).__name__}: {exc}")
    return Check(name, ok, detail)


def run_checks(cert: FactorizationCertificate) -> list[Check]:
    """Recompute every identity of the certificate from its raw data."""
    D, lay, case = cert.derivation, cert.layout, cert.case
    A = D.algebra
    n = A.dim
    T = tensor(lay.left, lay.right)
    TA = T.algebra
    carrier = cert.carrier
    left_side = LEFT_LINEAR.get(case, True)

    def derivation():
        problems = derivation_problems(A, D.sigma, D.tau, D.values)
        return not problems, "; ".join(problems)

    def hypothesis():
        err = case_problem(case, D)
        return err is None, "" if err is None else str(err)

    def construction():
        expected = layout(case, D)
        diffs = [
            name
            for name in ("left", "right", "left_twist", "right_twist", "inverse", "iso")
            if getattr(expected, name) != getattr(lay, name)
        ]
        return not diffs, ", ".join(f"{d} differs from recomputation" for d in diffs)

    def twist_maps():
        bad = []
        if not check_hom(A, lay.left, lay.left_twist):
            bad.append("left twist is not an algebra map")
        if not check_hom(A, lay.right, lay.right_twist):
            bad.append("right twist is not an algebra map")
        if case in (1, 2):
            target = D.tau if case == 1 else D.sigma
            if la.matmul(target.matrix, lay.inverse.matrix) != la.identity(n):
                bad.append("inverse map is not a two-sided inverse")
        else:
            proj = lay.right_twist if case == 3 else lay.left_twist
            endo = D.tau if case == 3 else D.sigma
            iso = lay.iso
            if iso is None:
                bad.append("missing quotient isomorphism")
            else:
                if la.matmul(iso.matrix, proj.matrix) != endo.matrix:
                    bad.append("iso∘projection differs from the endomorphism")
                if not check_hom(lay.right if case == 3 else lay.left, A, iso):
                    bad.append("quotient isomorphism is not multiplicative")
                if la.rank(iso.matrix) != iso.source_dim:
                    bad.append("quotient isomorphism is not injective")
            if la.matmul(proj.matrix, lay.inverse.matrix) != la.identity(proj.target_dim):
                bad.append("section is not a right inverse of the projection")
        return not bad, "; ".join(bad)

    def carrier_ideal():
        if carrier.ambient != TA.dim:
            return False, f"carrier lives in Q^{carrier.ambient}, tensor has dim {TA.dim}"
        if la.rref(carrier.basis, carrier.ambient) != (carrier.basis, carrier.pivots):
            return False, "carrier basis is not in reduced echelon form"
        return is_ideal(TA, carrier), "carrier is not closed under multiplication"

    def delta_definition():
        expected = delta_images(T, lay, n)
        bad = [i for i in range(n) if la.column(expected, i) != cert.delta(i)]
        return not bad, ", ".join(f"delta(e_{i}) differs from 1⊗T(e_{i}) - Σ(e_{i})⊗1" for i in bad)

    def membership():
        bad = [i for i in range(n) if not carrier.contains(cert.delta(i))]
        return not bad, ", ".join(f"delta(e_{i}) outside carrier" for i in bad)

    def delta_leibniz():
        bad = []
        for i in range(n):
            for j in range(n):
                lhs = la.matvec(cert.delta_images, A.table[i][j])
                e_i, e_j = A.basis(i), A.basis(j)
                right_act = TA.mul_vec(cert.delta(i), T.right_unit(lay.right_twist(e_j)))
                left_act = TA.mul_vec(T.left_unit(lay.left_twist(e_i)), cert.delta(j))
                if lhs != la.add(right_act, left_act):
                    bad.append(f"({i},{j})")
        return not bad, "twisted Leibniz fails on " + ", ".join(bad) if bad else ""

    def f_linearity():
        bad = []
        for r, t in enumerate(carrier.basis):
            ft = cert.f(t)
            for a in range(n):
                if left_side:
                    moved = TA.mul_vec(T.left_unit(A.basis(a)), t)
                    expect = A.mul_vec(A.basis(a), ft)
                else:
                    moved = TA.mul_vec(t, T.right_unit(A.basis(a)))
                    expect = A.mul_vec(ft, A.basis(a))
                got = cert.f(moved)
                if got is None or got != expect:
                    bad.append(f"(carrier row {r}, e_{a})")
        side = "left" if left_side else "right"
        return not bad, f"{side} linearity fails on " + ", ".join(bad) if bad else ""

    def f_definition():
        expected = la.matmul(flat_f(case, T, lay, D), la.transpose(carrier.basis)) if carrier.rank else tuple(
            () for _ in range(n)
        )
        if la.shape(expected) != la.shape(cert.f_matrix):
            return False, "f matrix has the wrong shape"
        bad = [
            (i, j)
            for i in range(len(expected))
            for j in range(len(expected[i]))
            if expected[i][j] != cert.f_matrix[i][j]
        ]
        return not bad, ", ".join(f"f entry {ij} differs from the defining formula" for ij in bad)

    def composite():
        bad = []
        for i in range(n):
            got = cert.f(cert.delta(i))
            if got is None or got != D.values.image_of(i):
                bad.append(i)
        return not bad, ", ".join(f"f(delta(e_{i})) != D(e_{i})" for i in bad)

    def uniqueness():
        if left_side:
            gens = [TA.mul_vec(T.left_unit(A.basis(a)), cert.delta(i)) for a in range(n) for i in range(n)]
        else:
            gens = [TA.mul_vec(cert.delta(i), T.right_unit(A.basis(a))) for a in range(n) for i in range(n)]
        span = Submodule.span(gens, TA.dim)
        return span == carrier, "one-sided span of delta images is smaller than the carrier"

    return [
        _guarded("derivation", derivation),
        _guarded("case_hypothesis", hypothesis),
        _guarded("construction_data", construction),
        _guarded("twist_maps", twist_maps),
        _guarded("carrier_ideal", carrier_ideal),
        _guarded("delta_definition", delta_definition),
        _guarded("carrier_membership", membership),
        _guarded("delta_leibniz", delta_leibniz),
        _guarded("f_linearity", f_linearity),
        _guarded("f_definition", f_definition),
        _guarded("composite", composite),
        _guarded("uniqueness", uniqueness),
    ]


@dataclass(frozen=True)
class Report:
    case: int
    checks: tuple[Check, ...]

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "case": self.case,
            "all_pass": self.all_pass,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks],
        }


def verify_certificate(cert: FactorizationCertificate) -> Report:
    return Report(cert.case, tuple(run_checks(cert)))


# --- JSON ----------------------------------------------------------------


def cert_to_dict(cert: FactorizationCertificate) -> dict:
    D, lay = cert.derivation, cert.layout
    return {
        "case": cert.case,
        "algebra": algebra_to_dict(D.algebra),
        "sigma": map_to_dict(D.sigma),
        "tau": map_to_dict(D.tau),
        "derivation": map_to_dict(D.values),
        "left_factor": algebra_to_dict(lay.left),
        "right_factor": algebra_to_dict(lay.right),
        "left_twist": map_to_dict(lay.left_twist),
        "right_twist": map_to_dict(lay.right_twist),
        "inverse_map": map_to_dict(lay.inverse),
        "quotient_iso": None if lay.iso is None else map_to_dict(lay.iso),
        "carrier": {
            "ambient": cert.carrier.ambient,
            "rank": cert.carrier.rank,
            "basis": matrix_to_json(cert.carrier.basis),
        },
        "delta_images": matrix_to_json(cert.delta_images),
        "f_matrix": matrix_to_json(cert.f_matrix),
        "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in cert.checks],
    }


def _pivots(basis: Matrix) -> tuple[int, ...]:
    out = []
    for row in basis:
        out.append(next((k for k, x in enumerate(row) if x != 0), -1))
    return tuple(out)


def cert_from_dict(obj: dict) -> FactorizationCertificate:
    """Rebuild a certificate without re-validating it; run verify_certificate for that."""
    try:
        A = algebra_from_dict(obj["algebra"])
        D = GeneralDerivation(
            A, map_from_dict(obj["sigma"]), map_from_dict(obj["tau"]), map_from_dict(obj["derivation"])
        )
        iso = obj.get("quotient_iso")
        lay = Layout(
            algebra_from_dict(obj["left_factor"]),
            algebra_from_dict(obj["right_factor"]),
            map_from_dict(obj["left_twist"]),
            map_from_dict(obj["right_twist"]),
            map_from_dict(obj["inverse_map"]),
            None if iso is None else map_from_dict(iso),
        )
        c = obj["carrier"]
        basis = la.mat(c["basis"])
        carrier = Submodule(int(c["ambient"]), basis, _pivots(basis))
        n = A.dim
        f_rows = obj["f_matrix"]
        f_mat = la.mat(f_rows) if f_rows and f_rows[0] else tuple(() for _ in range(n))
        checks = tuple(Check(x["name"], bool(x["passed"]), x.get("detail", "")) for x in obj.get("checks", []))
        return FactorizationCertificate(int(obj["case"]), D, lay, carrier, la.mat(obj["delta_images"]), f_mat, checks)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, TwistDerivError):
            raise
        raise DimensionMismatch(f"malformed certificate: {exc}") from None
