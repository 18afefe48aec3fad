import itertools
import json
import random
from fractions import Fraction as F

import pytest

from twistderiv import linalg as la
from twistderiv.algebra import ENDO, LINEAR, AlgMap, kernel, make_algebra
from twistderiv.errors import (
    DiagramBroken,
    InvertibleEndo,
    KernelNotContained,
    LeibnizViolated,
    NotAnEndomorphism,
    SigmaEqualsTau,
    SigmaNotInvertible,
    TauNotInvertible,
    TwistDerivError,
)
from twistderiv.instances import (
    KILL_Y,
    SHIFT,
    SWAP,
    case3_example,
    case4_example,
    nil_map,
    nilpotent3,
    quad_derivation,
)
from twistderiv.universal import (
    BUILDERS,
    FactorizationCertificate,
    build_case1,
    build_case2,
    build_case3,
    build_case4,
    case_problem,
    cert_from_dict,
    cert_to_dict,
    flat_f,
    make_general_derivation,
    verify_certificate,
)

ORDERS = [("id", "conj"), ("conj", "id")]


def nil_derivation(sigma, tau, dx, dy):
    A = nilpotent3()
    values = AlgMap.from_images([[0, 0, 0], dx, dy], LINEAR)
    return make_general_derivation(A, nil_map(*sigma), nil_map(*tau), values)


def nil_derivations(sigma, tau, box=(-1, 0, 1)):
    """Every (sigma, tau)-derivation of nilpotent3 with D(x), D(y) in a small box."""
    out = []
    for v in itertools.product(box, repeat=6):
        try:
            out.append(nil_derivation(sigma, tau, v[:3], v[3:]))
        except TwistDerivError:
            pass
    return out


def flat_value(cert, i, j):
    lay = cert.layout
    return la.column(flat_f(cert.case, cert.tensor, lay, cert.derivation), cert.tensor.index(i, j))


def mutate(cert, field, i, j, delta=F(1)):
    rows = [list(r) for r in getattr(cert, field)]
    rows[i][j] += delta
    kwargs = {k: getattr(cert, k) for k in ("case", "derivation", "layout", "carrier", "delta_images", "f_matrix")}
    kwargs[field] = la.mat(rows)
    return FactorizationCertificate(**kwargs)


# --- GeneralDerivation ------------------------------------------------------


def test_make_general_derivation_errors():
    A = nilpotent3()
    good = AlgMap.from_images([[0, 0, 0], [0, 0, 1], [0, 0, 0]], LINEAR)
    with pytest.raises(SigmaEqualsTau):
        make_general_derivation(A, nil_map(*SHIFT), nil_map(*SHIFT), good)
    with pytest.raises(NotAnEndomorphism):
        bad = AlgMap.from_images([[1, 0, 0], [1, 1, 0], [0, 0, 1]], ENDO)  # x ↦ 1 + x
        make_general_derivation(A, bad, nil_map(*SHIFT), good)
    with pytest.raises(LeibnizViolated):
        make_general_derivation(A, nil_map(*SHIFT), nil_map(*KILL_Y), AlgMap.from_images([[1, 0, 0], [0, 0, 0], [0, 0, 0]]))


def test_dual_numbers_with_equal_maps_is_rejected():
    dual = make_algebra(2, [1, 0], [[[1, 0], [0, 1]], [[0, 1], [0, 0]]])
    ident = AlgMap(la.identity(2), ENDO)
    with pytest.raises(SigmaEqualsTau):
        make_general_derivation(dual, ident, ident, AlgMap.from_images([[0, 0], [0, 1]]))


# --- case 1 / case 2 ----------------------------------------------------------


def test_case1_sqrt3_example():
    D = quad_derivation(3, "id", "conj", 1, 0)
    cert = build_case1(D)
    T = cert.tensor
    s = la.unit_vec(2, 1)
    assert cert.delta(1) == la.scale(-1, la.add(T.pure(la.unit_vec(2, 0), s), T.pure(s, la.unit_vec(2, 0))))
    assert flat_value(cert, 0, 1) == la.vec([-1, 0])  # f_L(1⊗s) = D(τ⁻¹ s) = -1
    assert flat_value(cert, 1, 0) == la.vec([0, 0])  # f_L(s⊗1) = s·D(1) = 0
    assert cert.f(cert.delta(1)) == la.vec([1, 0])
    assert verify_certificate(cert).all_pass


def test_case1_sqrt_minus5_example():
    cert = build_case1(quad_derivation(-5, "conj", "id", 0, 1))
    assert cert.f(cert.delta(1)) == la.vec([0, 1])
    assert verify_certificate(cert).all_pass


def test_case2_sqrt3_example():
    D = quad_derivation(3, "conj", "id", 1, 0)
    cert = build_case2(D)
    assert flat_value(cert, 1, 0) == la.vec([1, 0])  # f_R(s⊗1) = -D(σ⁻¹ s) = 1
    assert flat_value(cert, 0, 1) == la.vec([0, 0])  # f_R(1⊗s) = -D(1)·s = 0
    assert cert.f(cert.delta(1)) == la.vec([1, 0])
    assert verify_certificate(cert).all_pass


@pytest.mark.parametrize("case", [1, 2])
@pytest.mark.parametrize("order", ORDERS)
def test_zero_derivation_certificate(case, order):
    cert = BUILDERS[case](quad_derivation(-5, *order, 0, 0))
    assert verify_certificate(cert).all_pass
    assert all(cert.f(cert.delta(i)) == la.zero_vec(2) for i in range(2))


@pytest.mark.parametrize("d", [3, -5, 5, -3])
@pytest.mark.parametrize("order", ORDERS)
@pytest.mark.parametrize("case", [1, 2])
def test_quadratic_cases_random(d, order, case):
    rng = random.Random(31 * d + case)
    for _ in range(5):
        a, b = F(rng.randint(-9, 9), rng.randint(1, 4)), F(rng.randint(-9, 9), rng.randint(1, 4))
        cert = BUILDERS[case](quad_derivation(d, *order, a, b))
        report = verify_certificate(cert)
        assert report.all_pass, report.failures
        # every δ image is in the carrier and f∘δ = D
        for i in range(2):
            assert cert.carrier.contains(cert.delta(i))
            assert cert.f(cert.delta(i)) == cert.derivation.values.image_of(i)


@pytest.mark.parametrize("case", [1, 2])
def test_linearity_on_random_carrier_elements(case):
    rng = random.Random(case)
    D = quad_derivation(3, "id", "conj", 2, -1)
    cert = BUILDERS[case](D)
    A, T = D.algebra, cert.tensor
    for _ in range(30):
        coeffs = [F(rng.randint(-5, 5)) for _ in range(cert.carrier.rank)]
        t = cert.carrier.element(coeffs)
        a = la.vec([rng.randint(-5, 5), rng.randint(-5, 5)])
        if case == 1:
            assert cert.f(T.algebra.mul_vec(T.left_unit(a), t)) == A.mul_vec(a, cert.f(t))
        else:
            assert cert.f(T.algebra.mul_vec(t, T.right_unit(a))) == A.mul_vec(cert.f(t), a)


def test_case_guards_for_non_invertible_maps():
    D = case3_example()
    with pytest.raises(TauNotInvertible):
        build_case1(D)
    with pytest.raises(SigmaNotInvertible):
        build_case2(D)


# --- O_K inputs reject cases 3 / 4 ----------------------------------------------


@pytest.mark.parametrize("d", [3, -5, 5, -3, 13])
@pytest.mark.parametrize("order", ORDERS)
def test_quadratic_rings_reject_cases_3_and_4(d, order):
    D = quad_derivation(d, *order, 1, 1)
    with pytest.raises(InvertibleEndo):
        build_case3(D)
    with pytest.raises(InvertibleEndo):
        build_case4(D)


# --- case 3 -------------------------------------------------------------------


def test_case3_nilpotent_example():
    cert = build_case3(case3_example())
    assert kernel(cert.derivation.tau) == la.Submodule.span([[0, 0, 1]], 3)
    T = cert.tensor
    assert cert.layout.right.dim == 2
    # Δ_L(x) = 1⊗x̄ - y⊗1̄
    expected = la.sub(T.pure(la.unit_vec(3, 0), la.unit_vec(2, 1)), T.pure(la.unit_vec(3, 2), la.unit_vec(2, 0)))
    assert cert.delta(1) == expected
    assert cert.f(cert.delta(1)) == la.vec([0, 0, 1])
    assert cert.f(cert.delta(2)) == la.zero_vec(3)
    # ψ∘π = τ
    assert la.matmul(cert.layout.iso.matrix, cert.layout.right_twist.matrix) == cert.derivation.tau.matrix
    assert verify_certificate(cert).all_pass


def test_case3_zero_derivation():
    cert = build_case3(nil_derivation(SHIFT, KILL_Y, [0, 0, 0], [0, 0, 0]))
    assert verify_certificate(cert).all_pass


def test_case3_kernel_not_contained():
    with pytest.raises(KernelNotContained):
        build_case3(nil_derivation(SHIFT, KILL_Y, [0, 0, 1], [0, 1, 0]))


def test_case3_with_invertible_swap_is_rejected():
    D = nil_derivation(SWAP, KILL_Y, [0, 0, 1], [0, 0, 0])
    with pytest.raises(InvertibleEndo):
        build_case3(D)


def test_case3_search_oracle():
    """Every small derivation passing the case-3 guard yields a passing certificate."""
    passed = 0
    for D in nil_derivations(SHIFT, KILL_Y):
        if case_problem(3, D) is None:
            assert verify_certificate(build_case3(D)).all_pass
            passed += 1
        else:
            assert isinstance(case_problem(3, D), KernelNotContained)
    assert passed == 9


# --- case 4 -------------------------------------------------------------------


def test_case4_search_oracle_finds_the_shipped_instance():
    hits = []
    for sigma, tau in itertools.permutations([SHIFT, KILL_Y], 2):
        for D in nil_derivations(sigma, tau):
            if case_problem(4, D) is None and not la.is_zero(la.vec(x for row in D.values.matrix for x in row)):
                assert verify_certificate(build_case4(D)).all_pass
                hits.append(D)
    assert case4_example() in hits


def test_case4_example():
    cert = build_case4(case4_example())
    assert cert.layout.left.dim == 2
    assert cert.f(cert.delta(1)) == la.vec([0, 1, 0])
    assert verify_certificate(cert).all_pass


def test_case4_guards():
    with pytest.raises(KernelNotContained):
        build_case4(nil_derivation(KILL_Y, SHIFT, [0, 0, 0], [0, 1, 0]))
    with pytest.raises(InvertibleEndo):
        build_case4(nil_derivation(KILL_Y, SWAP, [0, 0, 0], [0, 0, 0]))
    assert verify_certificate(build_case4(nil_derivation(KILL_Y, SHIFT, [0, 0, 0], [0, 0, 0]))).all_pass


# --- verification and mutation --------------------------------------------------


def _certs():
    return [
        build_case1(quad_derivation(3, "id", "conj", 1, 2)),
        build_case2(quad_derivation(-5, "conj", "id", 3, -1)),
        build_case3(case3_example()),
        build_case4(case4_example()),
    ]


@pytest.mark.parametrize("cert", _certs(), ids=["case1", "case2", "case3", "case4"])
def test_single_entry_mutations_are_caught(cert):
    rng = random.Random(cert.case)
    for field in ("f_matrix", "delta_images"):
        rows, cols = la.shape(getattr(cert, field))
        for i in range(rows):
            for j in range(cols):
                bump = F(rng.choice([-3, -1, 1, 2]), rng.choice([1, 2, 5]))
                assert not verify_certificate(mutate(cert, field, i, j, bump)).all_pass, (field, i, j)


def test_zeroed_delta_images_fail_composite():
    cert = build_case1(quad_derivation(3, "id", "conj", 1, 0))
    n, m = la.shape(cert.delta_images)
    broken = FactorizationCertificate(
        cert.case, cert.derivation, cert.layout, cert.carrier, la.zeros(n, m), cert.f_matrix
    )
    failures = {c.name for c in verify_certificate(broken).failures}
    assert "composite" in failures


def test_perturbed_f_matrix_flags_composite():
    cert = build_case1(quad_derivation(3, "id", "conj", 1, 0))
    failures = {c.name for c in verify_certificate(mutate(cert, "f_matrix", 0, 0)).failures}
    assert "f_definition" in failures
    assert "composite" in failures or "f_linearity" in failures


def test_report_lists_every_check():
    report = verify_certificate(_certs()[0])
    assert [c.name for c in report.checks] == [
        "derivation",
        "case_hypothesis",
        "construction_data",
        "twist_maps",
        "carrier_ideal",
        "delta_definition",
        "carrier_membership",
        "delta_leibniz",
        "f_linearity",
        "f_definition",
        "composite",
        "uniqueness",
    ]
    assert report.to_dict()["all_pass"] is True


# --- JSON ------------------------------------------------------------------------


@pytest.mark.parametrize("cert", _certs(), ids=["case1", "case2", "case3", "case4"])
def test_json_round_trip(cert):
    text = json.dumps(cert_to_dict(cert), separators=(",", ":"))
    back = cert_from_dict(json.loads(text))
    assert json.dumps(cert_to_dict(back), separators=(",", ":")) == text
    assert verify_certificate(back).all_pass


def test_json_field_order():
    keys = list(cert_to_dict(_certs()[2]).keys())
    assert keys[:2] == ["case", "algebra"]
    assert keys[-4:] == ["carrier", "delta_images", "f_matrix", "checks"]


def test_malformed_certificate_raises_input_error():
    with pytest.raises(TwistDerivError):
        cert_from_dict({"case": 1})


def test_diagram_broken_is_a_twistderiv_error():
    assert issubclass(DiagramBroken, TwistDerivError)
