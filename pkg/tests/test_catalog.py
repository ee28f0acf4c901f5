"""Closed-form generator catalogs and catalog-vs-solver verification."""

import pytest

from liebider.algebra import AlgebraSpec, Window
from liebider.basis import Element, In, Ln, central
from liebider.catalog import (
    biderivation_entries,
    derivation_entries,
    expected_biderivation_dimension,
    expected_derivation_dimension,
    verify_biderivation_case,
    verify_derivation_case,
)
from liebider.rationals import rat
from liebider.solver import DeltaParam

W8 = Window(8, 4)
WITT = AlgebraSpec("witt")
VIR = AlgebraSpec("virasoro")


def D(x):
    return DeltaParam(rat(x))


def entry(spec, delta, degree, name):
    return dict(biderivation_entries(spec, D(delta), degree))[name]


def el(*pairs):
    return Element.from_pairs([(v, rat(c)) for v, c in pairs])


def test_pi_is_bracket():
    pi = entry(WITT, 1, 0, "pi")
    assert pi(Ln(3), Ln(-1)) == el((Ln(2), 4))
    pit = entry(VIR, 1, 0, "pi~")
    assert pit(Ln(2), Ln(-2)) == el((Ln(0), 4), (central("C0"), rat("1/2")))


def test_theta_values():
    th = entry(WITT, "1/2", 2, "theta_2")
    assert th(Ln(1), Ln(3)) == el((Ln(6), 1))
    assert th(Ln(3), Ln(1)) == el((Ln(6), 1))  # symmetric


def test_psi_values():
    psi0 = entry(AlgebraSpec("w", 0, 0), 1, -1, "psi_-1^0")
    assert psi0(Ln(2), Ln(1)) == el((In(2), 1))
    psi1 = entry(AlgebraSpec("w", 0, 1), 1, 0, "psi_0^1")
    assert psi1(Ln(1), Ln(2)) == el((In(3), 3))
    assert psi1(Ln(1), In(2)).is_zero


def test_theta_0m1_values():
    th = entry(AlgebraSpec("w", 0, -1), 1, 0, "Theta^(0,-1)")
    assert th(Ln(3), Ln(1)) == el((In(4), 2))
    assert th(Ln(1), Ln(3)) == el((In(4), -2))  # skew
    tht = entry(AlgebraSpec("wtilde", 0, -1), 1, 0, "Theta~^(0,-1)")
    assert tht(Ln(2), Ln(-2)) == el((In(0), 4), (central("C1^-1"), rat("1/2")))


def test_w_minus1_half_values():
    spec = AlgebraSpec("w", "1/3", -1)
    phi = entry(spec, "1/2", 1, "Phi_1")
    assert phi(Ln(2), Ln(3)) == el((Ln(6), 1))
    assert phi(Ln(2), In(3)) == el((In(6), 1))
    assert phi(In(2), In(3)).is_zero
    psi = entry(spec, "1/2", 1, "Psi_1")
    assert psi(Ln(2), Ln(3)) == el((In(6), 1))
    assert psi(Ln(2), In(3)).is_zero


def test_central_square_values():
    spec = AlgebraSpec("wtilde", 0, 1)
    for delta in (1, "1/2", "7/5"):
        names = [n for n, _ in biderivation_entries(spec, D(delta), 0)]
        assert {"A", "B", "C"} <= set(names)
    A = entry(spec, "7/5", 0, "A")
    assert A(In(0), In(0)) == el((central("C0"), 1))
    assert A(In(0), In(1)).is_zero
    assert A(Ln(0), Ln(0)).is_zero


def test_entries_are_homogeneous():
    cases = [
        (WITT, "1/2", 3),
        (AlgebraSpec("w", 0, 1), 1, -2),
        (AlgebraSpec("wtilde", 0, -1), 1, 0),
    ]
    for spec, delta, degree in cases:
        basis = spec.basis_vectors(4)
        for name, fn in biderivation_entries(spec, D(delta), degree):
            for u in basis:
                for v in basis:
                    val = fn(u, v)
                    if not val.is_zero:
                        assert val.homogeneous_degree() == u.degree + v.degree + degree, name


def test_derivation_entry_values():
    d1 = dict(derivation_entries(AlgebraSpec("w", 0, 0), D(1), 0))
    assert d1["D_1"](In(5)) == el((In(5), 1))
    assert d1["D_1"](Ln(5)).is_zero
    assert d1["D_2^0"](Ln(5)) == el((In(5), 5))
    assert d1["D_3"](Ln(5)) == el((In(5), 1))
    half = dict(derivation_entries(AlgebraSpec("w", "1/3", -1), D("1/2"), 2))
    assert half["phi_2"](Ln(1)) == el((Ln(3), 1))
    assert half["phi_2"](In(1)) == el((In(3), 1))
    assert half["psi_2"](Ln(1)) == el((In(3), 1))
    assert half["psi_2"](In(1)).is_zero


def test_derivation_entries_centerless_only():
    with pytest.raises(ValueError):
        derivation_entries(VIR, D(1), 0)
    with pytest.raises(ValueError):
        derivation_entries(AlgebraSpec("wtilde", 0, 0), D(1), 0)


def test_expected_dimensions():
    assert expected_biderivation_dimension(WITT, D(1), 0) == 1
    assert expected_biderivation_dimension(WITT, D(2), 0) == 0
    assert expected_biderivation_dimension(AlgebraSpec("wtilde", 0, 1), D(1), 0) == 4
    # ad I_0 vanishes identically in W(0,0) and is not counted
    assert expected_derivation_dimension(AlgebraSpec("w", 0, 0), D(1), 0) == 4
    assert expected_derivation_dimension(AlgebraSpec("w", 0, 1), D(1), 0) == 4


VERIFY_BIDER = [
    (WITT, 1, 0),
    (WITT, "1/2", -3),
    (WITT, "1/3", 2),
    (VIR, 1, 0),
    (VIR, 2, 0),
    (AlgebraSpec("w", 0, 0), 1, 1),
    (AlgebraSpec("w", 0, 1), 1, 0),
    (AlgebraSpec("w", 0, -1), 1, 0),
    (AlgebraSpec("w", 0, -1), "1/2", -2),
    (AlgebraSpec("w", "1/3", -1), "1/2", 0),
    (AlgebraSpec("w", "2/5", 2), 1, 0),
    (AlgebraSpec("wtilde", 0, 0), 1, 0),
    (AlgebraSpec("wtilde", 0, 1), 1, 0),
    (AlgebraSpec("wtilde", 0, 1), "7/5", 0),
    (AlgebraSpec("wtilde", 0, -1), 1, 0),
    (AlgebraSpec("wtilde", "1/3", -1), "1/2", 2),
    (AlgebraSpec("wtilde", "1/2", 0), 1, 0),
]


@pytest.mark.parametrize(
    "spec,delta,degree",
    VERIFY_BIDER,
    ids=lambda v: str(v) if not isinstance(v, AlgebraSpec) else v.label(),
)
def test_verify_biderivation_cases(spec, delta, degree):
    result = verify_biderivation_case(spec, D(delta), degree, W8)
    assert result.status == "confirmed", result.to_jsonable()


VERIFY_DERIV = [
    (WITT, 1, 2),
    (WITT, "1/2", 0),
    (WITT, 3, 1),
    (AlgebraSpec("w", 0, 0), 1, 0),
    (AlgebraSpec("w", 0, 2), 1, 0),
    (AlgebraSpec("w", "1/3", -1), "1/2", -1),
    (AlgebraSpec("w", "2/5", 2), "1/2", 0),
]


@pytest.mark.parametrize(
    "spec,delta,degree",
    VERIFY_DERIV,
    ids=lambda v: str(v) if not isinstance(v, AlgebraSpec) else v.label(),
)
def test_verify_derivation_cases(spec, delta, degree):
    result = verify_derivation_case(spec, D(delta), degree, W8)
    assert result.status == "confirmed", result.to_jsonable()


def test_verify_inconclusive_for_unsupported_kind():
    result = verify_derivation_case(VIR, D(1), 0, W8)
    assert result.status == "inconclusive"


def test_case_result_jsonable():
    result = verify_biderivation_case(WITT, D(1), 0, W8)
    js = result.to_jsonable()
    assert js["status"] == "confirmed"
    assert js["expected_generators"] == ["pi"]
    assert js["window"] == {"N": 8, "M": 4}
