import pytest
from hypothesis import given
from hypothesis import strategies as st

from painleve_pw.kodaira import (
    CLASS_TABLE_TAGS,
    FiberError,
    LatticeError,
    KodairaFiber,
    b1_vanishing_check,
    dolbeault_report,
    euler_characteristic,
    fiber,
    fiber_class,
    identify_fiber,
    lattice_certificate,
    motivic_class,
    parse_class,
    perverse_polynomial,
)

FIBERS_AT_INFINITY = ["D_4^(1)", "D_5^(1)", "D_6^(1)", "D_7^(1)", "D_8^(1)", "E_6^(1)", "E_7^(1)", "E_8^(1)"]


@pytest.mark.parametrize("tag,chi", [
    ("D_4^(1)", 6), ("D_5^(1)", 7), ("D_6^(1)", 8), ("D_7^(1)", 9), ("D_8^(1)", 10),
    ("E_6^(1)", 8), ("E_7^(1)", 9), ("E_8^(1)", 10), ("A_2^(1)", 3), ("I_1", 1), ("II", 2),
    ("III", 3), ("IV", 4),
])
def test_euler_characteristic(tag, chi):
    assert euler_characteristic(fiber(tag)) == chi


@pytest.mark.parametrize("tag", FIBERS_AT_INFINITY)
def test_tree_identity(tag):
    f = fiber(tag)
    assert f.is_connected()
    assert len(f.edges) == f.n_components - 1
    assert euler_characteristic(f) == f.n_components + 1


@pytest.mark.parametrize("n", range(2, 10))
def test_cycle_identity(n):
    f = fiber(f"I_{n}")
    assert len(f.edges) == f.n_components
    assert euler_characteristic(f) == n


def test_perverse_polynomials():
    assert str(perverse_polynomial(fiber("D_5^(1)"))) == "q^-1 + 3*q^-2*t^2 + q^-3*t^2"
    assert str(perverse_polynomial(fiber("E_7^(1)"))) == "q^-1 + q^-2*t^2 + q^-3*t^2"
    assert str(perverse_polynomial(fiber("D_8^(1)"))) == "q^-1 + q^-3*t^2"
    with pytest.raises(FiberError):
        perverse_polynomial(fiber("I_3"))


def test_cycle_radical():
    cert = lattice_certificate(fiber("A_3^(1)"))
    assert cert.radical_generator == (1, 1, 1, 1)


def test_d4_radical_has_centre_mark_two():
    f = fiber("D_4^(1)")
    cert = lattice_certificate(f)
    centre = max(range(5), key=lambda i: sum(1 for e in f.edges if i in e))
    assert cert.radical_generator[centre] == 2
    assert sorted(cert.radical_generator) == [1, 1, 1, 1, 2]


def test_e8_pivots():
    cert = lattice_certificate(fiber("E_8^(1)"))
    assert cert.radical_dimension == 1 and cert.negative_semidefinite
    assert all(p <= 0 for p in cert.pivots)


@pytest.mark.parametrize("tag", FIBERS_AT_INFINITY + ["A_2^(1)", "A_3^(1)", "I_2", "I_5", "III", "IV"])
def test_every_shipped_lattice(tag):
    f = fiber(tag)
    cert = lattice_certificate(f)
    assert cert.negative_semidefinite and cert.radical_dimension == 1
    assert cert.radical_generator == f.multiplicities


def test_wrong_marks_rejected():
    f = fiber("D_4^(1)")
    bad = KodairaFiber("bad", f.components, (1, 1, 1, 1, 1), f.edges)
    with pytest.raises(LatticeError):
        lattice_certificate(bad)


def test_definite_lattice_rejected():
    # a finite A_2 chain is negative definite: no radical
    chain = KodairaFiber("A_2", ("a", "b"), (1, 1), ((0, 1),))
    with pytest.raises(LatticeError):
        lattice_certificate(chain)


def test_b1_vanishing():
    assert b1_vanishing_check(fiber("D_6^(1)"))
    assert b1_vanishing_check(fiber("E_6^(1)"))
    assert not b1_vanishing_check(fiber("A_2^(1)"))


def test_dolbeault_report():
    r = dolbeault_report("D_4^(1)")
    assert (r.chi, r.d, r.b2_dolbeault) == (6, 4, 5)


def test_unknown_tag():
    with pytest.raises(FiberError):
        fiber("X_9")


@pytest.mark.parametrize("coeffs,tag", [
    ((0, 0, 1, 1), "I_2"),
    ((1, 0, 2, 1), "I_3"),
    ((0, 0, 2, 2), "I_4"),
    ((0, 2, 0, 1), "IV"),
    ((0, 1, 0, 1), "III"),
])
def test_quoted_identifications(coeffs, tag):
    assert identify_fiber(motivic_class(*coeffs)) == tag


def test_class_values():
    assert str(motivic_class(0, 0, 1, 1)) == "2L"
    assert str(motivic_class(0, 2, 0, 1)) == "3L + 1"
    assert parse_class("3L+1") == parse_class("0,2,0,1")
    assert parse_class("2*L") == motivic_class(0, 0, 1, 1)


def test_nodal_and_cuspidal_classes():
    assert identify_fiber(parse_class("L")) == "I_1"
    assert identify_fiber(parse_class("L + 1")) == "II"


@pytest.mark.parametrize("tag", CLASS_TABLE_TAGS)
def test_identify_inverts_class(tag):
    assert identify_fiber(fiber_class(tag)) == tag


def test_unidentified_class_refused():
    with pytest.raises(FiberError):
        identify_fiber(parse_class("L^2"))


@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))
def test_generator_classes_are_linear(a, b, c, d):
    m = motivic_class(a, b, c, d)
    assert m == motivic_class(a, 0, 0, 0) + motivic_class(0, b, 0, 0) + motivic_class(0, 0, c, 0) + motivic_class(0, 0, 0, d)
    # counting points over F_q: [pt] = 1, [C] = q, [C^x] = q - 1, [P^1] = q + 1
    q = 7
    value = sum(coef * q ** e for e, coef in enumerate(m.coefficients))
    assert value == a + b * q + c * (q - 1) + d * (q + 1)


def test_parse_class_errors():
    with pytest.raises(ValueError):
        parse_class("1,2,3")
    with pytest.raises(ValueError):
        parse_class("1,x,3,4")
    with pytest.raises(ValueError):
        parse_class("L +")
