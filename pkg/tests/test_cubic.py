import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from painleve_pw.cubic import (
    AFFINE_VARS,
    AffineSingularityError,
    CaseError,
    ParameterError,
    affine_smooth_check,
    cubic_from_quadric,
    default_registry,
    load_registry,
    make_case,
    non_vertex_boundary_singularities,
    singular_points_at_infinity,
    vertex_chart,
    vertex_is_singular_closed_form,
    vertex_is_singular_jacobian,
    VERTICES,
)
from painleve_pw.polynomial import parse_poly

ALL = ("VI", "V", "V_degen", "III(D6)", "III(D7)", "III(D8)", "IV", "II", "I")


def test_registry_order_and_contents():
    assert tuple(default_registry()) == ALL


def test_first_case_affine_cubic():
    c = make_case("I")
    assert c.f == parse_poly("x1*x2*x3 + x1 + x2 + 1", AFFINE_VARS)


def test_d8_affine_cubic():
    c = make_case("III(D8)")
    assert c.f == parse_poly("x1*x2*x3 + x1^2 + x2^2 + x2", AFFINE_VARS)


def test_second_case_homogenization():
    c = make_case("II", {"alpha": 2})
    assert c.F == parse_poly("x1*x2*x3 - x0^2*x1 - 2*x0^2*x2 - x0^2*x3 + 3*x0^3",
                             ("x0",) + AFFINE_VARS)


@pytest.mark.parametrize("tag", ALL)
def test_boundary_is_triangle(tag):
    F = make_case(tag).F
    assert F.substitute("x0", 0) == parse_poly("x1*x2*x3", F.variables)


def test_parameter_constraints():
    with pytest.raises(ParameterError):
        make_case("V", {"s3": 0})
    with pytest.raises(ParameterError):
        make_case("II", {"alpha": "0"})
    with pytest.raises(ParameterError):
        make_case("I", {"alpha": 1})
    with pytest.raises(ParameterError):
        make_case("VI", {"s1": "abc"})
    with pytest.raises(CaseError):
        make_case("VII")


def test_rejects_quadric_with_cubic_terms():
    with pytest.raises(Exception):
        cubic_from_quadric(parse_poly("x1^3", AFFINE_VARS))


def _points(tag):
    return [ch.vertex for ch in singular_points_at_infinity(make_case(tag))]


def test_singular_points_at_infinity():
    assert _points("VI") == []
    assert _points("II") == ["[0:1:0:0]", "[0:0:1:0]", "[0:0:0:1]"]
    assert _points("IV") == ["[0:0:1:0]", "[0:0:0:1]"]


@pytest.mark.parametrize("tag", ALL)
def test_points_match_registry(tag):
    expected = sorted(v for v, _ in default_registry()[tag].expected_singularities)
    assert sorted(_points(tag)) == expected


def test_vertex_criterion_agrees_with_jacobian_on_random_parameters():
    rng = random.Random(11)
    reg = default_registry()
    for tag, rec in reg.items():
        for _ in range(5):
            params = {p: Fraction(rng.randint(1, 9), rng.randint(1, 4)) * rng.choice((1, -1))
                      for p in rec.parameters}
            c = make_case(tag, params)
            assert non_vertex_boundary_singularities(c) == {}
            for v in VERTICES:
                assert vertex_is_singular_closed_form(c, v) == vertex_is_singular_jacobian(c, v)


coef = st.fractions(min_value=-4, max_value=4, max_denominator=3)


@settings(max_examples=50, deadline=None)
@given(st.lists(coef, min_size=10, max_size=10))
def test_no_off_vertex_boundary_singularities(cs):
    # on {x0 = 0, x_i = 0} the x_i-partial is the product of the other two
    # coordinates, so any singular boundary point is a vertex
    monos = ["x1^2", "x2^2", "x3^2", "x1*x2", "x1*x3", "x2*x3", "x1", "x2", "x3", "1"]
    Q = parse_poly(" + ".join(f"({c})*{m}" for c, m in zip(cs, monos)), AFFINE_VARS)
    c = cubic_from_quadric(Q)
    assert non_vertex_boundary_singularities(c) == {}
    singular = {ch.vertex for ch in singular_points_at_infinity(c)}
    # e_k is singular exactly when x_k^2 is missing from Q
    assert singular == {v for v, k in VERTICES.items() if cs[k - 1] == 0}


@pytest.mark.parametrize("tag", ALL)
def test_default_cases_are_affine_smooth(tag):
    cert = affine_smooth_check(make_case(tag))
    assert cert.smooth and len(cert.basis) == 1


def test_sixth_case_defaults_smooth():
    c = make_case("VI", {"s1": 1, "s2": 2, "s3": 3, "s4": 5})
    assert affine_smooth_check(c).smooth


def test_singular_affine_surface_fails():
    with pytest.raises(AffineSingularityError, match="singular affine point possible"):
        affine_smooth_check(parse_poly("x1^3 + x2^2 + x3^2", AFFINE_VARS))


def test_chart_at_degenerate_fifth_vertex():
    c = make_case("V_degen")
    ch = vertex_chart(c.F, "[0:0:0:1]")
    assert ch.variables == ("x0", "x1", "x2")
    assert ch.f2 == parse_poly("x1*x2", ch.variables)
    assert ch.f3.evaluate((1, 0, 0)) == 1


def test_custom_registry(tmp_path):
    path = tmp_path / "cases.json"
    path.write_text(json.dumps({"schema_version": "1.0", "cases": [{
        "tag": "toy", "quadric": "x1 + x2 + c", "parameters": ["c"], "defaults": {"c": "1"},
        "expected_fiber": "E_8^(1)",
        "expected_singularities": [{"vertex": "[0:1:0:0]", "type": "A_1"}],
    }]}))
    reg = load_registry(path)
    assert list(reg) == ["toy"]
    assert make_case("toy", registry=reg).f == parse_poly("x1*x2*x3 + x1 + x2 + 1", AFFINE_VARS)


def test_registry_duplicate_and_missing_fields(tmp_path):
    rec = {"tag": "t", "quadric": "x1", "expected_fiber": "E_8^(1)"}
    p = tmp_path / "dup.json"
    p.write_text(json.dumps([rec, rec]))
    with pytest.raises(CaseError):
        load_registry(p)
    p.write_text(json.dumps([{"tag": "t"}]))
    with pytest.raises(CaseError):
        load_registry(p)
