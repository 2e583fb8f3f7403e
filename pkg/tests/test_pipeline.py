import csv
import io
import json
from importlib import resources

from fractions import Fraction

import jsonschema
import pytest

from painleve_pw.kodaira import perverse_polynomial, fiber
from painleve_pw.nerve import weight_polynomial
from painleve_pw.pipeline import (
    CSV_COLUMNS,
    CaseAnalysisError,
    CaseReport,
    analyze_all,
    analyze_case,
    betti_match,
    emit_tables,
    euler_consistency,
    verify_pw,
)
from painleve_pw.hodge import HodgePolynomial


@pytest.fixture(scope="module")
def reports():
    return analyze_all()


def synthetic(N, d, chi=None):
    PH = HodgePolynomial({(-1, 0): 1, (-2, 2): d, (-3, 2): 1})
    return CaseReport(tag="synthetic", N=N, WH=weight_polynomial(N), d=d, PH=PH,
                      chi=10 - d if chi is None else chi)


def test_sixth_case():
    r = analyze_case("VI")
    assert r.N == 0
    assert str(r.WH) == "1 + 4*q^-1*t^2 + q^-2*t^2"
    assert str(r.PH) == "q^-1 + 4*q^-2*t^2 + q^-3*t^2"


def test_d6_case():
    r = analyze_case("III(D6)")
    assert r.singularity_label() == "A_2" and r.N == 2
    assert str(r.PH) == "q^-1 + 2*q^-2*t^2 + q^-3*t^2"


def test_first_case():
    r = analyze_case("I")
    assert r.singularity_label() == "A_2 + A_1 + A_1"
    assert str(r.WH) == "1 + q^-2*t^2"


def test_verify_pw(reports):
    assert all(verify_pw(r) for r in reports)
    assert not verify_pw(synthetic(0, 3))
    assert verify_pw(synthetic(4, 0))


def test_euler_consistency(reports):
    by = {r.tag: r for r in reports}
    assert (by["VI"].d, by["VI"].chi) == (4, 6) and euler_consistency(by["VI"])
    assert (by["I"].d, by["I"].chi) == (0, 10) and euler_consistency(by["I"])
    assert not euler_consistency(synthetic(0, 2, chi=9))


def test_betti_match(reports):
    by = {r.tag: r for r in reports}
    assert betti_match(by["V"]) and betti_match(by["II"])
    assert not betti_match(synthetic(2, 3))


def test_all_checks_pass(reports):
    for r in reports:
        assert r.passed, [c for c in r.checks if not c.passed]


def test_parameter_override():
    r = analyze_case("II", {"alpha": "7/3"})
    assert r.parameters["alpha"] == Fraction(7, 3)
    assert r.passed


def test_errors_name_the_case():
    with pytest.raises(CaseAnalysisError) as info:
        analyze_case("V", {"s3": 0})
    assert info.value.tag == "V" and "s3" in str(info.value)


def test_text_table(reports):
    text = emit_tables(reports, "text")
    first = text.split("\n\n")[0].splitlines()
    assert first[1].split() == ["X", "F_inf", "PH(q,t)"]
    assert len(first) == 3 + 9


def test_json_schema(reports):
    doc = json.loads(emit_tables(reports, "json"))
    schema = json.loads(resources.files("painleve_pw").joinpath("data/report.schema.json").read_text())
    jsonschema.validate(doc, schema)
    assert doc["schema_version"] == "1.0"
    assert [c["case"] for c in doc["cases"]] == [r.tag for r in reports]


def test_csv_columns(reports):
    rows = list(csv.reader(io.StringIO(emit_tables(reports, "csv"))))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert len(rows) == 10
    assert rows[1][:4] == ["VI", "s1=1;s2=2;s3=3;s4=5", "none", "0"]


def test_latex_row(reports):
    tex = emit_tables(reports, "latex")
    assert r"$III(D7)$ & $A_3$ & $1 + q^{-1}t^2 + q^{-2}t^2$ \\" in tex
    assert r"$V_{\mathrm{deg}}$" in tex


def test_unknown_format(reports):
    with pytest.raises(ValueError):
        emit_tables(reports, "xml")


@pytest.mark.parametrize("fmt", ["text", "json", "csv", "latex"])
def test_output_is_deterministic(fmt, reports):
    assert emit_tables(analyze_all(), fmt) == emit_tables(reports, fmt)
