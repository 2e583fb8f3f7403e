import pytest

from painleve_pw.cubic import make_case, singular_points_at_infinity
from painleve_pw.nerve import (
    NerveComplex,
    NerveError,
    build_nerve,
    delta_ranks,
    nerve_homology,
    weight_polynomial,
    weight_report,
)
from painleve_pw.hodge import HodgePolynomial
from painleve_pw.singularity import classify


def reports(tag):
    return [classify(ch) for ch in singular_points_at_infinity(make_case(tag))]


def cycle(n):
    vs = tuple(f"v{i}" for i in range(n))
    return NerveComplex(vs, tuple((vs[i], vs[(i + 1) % n]) for i in range(n)))


def test_triangle_without_singularities():
    n = build_nerve(reports("VI"))
    assert len(n.vertices) == 3 and len(n.edges) == 3 and n.is_cycle()


def test_cycle_lengths():
    assert len(build_nerve(reports("I")).vertices) == 7
    assert build_nerve(reports("I")).is_cycle()
    assert len(build_nerve(reports("V")).vertices) == 4


def test_chain_is_inserted_between_the_right_lines():
    n = build_nerve(reports("III(D7)"))
    # e_3 = L1 cap L2 carries an A_3 chain
    assert ("L1", "E3.1") in n.edges and ("E3.3", "L2") in n.edges
    assert ("L1", "L2") not in n.edges


def test_homology():
    assert nerve_homology(build_nerve(reports("II"))) == (1, 1)
    assert nerve_homology(NerveComplex(("a",), ())) == (1, 0)
    two = NerveComplex(
        ("a", "b", "c", "d", "e", "f"),
        (("a", "b"), ("b", "c"), ("a", "c"), ("d", "e"), ("e", "f"), ("d", "f")))
    assert nerve_homology(two) == (2, 2)


def test_delta_ranks():
    assert delta_ranks(cycle(3)) == (1, 1)
    assert delta_ranks(cycle(7)) == (1, 1)
    path = NerveComplex(("a", "b", "c"), (("a", "b"), ("b", "c")))
    assert delta_ranks(path) == (0, 1)


def test_invalid_complexes():
    with pytest.raises(NerveError):
        NerveComplex(("a", "a"), ())
    with pytest.raises(NerveError):
        NerveComplex(("a", "b"), (("a", "b"), ("b", "a")))
    with pytest.raises(NerveError):
        NerveComplex(("a",), (("a", "z"),))


def test_weight_polynomial():
    assert weight_polynomial(0) == HodgePolynomial({(0, 0): 1, (-1, 2): 4, (-2, 2): 1})
    assert str(weight_polynomial(3)) == "1 + q^-1*t^2 + q^-2*t^2"
    assert str(weight_polynomial(4)) == "1 + q^-2*t^2"
    with pytest.raises(NerveError):
        weight_polynomial(5)


@pytest.mark.parametrize("tag,dims", [("VI", (1, 4, 1)), ("III(D8)", (1, 0, 1)), ("V", (1, 3, 1))])
def test_graded_dimensions(tag, dims):
    w = weight_report(reports(tag))
    assert (w.grW0_H0, w.grWm2_H2, w.grWm4_H2) == dims
    assert w.b2_betti == dims[1] + dims[2]
    assert set(w.justification) >= {"grWm4_H2", "grWm2_H2", "coker_delta"}


def test_weight_report_rejects_excess():
    # five A_1-like reports cannot occur on three vertices
    with pytest.raises(NerveError):
        weight_report(reports("I") + reports("V"))
