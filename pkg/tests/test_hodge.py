import pytest

from painleve_pw.hodge import HodgePolynomial


def test_render_and_latex():
    wh = HodgePolynomial({(0, 0): 1, (-1, 2): 4, (-2, 2): 1})
    assert str(wh) == "1 + 4*q^-1*t^2 + q^-2*t^2"
    assert wh.to_latex() == "1 + 4q^{-1}t^2 + q^{-2}t^2"


def test_zero_coefficients_are_dropped():
    assert HodgePolynomial({(0, 0): 1, (-1, 2): 0}) == HodgePolynomial({(0, 0): 1})


def test_negative_coefficients_rejected():
    with pytest.raises(ValueError):
        HodgePolynomial({(0, 0): -1})


def test_shift_and_betti():
    wh = HodgePolynomial({(0, 0): 1, (-1, 2): 2, (-2, 2): 1})
    ph = wh.shift_q(-1)
    assert ph.coefficient(-1, 0) == 1 and ph.coefficient(-3, 2) == 1
    assert ph.betti_numbers() == {0: 1, 2: 3}
    assert wh.coefficient_sum() == 4


def test_json_roundtrip():
    wh = HodgePolynomial({(0, 0): 1, (-1, 2): 3, (-2, 2): 1})
    assert HodgePolynomial.from_json(wh.to_json()) == wh
    assert all(isinstance(item["q"], int) for item in wh.to_json())
