from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lattice_kissing.exact import (
    RationalMatrix,
    ShapeError,
    as_rational,
    det,
    format_rational,
    parse_rational,
    rat_arith,
    solve3,
)

rationals = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 10**6)
small_int_matrix = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n)
)


def test_parse_and_format():
    assert parse_rational("6/4") == F(3, 2)
    assert parse_rational(" -16/3 ") == F(-16, 3)
    assert format_rational(F(8, 1)) == "8"
    assert format_rational(F(-2, 4)) == "-1/2"
    with pytest.raises(ValueError):
        parse_rational("1.5")
    with pytest.raises(ZeroDivisionError):
        parse_rational("1/0")


def test_as_rational_rejects_float():
    with pytest.raises(TypeError):
        as_rational(0.5)


def test_rat_arith_ops():
    assert rat_arith("1/2", "1/3", "add") == F(5, 6)
    assert rat_arith(F(1, 2), 2, "div") == F(1, 4)
    assert rat_arith("16/3", 4, "cmp") == 1
    with pytest.raises(ZeroDivisionError):
        rat_arith(1, 0, "div")
    with pytest.raises(ValueError):
        rat_arith(1, 2, "pow")


@given(rationals)
def test_canonical_form_roundtrip(x):
    s = format_rational(x)
    assert parse_rational(s) == x
    assert format_rational(parse_rational(s)) == s


@given(rationals, rationals, rationals)
def test_cmp_is_a_total_order(a, b, c):
    assert rat_arith(a, b, "cmp") == -rat_arith(b, a, "cmp")
    if rat_arith(a, b, "cmp") <= 0 and rat_arith(b, c, "cmp") <= 0:
        assert rat_arith(a, c, "cmp") <= 0


def test_det_known_values():
    assert det([[4, 2], [2, 4]]) == 12
    assert det([[F(1, 2), 0], [0, F(2, 3)]]) == F(1, 3)
    assert det([[0, 1], [1, 0]]) == -1
    assert det([[1, 2], [2, 4]]) == 0
    with pytest.raises(ShapeError):
        det([[1, 2, 3], [4, 5, 6]])


@given(small_int_matrix, st.data())
def test_det_multiplicative(a, data):
    n = len(a)
    b = data.draw(st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n))
    ma, mb = RationalMatrix(a), RationalMatrix(b)
    assert det(ma @ mb) == det(ma) * det(mb)


@given(small_int_matrix)
def test_rational_det_agrees_with_integer_path(a):
    # halving every entry forces the rational elimination path
    m = RationalMatrix(a)
    assert det(m.scale(F(1, 2))) == det(m) / 2 ** len(a)


def test_matrix_basics():
    m = RationalMatrix([[1, "1/2"], ["1/2", 1]])
    assert m.is_symmetric()
    assert not m.is_integral()
    assert m.transpose() == m
    assert m.leading_minor(2) == F(3, 4)
    assert RationalMatrix.from_json(m.to_json()) == m
    with pytest.raises(ShapeError):
        RationalMatrix([[1, 2], [3]])


def test_solve3():
    assert solve3([[1, 0, 0], [0, 2, 0], [0, 0, 4]], [1, 1, 1]) == (1, F(1, 2), F(1, 4))
    assert solve3([[1, 1, 0], [1, 1, 0], [0, 0, 1]], [1, 1, 1]) is None
    x = solve3([[1.0, 0, 0], [0, 2.0, 0], [0, 0, 4.0]], [1.0, 1.0, 1.0])
    assert x == pytest.approx((1, 0.5, 0.25))
