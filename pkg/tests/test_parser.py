from fractions import Fraction

import pytest

from lorentzkit.algebra import I, Poly, Scalar, VarSpace
from lorentzkit.delta import DeltaExpansion, box_power, delta
from lorentzkit.errors import ParseError, VarSpaceError
from lorentzkit.parser import detect_varspace, format_expression, parse_expression, varspace_of
from lorentzkit.sampling import random_delta, random_poly
from lorentzkit.spinor import SpinorPoly, covariant_poly, make_covariant

MOMENTUM = VarSpace.MOMENTUM


def test_parse_delta_literal():
    assert parse_expression("d[0,0,0,0]") == delta()


def test_parse_momentum_polynomial(p):
    expected = p[0] ** 2 * p[1] - p[2].scale(Fraction(3, 2))
    assert parse_expression("p0^2*p1 - 3/2*p2") == expected


def test_parse_complex_delta_expansion():
    expected = DeltaExpansion(4, {(1, 0, 0, 0): I, (0, 1, 0, 0): 1})
    assert parse_expression("i*d[1,0,0,0] + d[0,1,0,0]") == expected


def test_parse_numbers_are_position_constants():
    assert parse_expression("3") == Poly.const(3, 4, VarSpace.POSITION)
    assert parse_expression("(1/2 - 3*i)") == Poly.const(Scalar(Fraction(1, 2), -3), 4, VarSpace.POSITION)


def test_parse_derivative_literals(x):
    assert parse_expression("D[1,0,0,0]*x0^2") == x[0].scale(2)
    assert parse_expression("-D[1,0,0,0]*x0") == Poly.const(-1, 4, VarSpace.POSITION)
    assert parse_expression("D[2,0,0,0]*d[0,0,0,0]") == DeltaExpansion(4, {(2, 0, 0, 0): 1})


def test_parse_covariant_and_spinor_variables(x):
    assert parse_expression("cov(1)") == covariant_poly(1)
    assert parse_expression("wb1*w2*(x0)") == SpinorPoly((1, 1), {((0, 1), (1, 0)): x[0]})


def test_parse_products_with_polynomials(x):
    assert parse_expression("x0*d[1,0,0,0]") == delta().scale(-1)
    assert parse_expression("(x0 + x1)^2") == (x[0] + x[1]) ** 2


def test_detect_varspace():
    assert detect_varspace("p1 + 2") is MOMENTUM
    assert detect_varspace("x1*d[1,0,0,0]") is VarSpace.POSITION
    assert detect_varspace("d[0,0,0,0]") is VarSpace.POSITION
    with pytest.raises(VarSpaceError):
        detect_varspace("x0 + p1")


def test_mixing_varspaces_is_an_error():
    with pytest.raises(VarSpaceError):
        parse_expression("x0 + p1")


def test_syntax_error_reports_position():
    with pytest.raises(ParseError) as excinfo:
        parse_expression("p0 + * p1")
    assert excinfo.value.line == 1
    assert excinfo.value.column > 1


def test_semantic_errors():
    for text in ("1/0", "d[0,0,0,0]*d[1,0,0,0]", "x4", "w3", "d[0,0,0,0]^2", "d[1,0,0,0,0]"):
        with pytest.raises(ParseError):
            parse_expression(text)


def test_printed_values_parse_back(rng, p):
    values = [
        Poly.const(5, 4, MOMENTUM),
        Poly.zero(4, MOMENTUM),
        p[1].scale(Scalar(-1, 2)) + p[0].scale(I),
        DeltaExpansion.zero(4),
        box_power(2).scale(Scalar(Fraction(1, 3), 1)),
        make_covariant(box_power(2), 2),
        make_covariant(delta(), 1),
        covariant_poly(2),
    ]
    for _ in range(10):
        values.append(random_poly(rng, 4, 3, varspace=MOMENTUM, complex_coeffs=True))
        values.append(random_delta(rng, 4, 4, complex_coeffs=True))
    for value in values:
        text = format_expression(value)
        assert parse_expression(text, varspace_of(value)) == value, text


def test_constants_take_the_varspace_hint():
    assert parse_expression("3", MOMENTUM) == Poly.const(3, 4, MOMENTUM)
    assert parse_expression(str(Poly.const(3, 4, MOMENTUM)), MOMENTUM) == Poly.const(3, 4, MOMENTUM)
    assert varspace_of(Poly.const(3, 4, MOMENTUM)) is MOMENTUM
    assert varspace_of(delta()) is None
    with pytest.raises(VarSpaceError):
        parse_expression("x0 + 1", MOMENTUM)
