from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from lorentzkit.algebra import (
    I,
    DiffOp,
    MultiIndex,
    Poly,
    Scalar,
    VarSpace,
    apply_diffop,
    commutator,
    compose,
    differentiate,
    monomials_of_degree,
    substitute_linear,
)
from lorentzkit.errors import DimensionMismatchError, ScalarDivisionError, VarSpaceError
from lorentzkit.linalg import MatrixQ

POS = VarSpace.POSITION

polys_2d = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)),
    st.integers(-5, 5),
    max_size=4,
).map(lambda terms: Poly(2, POS, terms))

scalars = st.builds(Scalar, st.integers(-4, 4), st.integers(-4, 4))


def polys(dim, max_degree=8):
    monomials = [k for n in range(max_degree + 1) for k in monomials_of_degree(dim, n)]
    return st.dictionaries(st.sampled_from(monomials), scalars, max_size=4).map(
        lambda terms: Poly(dim, POS, terms)
    )


def diffops(dim):
    kappas = st.tuples(*[st.integers(0, 2)] * dim)
    return st.lists(st.tuples(polys(dim, max_degree=2), kappas), max_size=3).map(
        lambda terms: DiffOp(dim, POS, terms)
    )


def test_scalar_arithmetic():
    assert Scalar(1, 2) * Scalar(3, -1) == Scalar(5, 5)
    assert Scalar(1, 1) / Scalar(1, 1) == Scalar(1)
    assert I * I == -1
    assert Scalar(Fraction(1, 2)) + Fraction(1, 2) == 1


def test_scalar_division_by_zero():
    with pytest.raises(ScalarDivisionError):
        Scalar(0).inverse()


def test_scalar_printing():
    assert str(Scalar(Fraction(1, 2), -3)) == "1/2-3*i"
    assert str(Scalar(0, -1)) == "-1*i"
    assert str(Scalar(4)) == "4"


def test_multi_index_validation():
    with pytest.raises(ValueError):
        MultiIndex((1, -1))
    with pytest.raises(DimensionMismatchError):
        MultiIndex((0, 0, 0, 0, 0))
    assert MultiIndex((1, 2, 0, 3)).order == 6
    assert MultiIndex((2, 3)).factorial == 12


def test_monomials_of_degree_order():
    assert monomials_of_degree(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert len(monomials_of_degree(4, 3)) == 20


def test_poly_square(x):
    square = (x[0] + x[1]) ** 2
    assert square.coefficient((1, 1, 0, 0)) == 2
    assert square.degree() == 2
    assert square.is_homogeneous()


def test_poly_rejects_mixed_varspace():
    with pytest.raises(VarSpaceError):
        Poly.var(0, 4, VarSpace.POSITION) + Poly.var(0, 4, VarSpace.MOMENTUM)


def test_poly_printing(x, p):
    assert str(x[0] ** 2 - x[1].scale(Fraction(3, 2))) == "x0^2 - 3/2*x1"
    assert str(Poly.zero(4, POS)) == "0*x0"
    assert str(Poly.const(3, 4, VarSpace.MOMENTUM)) == "3"
    assert str(Poly.const(Scalar(0, -2), 4, VarSpace.MOMENTUM)) == "-2*i"
    assert str(p[1].scale(I)) == "1*i*p1"


def test_differentiate(x):
    assert differentiate(x[0] ** 3, (2, 0, 0, 0)) == x[0].scale(6)
    assert differentiate(x[0] * x[1], (0, 0, 1, 0)).is_zero()


def test_commutator_of_derivative_and_multiplication(x):
    d0 = DiffOp.partial((1, 0, 0, 0), POS)
    times_x0 = DiffOp(4, POS, [(x[0], (0, 0, 0, 0))])
    assert commutator(d0, times_x0) == DiffOp.partial((0, 0, 0, 0), POS)


def test_apply_diffop(x):
    euler = DiffOp(4, POS, [(x[k], MultiIndex.unit(4, k)) for k in range(4)])
    P = x[0] ** 2 * x[3] + x[1] ** 3
    assert apply_diffop(euler, P) == P.scale(3)


def test_substitute_linear_permutes_variables(x):
    swap = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    assert substitute_linear(x[0] ** 2 * x[2], swap) == x[1] ** 2 * x[2]


@pytest.mark.parametrize("dim", [1, 2, 3, 4])
@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_ring_axioms(dim, data):
    a, b, c = (data.draw(polys(dim)) for _ in range(3))
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a + b) - b == a


@pytest.mark.parametrize("dim", [1, 2, 3, 4])
@settings(max_examples=20, deadline=None)
@given(data=st.data())
def test_substitute_linear_inverse_round_trip(dim, data):
    row = st.lists(st.integers(-3, 3), min_size=dim, max_size=dim)
    M = MatrixQ(data.draw(st.lists(row, min_size=dim, max_size=dim)))
    assume(M.det() != 0)
    P = data.draw(polys(dim, max_degree=4))
    assert substitute_linear(substitute_linear(P, M), M.inverse()) == P


@pytest.mark.parametrize("dim", [1, 2, 4])
@settings(max_examples=20, deadline=None)
@given(data=st.data())
def test_apply_diffop_respects_composition(dim, data):
    A = data.draw(diffops(dim))
    B = data.draw(diffops(dim))
    f = data.draw(polys(dim, max_degree=5))
    assert apply_diffop(compose(A, B), f) == apply_diffop(A, apply_diffop(B, f))


@settings(max_examples=50)
@given(polys_2d, polys_2d)
def test_product_degree_is_additive(a, b):
    if a and b:
        assert (a * b).degree() == a.degree() + b.degree()
    else:
        assert (a * b).is_zero()


def test_poly_is_backed_by_a_gaussian_rational_ring(p):
    from sympy.polys.domains import QQ, QQ_I

    P = p[1].scale(Scalar(Fraction(1, 2), 3)) + p[0] ** 2
    assert P.rep.ring.domain == QQ_I
    assert P.rep.ring.ngens == 4
    assert P.coefficient((0, 1, 0, 0)) == Scalar(Fraction(1, 2), 3)
    assert Scalar(Fraction(2, 3), -1).value == QQ_I(QQ(2, 3), QQ(-1))
