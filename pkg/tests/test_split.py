from fractions import Fraction

import pytest

from lorentzkit.algebra import Poly, VarSpace, apply_diffop
from lorentzkit.delta import DeltaExpansion, box_power, fourier
from lorentzkit.errors import InvarianceError, NonHomogeneousError, NotInSpanError, VarSpaceError
from lorentzkit.linalg import MatrixQ
from lorentzkit.lorentz import boost, is_lorentz_invariant
from lorentzkit.sampling import random_g_vector, random_split_inputs
from lorentzkit.split import (
    basis_F,
    basis_G,
    boost_inverse_closed_form,
    boost_matrix,
    closed_form_boost_matrix,
    coefficient_bound_check,
    cokernel_2d,
    completion_report,
    constant_in_image_2d,
    inverse_bound_check,
    invariant_completion,
    kernel_direction,
    last_column_closed_form,
    restricted_inverse,
    solve_boost_equation,
)

MOMENTUM = VarSpace.MOMENTUM


def test_basis_sizes():
    assert len(basis_F(4)) == 3
    assert len(basis_G(4)) == 2
    assert len(basis_G(1)) == 1


def test_boost_matrix_n3():
    assert boost_matrix(3) == MatrixQ([[3, 2], [0, 1]])


def test_boost_matrix_matches_closed_form():
    for n in range(1, 13):
        assert boost_matrix(n) == closed_form_boost_matrix(n)


def test_restricted_inverse_closed_form():
    assert restricted_inverse(3) == MatrixQ([[Fraction(1, 3), Fraction(-2, 3)], [0, 1]])
    assert boost_inverse_closed_form(3, 0, 1) == Fraction(-2, 3)
    assert boost_inverse_closed_form(3, 1, 0) == 0
    assert [last_column_closed_form(5, k) for k in range(3)] == [Fraction(8, 15), Fraction(4, 3), 1]


@pytest.mark.parametrize("n", range(1, 16))
def test_inverse_bound_check(n):
    report = inverse_bound_check(n)
    assert report.passed, [c for c in report.checks if not c.passed]
    assert report.max_abs_entry ** 2 <= 2 ** n


def test_kernel_direction():
    assert kernel_direction(3) is None
    k = kernel_direction(4)
    assert apply_diffop(boost(1), k).is_zero()
    assert is_lorentz_invariant(k)


def test_solve_boost_equation_n2(p):
    u = p[0] * p[1]
    v0 = solve_boost_equation(u, 2)
    assert v0 == (p[0] ** 2).scale(Fraction(1, 2))
    assert apply_diffop(boost(1), v0) == u


def test_solve_boost_equation_rejects_bad_inputs(p, x):
    with pytest.raises(NotInSpanError):
        solve_boost_equation(p[0] * p[2], 2)
    with pytest.raises(NonHomogeneousError):
        solve_boost_equation(p[0] * p[1] + p[1], 2)
    with pytest.raises(VarSpaceError):
        solve_boost_equation(x[0] * x[1], 2)


def test_coefficient_bound_on_random_inputs(rng):
    for n in range(1, 9):
        for _ in range(3):
            report = coefficient_bound_check(random_g_vector(rng, n), n)
            assert report.passed
            assert report.residual.is_zero()


def test_invariant_completion_simple():
    v_plus = DeltaExpansion(4, {(1, 0, 0, 0): 1})
    v_minus = v_plus - box_power(1)
    w_plus, w_minus = invariant_completion(v_plus, v_minus)
    assert w_plus.is_zero()
    assert w_minus == -box_power(1)
    assert w_plus - w_minus == v_plus - v_minus


def test_invariant_completion_random(rng):
    for _ in range(5):
        v_plus, v_minus = random_split_inputs(rng, 6)
        w_plus, w_minus = invariant_completion(v_plus, v_minus)
        assert w_plus - w_minus == v_plus - v_minus
        assert is_lorentz_invariant(fourier(w_plus))
        assert is_lorentz_invariant(fourier(w_minus))


def test_invariant_completion_rejects_non_invariant_difference():
    v_plus = DeltaExpansion(4, {(1, 0, 0, 0): 1})
    with pytest.raises(InvarianceError) as excinfo:
        invariant_completion(v_plus, DeltaExpansion.zero(4))
    assert excinfo.value.generator == "N1"
    assert excinfo.value.degree == 1


def test_completion_report_passes(rng):
    report = completion_report(*random_split_inputs(rng, 4))
    assert report.passed


def test_two_dimensional_cokernel():
    p0 = Poly.var(0, 2, MOMENTUM)
    p1 = Poly.var(1, 2, MOMENTUM)
    assert cokernel_2d(0) == [Poly.const(1, 2, MOMENTUM)]
    assert cokernel_2d(2) == [p0 ** 2 - p1 ** 2]
    assert cokernel_2d(4) == [(p0 ** 2 - p1 ** 2) ** 2]
    assert cokernel_2d(3) == []
    assert constant_in_image_2d() is False
