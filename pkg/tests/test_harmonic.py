from fractions import Fraction

import pytest

from lorentzkit.algebra import Poly, VarSpace, apply_diffop, substitute_linear
from lorentzkit.errors import NonHomogeneousError, ParameterError, VarSpaceError
from lorentzkit.harmonic import (
    dim_harmonic,
    double_factorial,
    grade_by_p0,
    harmonic_basis,
    harmonic_decompose,
    so3_project,
    spatial_square_power,
    sphere_average,
)
from lorentzkit.lorentz import casimir, laplace3
from lorentzkit.sampling import random_poly, random_rotation, random_spatial_poly

MOMENTUM = VarSpace.MOMENTUM


def test_double_factorial():
    assert [double_factorial(n) for n in (-1, 0, 1, 5, 6)] == [1, 1, 1, 15, 48]


def test_harmonic_dimensions():
    for l in range(6):
        assert dim_harmonic(l) == 2 * l + 1
        for h in harmonic_basis(l):
            assert apply_diffop(laplace3(), h).is_zero()


def test_decompose_p1_squared(p):
    Q = p[1] ** 2
    decomposition = harmonic_decompose(Q)
    assert decomposition.part(1) == Poly.const(Fraction(1, 3), 4, MOMENTUM)
    assert decomposition.part(0) == Q - spatial_square_power(1).scale(Fraction(1, 3))
    assert decomposition.reassemble() == Q


def test_decompose_random_spatial_polynomials(rng):
    for l in range(7):
        Q = random_spatial_poly(rng, l)
        decomposition = harmonic_decompose(Q)
        assert decomposition.reassemble() == Q
        for _, h in decomposition.parts:
            assert apply_diffop(laplace3(), h).is_zero()


def test_decompose_rejects_p0_and_mixed_degrees(p):
    with pytest.raises(ParameterError):
        harmonic_decompose(p[0] * p[1])
    with pytest.raises(NonHomogeneousError):
        harmonic_decompose(p[1] + p[2] ** 2)
    with pytest.raises(VarSpaceError):
        harmonic_decompose(Poly.var(1, 4, VarSpace.POSITION))


def test_grade_by_p0(p):
    assert grade_by_p0(p[0] * p[1] + p[2] ** 2) == [(1, p[1]), (2, p[2] ** 2)]


def test_so3_project_examples(p):
    assert so3_project(p[1] ** 2) == spatial_square_power(1).scale(Fraction(1, 3))
    assert so3_project(p[0] ** 2 * p[1]).is_zero()
    assert so3_project(p[0] ** 2) == p[0] ** 2
    assert so3_project(Poly.zero(4, MOMENTUM)).is_zero()


def test_sphere_average():
    p = [Poly.var(k, 4, MOMENTUM) for k in range(4)]
    assert sphere_average(p[1] ** 2 * p[2] ** 2) == Fraction(1, 15)
    assert sphere_average(p[3] ** 4) == Fraction(1, 5)
    assert sphere_average(p[1] * p[2]) == 0


def test_so3_project_matches_sphere_average(rng):
    for l in (0, 2, 4, 6):
        Q = random_spatial_poly(rng, l)
        assert so3_project(Q) == spatial_square_power(l // 2).scale(sphere_average(Q))


def test_so3_project_is_rotation_invariant(rng):
    for degree in range(1, 5):
        P = random_poly(rng, 4, degree, n_terms=5, varspace=MOMENTUM).homogeneous_component(degree)
        R = random_rotation(rng)
        assert so3_project(substitute_linear(P, R)) == so3_project(P)


def test_random_rotation_is_orthogonal(rng):
    R = random_rotation(rng)
    assert R.transpose() @ R == R.identity(4)
    assert R.det() == 1


@pytest.mark.parametrize("l", [2, 3, 4, 5])
def test_casimir_is_scalar_on_each_summand(rng, l):
    C = casimir()
    for _ in range(3):
        decomposition = harmonic_decompose(random_spatial_poly(rng, l, n_terms=6))
        assert decomposition.parts
        for k, h in decomposition.parts:
            j = l - 2 * k
            summand = spatial_square_power(k) * h
            assert h.degree() == j
            assert apply_diffop(C, summand) == summand.scale(j * (j + 1))
