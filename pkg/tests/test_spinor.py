from fractions import Fraction

import pytest

from lorentzkit.algebra import I, Poly, Scalar, VarSpace
from lorentzkit.delta import box_power, delta
from lorentzkit.errors import DeterminantError, InconsistentSystemError, ParameterError
from lorentzkit.linalg import MatrixQ
from lorentzkit.sampling import random_invariant_delta, random_sl2
from lorentzkit.spinor import (
    RepLabel,
    SpinorPoly,
    cg_covariant_degrees,
    cg_decompose,
    check_covariant_identities,
    covariance_check,
    covariant_poly,
    diagonal_count,
    extract_invariant,
    kernel_apply,
    kernel_test,
    lorentz_form_check,
    make_covariant,
    reflection_parity,
    sl2_to_lorentz,
    x_tilde,
)

W1 = (1, 0)
W2 = (0, 1)


def test_degree_one_covariant_slots(x):
    cov = covariant_poly(1)
    X = x_tilde()
    assert cov.coefficient(W1, W1) == x[0] - x[3]
    assert cov.coefficient(W2, W1) == X[0][1] == -x[1] + x[2].scale(I)
    assert cov.coefficient(W1, W2) == -x[1] - x[2].scale(I)
    assert cov.coefficient(W2, W2) == x[0] + x[3]


def test_covariant_slot_count_and_degrees():
    for s2 in range(5):
        cov = covariant_poly(s2)
        assert cov.bidegree == (s2, s2)
        assert cov.slot_count() == (s2 + 1) ** 2
        assert all(c.is_homogeneous() and c.degree() == s2 for c in cov.terms.values())
    assert covariant_poly(2).slot_count() == 9


def test_covariant_identities():
    report = check_covariant_identities()
    assert report.passed, report.failed


@pytest.mark.parametrize("s2", [1, 2, 3])
def test_kernel_pattern(s2):
    for l in range(s2 + 2):
        assert kernel_test(s2, l) == (l <= s2 - 1)


def test_kernel_apply_validation():
    with pytest.raises(ParameterError):
        kernel_apply(0, 1)
    with pytest.raises(ParameterError):
        kernel_apply(1, -1)


def test_make_covariant_kills_low_box_powers():
    assert make_covariant(box_power(1), 2).is_zero()
    assert make_covariant(delta(), 1).is_zero()
    assert not make_covariant(box_power(2), 2).is_zero()


def test_extract_recovers_invariant_modulo_kernel():
    v = box_power(2).scale(3) + box_power(1).scale(-2) + delta().scale(5)
    w = make_covariant(v, 2)
    recovered, ambiguity = extract_invariant(w, 2)
    assert recovered == box_power(2).scale(3)
    assert ambiguity == [0, 2]
    assert make_covariant(recovered, 2) == w


def test_extract_round_trip_random(rng):
    for s2 in range(4):
        v = random_invariant_delta(rng, 10)
        w = make_covariant(v, s2)
        recovered, ambiguity = extract_invariant(w, s2)
        assert make_covariant(recovered, s2) == w
        assert set((v - recovered).orders()) <= set(ambiguity)


def test_extract_rejects_inconsistent_grade():
    w = SpinorPoly((1, 1), {(W1, W1): delta()})
    with pytest.raises(InconsistentSystemError) as excinfo:
        extract_invariant(w, 1)
    assert excinfo.value.grade == 0


def test_extract_rejects_wrong_bidegree():
    with pytest.raises(ParameterError):
        extract_invariant(make_covariant(box_power(2), 2), 1)


def test_clebsch_gordan_counts():
    labels = cg_decompose(RepLabel(1, 1))
    assert len(labels) == 4
    assert diagonal_count(labels) == 2
    assert cg_covariant_degrees(RepLabel(1, 1)) == ([0, 2], "even")
    assert cg_covariant_degrees(RepLabel(1, 2)) == ([1, 3], "odd")
    for r2 in range(5):
        for s2 in range(5):
            assert diagonal_count(cg_decompose(RepLabel(r2, s2))) == min(r2, s2) + 1


def test_rep_label_printing_and_validation():
    assert str(RepLabel(1, 2)) == "(1/2,1)"
    with pytest.raises(ParameterError):
        RepLabel(-1, 0)


def test_reflection_parity():
    for s2 in range(5):
        assert reflection_parity(s2) == (-1) ** s2


def test_sl2_to_lorentz():
    assert sl2_to_lorentz(MatrixQ.identity(2)) == MatrixQ.identity(4)
    shear = MatrixQ([[1, 1], [0, 1]])
    Lam = sl2_to_lorentz(shear)
    assert Lam.is_real()
    assert lorentz_form_check(Lam)


def test_covariance_check():
    assert covariance_check([[1, 1], [0, 1]]).passed
    assert covariance_check([[2, I], [0, Fraction(1, 2)]]).passed
    with pytest.raises(DeterminantError):
        covariance_check([[2, 0], [0, 1]])


def test_covariance_on_random_sl2(rng):
    for _ in range(3):
        A = random_sl2(rng)
        assert A.det() == 1
        report = covariance_check(A)
        assert report.passed, report.failed


def test_spinor_poly_arithmetic(x):
    w1 = SpinorPoly.omega(1)
    wb2 = SpinorPoly.omega(2, bar=True)
    product = wb2 * w1
    assert product.bidegree == (1, 1)
    assert product.coefficient(W1, W2) == Scalar(1)
    assert (product * x[0]).coefficient(W1, W2) == x[0]
    with pytest.raises(ParameterError):
        w1 + wb2


def test_spinor_poly_printing():
    assert str(SpinorPoly((1, 1))) == "0*wb1*w1"
    cov = covariant_poly(1)
    assert "wb1*w1*(x0 - x3)" in str(cov)


def test_momentum_covariant_uses_p(p):
    cov = covariant_poly(1, VarSpace.MOMENTUM)
    assert cov.coefficient(W2, W2) == p[0] + p[3]
    assert cov.coefficient(W1, W1).varspace is VarSpace.MOMENTUM
    assert isinstance(cov.coefficient(W1, W1), Poly)
