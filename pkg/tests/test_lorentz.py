import pytest

from lorentzkit.algebra import Poly, VarSpace, apply_diffop
from lorentzkit.delta import DeltaExpansion, box_power, fourier
from lorentzkit.errors import ParameterError, VarSpaceError
from lorentzkit.lorentz import (
    GeneratorSpec,
    act_on_delta,
    boost,
    casimir,
    dalembert,
    fourier_intertwine_check,
    invariance_violations,
    is_lorentz_invariant,
    minkowski_square,
    rotation,
    verify_commutators,
)
from lorentzkit.sampling import random_delta


def test_commutation_relations():
    report = verify_commutators()
    assert report.passed, report.failed


def test_boost_and_rotation_action(p):
    assert apply_diffop(boost(1), p[0]) == p[1]
    assert apply_diffop(boost(1), p[1]) == p[0]
    assert apply_diffop(rotation(1, 2), p[1]) == p[2]
    assert rotation(2, 1) == -rotation(1, 2)


def test_casimir_on_degree_one(p):
    assert apply_diffop(casimir(), p[1]) == p[1].scale(2)
    assert apply_diffop(casimir(), p[0]).is_zero()


def test_minkowski_square_is_invariant(p):
    assert is_lorentz_invariant(minkowski_square())
    assert is_lorentz_invariant(minkowski_square() ** 3)
    assert apply_diffop(dalembert(), minkowski_square()) == Poly.const(8, 4, VarSpace.MOMENTUM)


def test_invariance_violations_name_generators(p):
    assert invariance_violations(p[0]) == [("N1", 1), ("N2", 1), ("N3", 1)]
    assert invariance_violations(p[0] + minkowski_square()) == [("N1", 1), ("N2", 1), ("N3", 1)]


def test_generator_spec_validation():
    with pytest.raises(ParameterError):
        GeneratorSpec("boost", (0,))
    with pytest.raises(ParameterError):
        GeneratorSpec("rotation", (2, 1))
    with pytest.raises(ParameterError):
        GeneratorSpec("twist")
    assert GeneratorSpec("rotation", (1, 3)).label == "M13"


def test_act_on_delta_needs_position_operator():
    with pytest.raises(VarSpaceError):
        act_on_delta(boost(1, VarSpace.MOMENTUM), box_power(1))


def test_box_delta_is_annihilated_by_generators():
    for j in (1, 2, 3):
        assert act_on_delta(boost(j, VarSpace.POSITION), box_power(2)).is_zero()


@pytest.mark.parametrize("spec", [
    GeneratorSpec("boost", (1,)),
    GeneratorSpec("boost", (3,)),
    GeneratorSpec("rotation", (1, 2)),
    GeneratorSpec("rotation", (2, 3)),
])
def test_fourier_intertwining(rng, spec):
    for _ in range(5):
        v = random_delta(rng, 4, 4, complex_coeffs=True)
        report = fourier_intertwine_check(v, spec)
        assert report.passed, report.failed


def test_fourier_of_box_delta_is_invariant():
    v = box_power(2) + DeltaExpansion(4, {(0, 0, 0, 0): 3})
    assert is_lorentz_invariant(fourier(v))
