from fractions import Fraction

import pytest

from lorentzkit.algebra import I, Poly, VarSpace
from lorentzkit.errors import DivisionPreconditionError, JetConditionError, ParameterError
from lorentzkit.sampling import make_rng, random_entry_poly, random_jet_poly
from lorentzkit.taylor import (
    ENTRIES,
    check_jet,
    divide_by_coordinate,
    jet_decompose,
    restrict,
    sl2_matrix_split,
    substitute_entries,
)

POS = VarSpace.POSITION


def xs(dim):
    return [Poly.var(k, dim, POS) for k in range(dim)]


def test_restrict_and_divide():
    x0, x1 = xs(2)
    assert restrict(x0 + x1, 0) == x1
    assert divide_by_coordinate(x0 ** 2 + x0 * x1, 0) == x0 + x1


def test_divide_precondition():
    x0, x1 = xs(2)
    with pytest.raises(DivisionPreconditionError) as excinfo:
        divide_by_coordinate(x0 + x1, 0)
    assert excinfo.value.monomial == (0, 1)


def test_jet_decompose_two_variables():
    x0, x1 = xs(2)
    f = x0 ** 2 * x1 + x1 ** 3
    result = jet_decompose(f, 1)
    assert result.parts == (x1, x1)
    assert result.reconstruct() == f


def test_jet_decompose_m_zero():
    x0, x1 = xs(2)
    f = x0 * x1 + x1 ** 2
    result = jet_decompose(f, 0)
    assert result.reconstruct() == f


def test_jet_condition_violation():
    x0, x1 = xs(2)
    with pytest.raises(JetConditionError) as excinfo:
        jet_decompose(x0 * x1, 1)
    assert excinfo.value.kappa == (1, 1)
    with pytest.raises(ParameterError):
        jet_decompose(x0 ** 5, -1)


def test_check_jet_reports_lowest_monomial():
    x0, x1, x2 = xs(3)
    with pytest.raises(JetConditionError) as excinfo:
        check_jet(x0 ** 3 + x1 ** 2 + x2 ** 9, 4)
    assert excinfo.value.kappa == (0, 2, 0)


@pytest.mark.parametrize("dim", [1, 2, 3, 4])
def test_jet_decompose_random(dim):
    for seed in range(5):
        for m in (1, 2):
            f = random_jet_poly(make_rng(seed, dim, m), dim, m)
            assert jet_decompose(f, m).reconstruct() == f


def test_entry_split_direct_examples():
    x0, x1, x2, x3 = xs(4)
    split = sl2_matrix_split(x0 ** 2 - x3 ** 2, 1)
    assert split.route == "direct"
    assert split.parts[(1, 1)] == x0 + x3
    assert all(split.parts[key].is_zero() for key in ENTRIES if key != (1, 1))
    assert split.reconstruct() == x0 ** 2 - x3 ** 2

    split = sl2_matrix_split(x1 ** 2 + x2 ** 2, 1)
    assert split.parts[(1, 2)] == -x1 - x2.scale(I)
    assert split.reconstruct() == x1 ** 2 + x2 ** 2


def test_entry_split_jet_route():
    x0, x1, x2, x3 = xs(4)
    f = x0 ** 5
    split = sl2_matrix_split(f, 1)
    assert split.route == "jet"
    assert split.decomposition.parts[0] == x0 ** 3
    assert split.parts[(1, 1)] == (x0.scale(3) + x3).scale(Fraction(1, 4)) * x0 ** 3
    assert split.parts[(2, 2)] == (x0 + x3).scale(Fraction(1, 4)) * x0 ** 3
    assert split.parts[(1, 2)].is_zero() and split.parts[(2, 1)].is_zero()
    assert split.reconstruct() == f


def test_entry_split_routes_differ_but_both_reconstruct():
    x0, x1, x2, x3 = xs(4)
    f = x0 ** 5
    jet = sl2_matrix_split(f, 1, route="jet")
    direct = sl2_matrix_split(f, 1, route="direct")
    assert direct.route == "direct"
    assert direct.parts[(2, 2)] == ((x0 + x3) ** 4).scale(Fraction(1, 32))
    assert jet.parts != direct.parts
    assert jet.reconstruct() == direct.reconstruct() == f
    assert _exponents_ok(jet) and _exponents_ok(direct)


def test_entry_split_rejects_unknown_route():
    with pytest.raises(ParameterError):
        sl2_matrix_split(xs(4)[0] ** 5, 1, route="sideways")


def _exponents_ok(split):
    entries = split.entries()
    return all(
        all(e[i] >= split.s2 for e in substitute_entries(entries[key] ** split.s2 * split.parts[key]).terms)
        for i, key in enumerate(ENTRIES)
    )


@pytest.mark.parametrize("s2", [1, 2])
def test_entry_split_random(s2):
    rng = make_rng(7, s2)
    for k in range(6):
        f = random_entry_poly(rng, s2) if k % 2 else random_jet_poly(rng, 4, 2 * s2 - 1, max_degree=1)
        split = sl2_matrix_split(f, s2)
        assert split.reconstruct() == f
        assert _exponents_ok(split)


def test_entry_split_validation():
    x0 = xs(4)[0]
    with pytest.raises(ParameterError):
        sl2_matrix_split(x0 ** 3, 0)
    with pytest.raises(ParameterError):
        sl2_matrix_split(xs(2)[0], 1)
    with pytest.raises(JetConditionError):
        sl2_matrix_split(Poly.const(1, 4, POS), 1)
