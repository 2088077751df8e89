import pytest

from lorentzkit.algebra import Poly, VarSpace
from lorentzkit.sampling import make_rng


@pytest.fixture
def rng():
    return make_rng(1729)


@pytest.fixture
def x():
    return [Poly.var(k, 4, VarSpace.POSITION) for k in range(4)]


@pytest.fixture
def p():
    return [Poly.var(k, 4, VarSpace.MOMENTUM) for k in range(4)]
