"""
lorentzkit/sampling.py

Seeded random instances for the property checks and the acceptance suite.
Every generator takes a numpy Generator; coefficients are small integers
(or small-denominator rationals) so exact arithmetic stays cheap.
"""

from fractions import Fraction

import numpy as np

from . import config
from .algebra import MultiIndex, Poly, Scalar, VarSpace, monomials_of_degree
from .delta import DeltaExpansion, box_power
from .errors import ParameterError
from .linalg import MatrixQ
from .split import basis_G


def make_rng(seed: int | None = None, *streams: int) -> np.random.Generator:
    """Generator for (seed, *streams); seed defaults to config.SEED."""
    base = config.SEED if seed is None else seed
    return np.random.default_rng([base, *streams])


def _int(rng: np.random.Generator, low: int, high: int, nonzero: bool = False) -> int:
    while True:
        value = int(rng.integers(low, high + 1))
        if value or not nonzero:
            return value


def random_scalar(rng: np.random.Generator, bound: int = 5, complex_coeffs: bool = False) -> Scalar:
    re = _int(rng, -bound, bound)
    im = _int(rng, -bound, bound) if complex_coeffs else 0
    return Scalar(re, im)


def random_poly(
    rng: np.random.Generator,
    dim: int = 4,
    max_degree: int = 3,
    n_terms: int = 4,
    varspace: VarSpace = VarSpace.POSITION,
    complex_coeffs: bool = False,
) -> Poly:
    terms = {}
    for _ in range(n_terms):
        degree = _int(rng, 0, max_degree)
        exps = [0] * dim
        for _ in range(degree):
            exps[_int(rng, 0, dim - 1)] += 1
        terms[tuple(exps)] = random_scalar(rng, complex_coeffs=complex_coeffs)
    return Poly(dim, varspace, terms)


def random_spatial_poly(rng: np.random.Generator, degree: int, n_terms: int = 4) -> Poly:
    """Homogeneous momentum polynomial of the given degree free of p0."""
    monomials = [(0,) + m for m in monomials_of_degree(3, degree)]
    terms = {}
    for _ in range(n_terms):
        terms[monomials[_int(rng, 0, len(monomials) - 1)]] = _int(rng, -5, 5, nonzero=True)
    return Poly(4, VarSpace.MOMENTUM, terms)


def random_delta(
    rng: np.random.Generator,
    dim: int = 4,
    max_order: int = 4,
    n_terms: int = 4,
    complex_coeffs: bool = False,
) -> DeltaExpansion:
    terms = {}
    for _ in range(n_terms):
        order = _int(rng, 0, max_order)
        kappa = [0] * dim
        for _ in range(order):
            kappa[_int(rng, 0, dim - 1)] += 1
        terms[MultiIndex(kappa)] = random_scalar(rng, complex_coeffs=complex_coeffs)
    return DeltaExpansion(dim, terms)


def random_g_vector(rng: np.random.Generator, n: int) -> Poly:
    """Random integer combination of basis_G(n)."""
    total = Poly.zero(4, VarSpace.MOMENTUM)
    for g in basis_G(n):
        total = total + g.scale(_int(rng, -5, 5))
    return total


def random_invariant_delta(rng: np.random.Generator, max_order: int = 8) -> DeltaExpansion:
    """sum_l c_l box^l delta over 2l <= max_order."""
    total = DeltaExpansion.zero(4)
    for l in range(max_order // 2 + 1):
        c = _int(rng, -4, 4)
        if c:
            total = total + box_power(l).scale(c)
    return total


def random_split_inputs(rng: np.random.Generator, max_order: int = 6) -> tuple[DeltaExpansion, DeltaExpansion]:
    """(v_plus, v_minus) with v_plus arbitrary and v_plus - v_minus invariant."""
    v_plus = random_delta(rng, 4, max_order, n_terms=5)
    invariant = random_invariant_delta(rng, max_order)
    return v_plus, v_plus - invariant


def _cayley(S: MatrixQ) -> MatrixQ:
    """(1 - S)^-1 (1 + S): orthogonal for antisymmetric S."""
    one = MatrixQ.identity(S.nrows)
    return (one - S).inverse() @ (one + S)


def random_rotation(rng: np.random.Generator, bound: int = 3) -> MatrixQ:
    """Rational 4x4 rotation fixing the time axis: Cayley transform times a signed permutation."""
    a, b, c = (Fraction(_int(rng, -bound, bound), _int(rng, 1, bound)) for _ in range(3))
    S = MatrixQ([[0, a, b], [-a, 0, c], [-b, -c, 0]])
    R = _cayley(S)
    perm = [int(k) for k in rng.permutation(3)]
    signs = [1 if _int(rng, 0, 1) else -1 for _ in range(3)]
    P = MatrixQ([[signs[i] if perm[i] == j else 0 for j in range(3)] for i in range(3)])
    if P.det() != Scalar(1):
        P = P.scale(-1)
    Q = R @ P
    rows = [[1, 0, 0, 0]] + [[0] + list(Q.rows[i]) for i in range(3)]
    return MatrixQ(rows, 4)


def _random_gaussian_rational(rng: np.random.Generator, bound: int = 2) -> Scalar:
    return Scalar(
        Fraction(_int(rng, -bound, bound), _int(rng, 1, bound)),
        Fraction(_int(rng, -bound, bound), _int(rng, 1, bound)),
    )


def random_sl2(rng: np.random.Generator, factors: int = 3) -> MatrixQ:
    """Product of elementary SL(2,C) factors with Gaussian-rational entries."""
    A = MatrixQ.identity(2)
    for _ in range(factors):
        kind = _int(rng, 0, 2)
        if kind == 0:
            A = A @ MatrixQ([[1, _random_gaussian_rational(rng)], [0, 1]])
        elif kind == 1:
            A = A @ MatrixQ([[1, 0], [_random_gaussian_rational(rng), 1]])
        else:
            z = Scalar(_int(rng, 1, 3), _int(rng, -2, 2))
            A = A @ MatrixQ([[z, 0], [0, z.inverse()]])
    return A


def random_jet_poly(rng: np.random.Generator, dim: int, m: int, max_degree: int = 2) -> Poly:
    """Random polynomial times a monomial of degree m*dim + 1, so the jet condition holds."""
    if m < 0:
        raise ParameterError(f"[Sampling] ERROR: m must be >= 0, got {m}")
    exps = [0] * dim
    for _ in range(m * dim + 1):
        exps[_int(rng, 0, dim - 1)] += 1
    base = random_poly(rng, dim, max_degree, n_terms=3)
    if base.is_zero():
        base = Poly.const(1, dim, VarSpace.POSITION)
    return base * Poly.monomial(exps, VarSpace.POSITION)


def random_entry_poly(rng: np.random.Generator, s2: int, n_terms: int = 3) -> Poly:
    """Random position polynomial whose monomials all have degree >= 4*s2 - 3."""
    total = Poly.zero(4, VarSpace.POSITION)
    low = max(4 * s2 - 3, 1)
    for _ in range(n_terms):
        degree = _int(rng, low, low + 1)
        exps = [0] * 4
        for _ in range(degree):
            exps[_int(rng, 0, 3)] += 1
        total = total + Poly.monomial(exps, VarSpace.POSITION, random_scalar(rng, complex_coeffs=True) or 1)
    return total

