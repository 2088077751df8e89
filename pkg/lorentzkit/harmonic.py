"""
lorentzkit/harmonic.py

Grading of momentum polynomials by powers of p0, harmonic decomposition of
spatial polynomials, and the exact SO(3)-invariant projection.

Spatial polynomials are four-dimensional momentum polynomials that do not
involve p0.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from scipy.special import factorial2

from .algebra import Poly, Scalar, VarSpace, apply_diffop, monomials_of_degree
from .errors import NonHomogeneousError, ParameterError, VarSpaceError
from .linalg import MatrixQ
from .logger import logger
from .lorentz import laplace3

MOMENTUM = VarSpace.MOMENTUM


def double_factorial(n: int) -> int:
    """n!! with the convention (-1)!! = 0!! = 1."""
    if n <= 0:
        return 1
    return int(factorial2(n, exact=True))


def spatial_monomials(l: int) -> list[tuple]:
    """Degree-l exponent tuples (0, a, b, c), lexicographically descending."""
    return [(0,) + m for m in monomials_of_degree(3, l)]


@lru_cache(maxsize=None)
def spatial_square_power(k: int) -> Poly:
    """|p|^(2k) = (p1^2 + p2^2 + p3^2)^k."""
    if k == 0:
        return Poly.const(1, 4, MOMENTUM)
    base = sum((Poly.var(j, 4, MOMENTUM) ** 2 for j in (1, 2, 3)), Poly.zero(4, MOMENTUM))
    return spatial_square_power(k - 1) * base


def _check_momentum4(P: Poly, op: str):
    if P.dim != 4 or P.varspace is not MOMENTUM:
        raise VarSpaceError(f"[Harmonic] ERROR: {op} needs a four-dimensional momentum polynomial")


def _check_homogeneous(P: Poly, op: str):
    if not P.is_homogeneous():
        raise NonHomogeneousError(f"[Harmonic] ERROR: {op} needs a homogeneous polynomial, degrees {P.degrees()}")


def _check_spatial(P: Poly, op: str):
    if any(k[0] for k in P.terms):
        raise ParameterError(f"[Harmonic] ERROR: {op} needs a polynomial free of p0")


# === GRADING ===

def grade_by_p0(P: Poly) -> list[tuple[int, Poly]]:
    """P = sum_l p0^(n-l) Q_l with Q_l spatial of degree l; zero Q_l are omitted."""
    _check_momentum4(P, "grade_by_p0")
    _check_homogeneous(P, "grade_by_p0")
    n = P.degree()
    parts = {}
    for k, c in P.terms.items():
        parts.setdefault(n - k[0], {})[(0,) + k[1:]] = c
    return [(l, Poly(4, MOMENTUM, parts[l])) for l in sorted(parts)]


# === HARMONIC BASES ===

def laplacian_matrix(l: int) -> MatrixQ:
    """Matrix of the spatial Laplacian from degree-l to degree-(l-2) monomials."""
    cols = spatial_monomials(l)
    rows = spatial_monomials(l - 2) if l >= 2 else []
    index = {m: i for i, m in enumerate(rows)}
    entries = [[0] * len(cols) for _ in rows]
    L = laplace3(MOMENTUM)
    for j, m in enumerate(cols):
        for k, c in apply_diffop(L, Poly.monomial(m, MOMENTUM)).terms.items():
            entries[index[k]][j] = c
    return MatrixQ(entries, len(cols))


@lru_cache(maxsize=None)
def harmonic_basis(l: int) -> tuple[Poly, ...]:
    """Basis of the degree-l harmonic polynomials, from the Laplacian nullspace."""
    if l < 0:
        raise ParameterError(f"[Harmonic] ERROR: degree must be >= 0, got {l}")
    monomials = spatial_monomials(l)
    basis = tuple(
        Poly(4, MOMENTUM, {m: c for m, c in zip(monomials, vec) if c})
        for vec in laplacian_matrix(l).nullspace()
    )
    logger.debug(f"[Harmonic] H_{l} basis has {len(basis)} elements")
    return basis


def dim_harmonic(l: int) -> int:
    return len(harmonic_basis(l))


@lru_cache(maxsize=None)
def _decomposition_system(l: int) -> tuple[list, list, MatrixQ]:
    """Columns |p|^(2k) h for h in H_(l-2k); returns (labels, monomials, inverse)."""
    monomials = spatial_monomials(l)
    labels = []
    columns = []
    for k in range(l // 2 + 1):
        for h in harmonic_basis(l - 2 * k):
            labels.append((k, h))
            full = spatial_square_power(k) * h
            columns.append([full.coefficient(m) for m in monomials])
    system = MatrixQ.from_columns(columns, len(monomials))
    return labels, monomials, system.inverse()


# === DECOMPOSITION ===

@dataclass(frozen=True)
class HarmonicDecomposition:
    degree: int
    parts: tuple

    def reassemble(self) -> Poly:
        total = Poly.zero(4, MOMENTUM)
        for k, h in self.parts:
            total = total + spatial_square_power(k) * h
        return total

    def part(self, k: int) -> Poly:
        for kk, h in self.parts:
            if kk == k:
                return h
        return Poly.zero(4, MOMENTUM)


def harmonic_decompose(Q: Poly) -> HarmonicDecomposition:
    """Q = sum_k |p|^(2k) h_k with every h_k harmonic; zero parts are omitted."""
    _check_momentum4(Q, "harmonic_decompose")
    _check_homogeneous(Q, "harmonic_decompose")
    _check_spatial(Q, "harmonic_decompose")
    if Q.is_zero():
        return HarmonicDecomposition(0, ())
    l = Q.degree()
    labels, monomials, inverse = _decomposition_system(l)
    coords = inverse.apply([Q.coefficient(m) for m in monomials])
    parts = {}
    for (k, h), c in zip(labels, coords):
        if c:
            parts[k] = parts.get(k, Poly.zero(4, MOMENTUM)) + h.scale(c)
    return HarmonicDecomposition(l, tuple((k, parts[k]) for k in sorted(parts) if parts[k]))


# === SO(3) AVERAGING ===

def _laplacian_power_constant(Q: Poly, K: int) -> Scalar:
    L = laplace3(MOMENTUM)
    for _ in range(K):
        Q = apply_diffop(L, Q)
    return Q.coefficient((0, 0, 0, 0))


def so3_project(P: Poly) -> Poly:
    """
    Component of P in span{p0^(n-2k) |p|^(2k)}, i.e. the Haar average over SO(3).

    Only the H_0 part of each grade survives; its coefficient is
    Lap^(l/2) Q_l / (l+1)!, since Lap^K |p|^(2K) = (2K+1)!.
    """
    _check_momentum4(P, "so3_project")
    _check_homogeneous(P, "so3_project")
    if P.is_zero():
        return P
    n = P.degree()
    result = Poly.zero(4, MOMENTUM)
    for l, Q in grade_by_p0(P):
        if l % 2:
            continue
        c = _laplacian_power_constant(Q, l // 2) / factorial(l + 1)
        if c:
            result = result + (Poly.var(0, 4, MOMENTUM) ** (n - l) * spatial_square_power(l // 2)).scale(c)
    return result


def sphere_average(Q: Poly) -> Scalar:
    """Average of a spatial polynomial over the unit sphere, monomial by monomial."""
    _check_momentum4(Q, "sphere_average")
    _check_spatial(Q, "sphere_average")
    total = Scalar(0)
    for (_, a, b, c), coeff in Q.terms.items():
        if a % 2 or b % 2 or c % 2:
            continue
        weight = Fraction(
            double_factorial(a - 1) * double_factorial(b - 1) * double_factorial(c - 1),
            double_factorial(a + b + c + 1),
        )
        total = total + coeff * weight
    return total
