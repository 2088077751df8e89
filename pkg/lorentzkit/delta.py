"""
lorentzkit/delta.py

Functionals concentrated at the origin: finite sums of derivatives of the
delta function, their pairing with polynomials, products with polynomials,
the Fourier correspondence with momentum polynomials, reflection parity,
and the growth/norm utilities of the analytic test-function classes.

Fourier convention: v^(p) = (v, exp(i p.x)), so d^k delta -> (-i)^|k| p^k.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, perm, prod
from operator import add, sub
from types import MappingProxyType

import numpy as np

from .algebra import (
    I,
    ONE,
    ZERO,
    MultiIndex,
    Poly,
    Scalar,
    VarSpace,
    format_terms,
    is_scalar_like,
    monomials_of_degree,
)
from .errors import DimensionMismatchError, ParameterError, VarSpaceError

_MINUS_I_POWERS = (ONE, -I, -ONE, I)
_I_POWERS = (ONE, I, -ONE, -I)


def _kappa_order(kappa):
    return (sum(kappa), tuple(-e for e in kappa))


class DeltaExpansion:
    """Finite sum  sum_k c_k d^k delta  in d dimensions."""

    __slots__ = ("dim", "_terms")

    def __init__(self, dim: int, terms=None):
        if not 1 <= dim <= 4:
            raise DimensionMismatchError(f"[Delta] ERROR: dimension {dim} outside 1..4")
        cleaned = {}
        for kappa, coeff in (terms or {}).items():
            kappa = MultiIndex(kappa)
            if kappa.dim != dim:
                raise DimensionMismatchError(
                    f"[Delta] ERROR: multi-index {tuple(kappa)} does not match dimension {dim}"
                )
            c = Scalar.of(coeff)
            if c:
                cleaned[kappa] = cleaned.get(kappa, ZERO) + c
        self.dim = dim
        self._terms = {k: c for k, c in cleaned.items() if c}

    @classmethod
    def _raw(cls, dim, terms) -> "DeltaExpansion":
        obj = object.__new__(cls)
        obj.dim = dim
        obj._terms = {k: c for k, c in terms.items() if c}
        return obj

    @classmethod
    def zero(cls, dim: int) -> "DeltaExpansion":
        return cls(dim)

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def items(self) -> list:
        """Terms ordered by increasing order, then lexicographically descending."""
        return sorted(self._terms.items(), key=lambda kv: _kappa_order(kv[0]))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def orders(self) -> list[int]:
        return sorted({sum(k) for k in self._terms})

    def order_component(self, n: int) -> "DeltaExpansion":
        return DeltaExpansion._raw(self.dim, {k: c for k, c in self._terms.items() if sum(k) == n})

    def max_order(self) -> int:
        return max((sum(k) for k in self._terms), default=-1)

    # --- arithmetic ---

    def _check_dim(self, other: "DeltaExpansion"):
        if other.dim != self.dim:
            raise DimensionMismatchError(
                f"[Delta] ERROR: expansion dimensions differ ({self.dim} vs {other.dim})"
            )

    def __add__(self, other):
        if not isinstance(other, DeltaExpansion):
            return NotImplemented
        self._check_dim(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out[k] + c if k in out else c
        return DeltaExpansion._raw(self.dim, out)

    def __neg__(self):
        return DeltaExpansion._raw(self.dim, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, DeltaExpansion):
            return NotImplemented
        return self + (-other)

    def scale(self, factor) -> "DeltaExpansion":
        f = Scalar.of(factor)
        return DeltaExpansion._raw(self.dim, {k: c * f for k, c in self._terms.items()})

    def __mul__(self, other):
        if is_scalar_like(other):
            return self.scale(other)
        if isinstance(other, Poly):
            return mul_poly(other, self)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, DeltaExpansion):
            return NotImplemented
        return self.dim == other.dim and self._terms == other._terms

    def __hash__(self):
        return hash((self.dim, frozenset(self._terms.items())))

    def __str__(self):
        if not self._terms:
            return f"0*d[{','.join('0' * self.dim)}]"
        return format_terms(
            (c, f"d[{','.join(str(e) for e in k)}]") for k, c in self.items()
        )

    def __repr__(self):
        return f"DeltaExpansion(dim={self.dim}: {self})"


# === CONSTRUCTORS ===

def delta(dim: int = 4) -> DeltaExpansion:
    return DeltaExpansion(dim, {(0,) * dim: 1})


def derivative(v: DeltaExpansion, kappa) -> DeltaExpansion:
    """Distributional derivative: d^k (d^l delta) = d^(k+l) delta."""
    kappa = MultiIndex(kappa)
    if kappa.dim != v.dim:
        raise DimensionMismatchError("[Delta] ERROR: derivative index does not match dimension")
    return DeltaExpansion._raw(v.dim, {MultiIndex(map(add, k, kappa)): c for k, c in v._terms.items()})


def box_power(l: int, dim: int = 4) -> DeltaExpansion:
    """The functional box^l delta with box = d0^2 - d1^2 - ... (time axis first)."""
    if l < 0:
        raise ParameterError(f"[Delta] ERROR: box power must be >= 0, got {l}")
    terms = {}
    for a in monomials_of_degree(dim, l):
        weight = factorial(l) // prod(factorial(e) for e in a)
        sign = -1 if sum(a[1:]) % 2 else 1
        terms[tuple(2 * e for e in a)] = sign * weight
    return DeltaExpansion(dim, terms)


# === PAIRING AND PRODUCTS ===

def _check_position(P: Poly, v: DeltaExpansion, op: str):
    if P.dim != v.dim:
        raise DimensionMismatchError(
            f"[Delta] ERROR: {op}: polynomial dimension {P.dim} vs expansion dimension {v.dim}"
        )
    if P.varspace is not VarSpace.POSITION:
        raise VarSpaceError(f"[Delta] ERROR: {op} needs a position-space polynomial")


def pair(v: DeltaExpansion, f: Poly) -> Scalar:
    """(d^k delta, x^l) = (-1)^|k| k! when k = l, else 0; extended bilinearly."""
    _check_position(f, v, "pair")
    total = ZERO
    for kappa, c in v._terms.items():
        a = f.coefficient(kappa)
        if a:
            sign = -1 if sum(kappa) % 2 else 1
            total = total + c * a * (sign * kappa.factorial)
    return total


def mul_poly(P: Poly, v: DeltaExpansion) -> DeltaExpansion:
    """
    The product P v, fixed by (P v, f) = (v, P f).

    x^a d^k delta = (-1)^|a| k!/(k-a)! d^(k-a) delta when a <= k, else 0.
    """
    _check_position(P, v, "mul_poly")
    out = {}
    for alpha, a in P.terms.items():
        sign = -1 if sum(alpha) % 2 else 1
        for kappa, c in v._terms.items():
            if any(x > k for x, k in zip(alpha, kappa)):
                continue
            weight = sign * prod(perm(k, x) for k, x in zip(kappa, alpha))
            key = MultiIndex(map(sub, kappa, alpha))
            term = a * c * weight
            out[key] = out[key] + term if key in out else term
    return DeltaExpansion._raw(v.dim, out)


# === FOURIER ===

def fourier(v: DeltaExpansion) -> Poly:
    return Poly(
        v.dim,
        VarSpace.MOMENTUM,
        {k: c * _MINUS_I_POWERS[sum(k) % 4] for k, c in v._terms.items()},
    )


def fourier_inv(P: Poly) -> DeltaExpansion:
    if P.varspace is not VarSpace.MOMENTUM:
        raise VarSpaceError("[Delta] ERROR: fourier_inv needs a momentum-space polynomial")
    return DeltaExpansion(P.dim, {k: c * _I_POWERS[sum(k) % 4] for k, c in P.terms.items()})


# === REFLECTION ===

def reflect(v: DeltaExpansion) -> DeltaExpansion:
    return DeltaExpansion._raw(v.dim, {k: (-c if sum(k) % 2 else c) for k, c in v._terms.items()})


def is_odd(v: DeltaExpansion) -> bool:
    return reflect(v) == -v


def is_even(v: DeltaExpansion) -> bool:
    return reflect(v) == v


# === GROWTH AND NORMS ===

@dataclass(frozen=True)
class ClassParams:
    beta: Fraction
    B: Fraction
    N: int = 0

    def __post_init__(self):
        object.__setattr__(self, "beta", Fraction(self.beta))
        object.__setattr__(self, "B", Fraction(self.B))
        if self.beta < 0:
            raise ParameterError(f"[Delta] ERROR: beta must be >= 0, got {self.beta}")
        if self.B <= 0:
            raise ParameterError(f"[Delta] ERROR: B must be > 0, got {self.B}")
        if self.N < 0:
            raise ParameterError(f"[Delta] ERROR: N must be >= 0, got {self.N}")


@dataclass(frozen=True)
class AcyclicityParams:
    B0: Fraction
    B1: Fraction
    B: Fraction
    N1: int
    eps1: Fraction

    def __post_init__(self):
        for name in ("B0", "B1", "B", "eps1"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.B0 <= 0:
            raise ParameterError(f"[Delta] ERROR: B0 must be > 0, got {self.B0}")
        if not (self.B0 < self.B1 and self.B0 < self.B):
            raise ParameterError(
                f"[Delta] ERROR: need B0 < B1 and B0 < B, got B0={self.B0}, B1={self.B1}, B={self.B}"
            )
        if not 0 < self.eps1 < 1:
            raise ParameterError(f"[Delta] ERROR: eps1 must lie in (0, 1), got {self.eps1}")
        if self.N1 < 0:
            raise ParameterError(f"[Delta] ERROR: N1 must be >= 0, got {self.N1}")


@dataclass(frozen=True)
class AcyclicityWitness:
    A: float
    eps: float
    N: int
    A_exact: Fraction | None = None


def _log_fraction(q: Fraction) -> float:
    return math.log(q.numerator) - math.log(q.denominator)


def growth_sequence(v: DeltaExpansion, beta, n_max: int | None = None) -> list[float]:
    """
    m_n = max over |k| = n of n^beta |c_k|^(1/n), for 1 <= n <= n_max.

    Orders without coefficients give 0. Magnitudes are formed from logarithms
    of the exact numerators and denominators, so huge factorials do not overflow.
    """
    beta = Fraction(beta)
    if n_max is None:
        n_max = max(v.max_order(), 1)
    if n_max < 1:
        raise ParameterError(f"[Delta] ERROR: n_max must be >= 1, got {n_max}")
    best = [None] * (n_max + 1)
    for kappa, c in v._terms.items():
        n = sum(kappa)
        if not 1 <= n <= n_max:
            continue
        log_abs = 0.5 * _log_fraction(c.abs2())
        value = float(beta) * math.log(n) + log_abs / n
        if best[n] is None or value > best[n]:
            best[n] = value
    return [0.0 if best[n] is None else math.exp(best[n]) for n in range(1, n_max + 1)]


def dual_norm(kappa, params: ClassParams):
    """
    B^(-|k|) prod_j k_j^(-beta k_j) with 0^0 = 1.

    Exact Fraction when every beta*k_j is an integer, otherwise a numpy
    longdouble (64-bit mantissa on x86).
    """
    kappa = MultiIndex(kappa)
    base = params.B ** (-kappa.order)
    exponents = [params.beta * k for k in kappa]
    if all(e.denominator == 1 for e in exponents):
        denom = prod(k ** int(e) for k, e in zip(kappa, exponents) if k)
        return base / denom
    value = np.longdouble(base.numerator) / np.longdouble(base.denominator)
    for k, e in zip(kappa, exponents):
        if k:
            value = value * np.power(np.longdouble(k), -np.longdouble(e.numerator) / np.longdouble(e.denominator))
    return value


def acyclicity_params(p: AcyclicityParams) -> AcyclicityWitness:
    """A = log(B/B0)/log(B1/B0), eps = eps1^A, N = ceil(A N1)."""
    A = _log_fraction(p.B / p.B0) / _log_fraction(p.B1 / p.B0)
    snapped = Fraction(A).limit_denominator(10**6)
    A_exact = snapped if abs(float(snapped) - A) < 1e-12 else None
    if A_exact is not None:
        A = float(A_exact)
        N = math.ceil(A_exact * p.N1)
    else:
        N = math.ceil(A * p.N1)
    eps = float(p.eps1) ** A
    return AcyclicityWitness(A=A, eps=eps, N=N, A_exact=A_exact)
