"""
lorentzkit/algebra.py

Exact complex-rational scalars, multi-indices, sparse multivariate polynomials
and polynomial-coefficient differential operators.

Scalars are elements of sympy's Gaussian rationals QQ_I and polynomials are
sympy ring elements over QQ_I, one ring per (dimension, variable space).
Every value is immutable once built; all operations return new objects.
"""

from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial, prod
from operator import add, sub
from types import MappingProxyType

from sympy.polys.domains import QQ, QQ_I
from sympy.polys.rings import ring

from .errors import DimensionMismatchError, ScalarDivisionError, VarSpaceError

MAX_DIM = 4


def _frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"[Algebra] ERROR: cannot read {value!r} as an exact rational")


def _qq(value):
    f = _frac(value)
    return QQ(f.numerator, f.denominator)


def to_fraction(q) -> Fraction:
    """A QQ element as a Fraction."""
    return Fraction(int(q.numerator), int(q.denominator))


class Scalar:
    """Complex number with exact rational parts, wrapping an element of QQ_I."""

    __slots__ = ("value",)

    def __init__(self, re=0, im=0):
        self.value = QQ_I(_qq(re), _qq(im))

    @classmethod
    def wrap(cls, value) -> "Scalar":
        obj = object.__new__(cls)
        obj.value = value
        return obj

    @classmethod
    def of(cls, value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        return cls(value)

    @property
    def re(self) -> Fraction:
        return to_fraction(self.value.x)

    @property
    def im(self) -> Fraction:
        return to_fraction(self.value.y)

    # --- predicates ---

    def is_zero(self) -> bool:
        return not self.value

    def is_real(self) -> bool:
        return not self.value.y

    def __bool__(self):
        return bool(self.value)

    # --- arithmetic ---

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Scalar.wrap(self.value + o.value)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Scalar.wrap(self.value - o.value)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Scalar.wrap(o.value - self.value)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Scalar.wrap(self.value * o.value)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return Scalar.wrap(-self.value)

    def __pos__(self):
        return self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return Scalar.wrap(self.value ** exponent)

    def inverse(self) -> "Scalar":
        if not self.value:
            raise ScalarDivisionError("[Algebra] ERROR: division by the zero scalar")
        return Scalar.wrap(QQ_I.one / self.value)

    def conjugate(self) -> "Scalar":
        return Scalar.wrap(QQ_I(self.value.x, -self.value.y))

    def abs2(self) -> Fraction:
        re, im = self.re, self.im
        return re * re + im * im

    # --- comparison / hashing ---

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.value == o.value

    def __hash__(self):
        if self.is_real():
            return hash(self.re)
        return hash((self.re, self.im))

    def __float__(self):
        if not self.is_real():
            raise TypeError("[Algebra] ERROR: complex scalar has no float value")
        return float(self.re)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    # --- printing ---

    def __str__(self):
        re, im = self.re, self.im
        if not im:
            return str(re)
        imag = f"{abs(im)}*i"
        if not re:
            return imag if im > 0 else f"-{imag}"
        sign = "+" if im > 0 else "-"
        return f"{re}{sign}{imag}"

    def __repr__(self):
        return f"Scalar({self})"


def _coerce(value):
    if isinstance(value, Scalar):
        return value
    if isinstance(value, (int, Fraction)):
        return Scalar(value)
    return None


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)


def is_scalar_like(value) -> bool:
    return isinstance(value, (Scalar, int, Fraction))


# === MULTI-INDICES ===

class MultiIndex(tuple):
    """Tuple of nonnegative integers of fixed dimension 1..4."""

    __slots__ = ()

    def __new__(cls, components):
        comps = tuple(int(c) for c in components)
        if not 1 <= len(comps) <= MAX_DIM:
            raise DimensionMismatchError(
                f"[Algebra] ERROR: multi-index dimension {len(comps)} outside 1..{MAX_DIM}"
            )
        if any(c < 0 for c in comps):
            raise ValueError(f"[Algebra] ERROR: negative multi-index component in {comps}")
        return super().__new__(cls, comps)

    @classmethod
    def zero(cls, dim: int) -> "MultiIndex":
        return cls((0,) * dim)

    @classmethod
    def unit(cls, dim: int, axis: int, power: int = 1) -> "MultiIndex":
        comps = [0] * dim
        comps[axis] = power
        return cls(comps)

    @property
    def dim(self) -> int:
        return len(self)

    @property
    def order(self) -> int:
        return sum(self)

    @property
    def factorial(self) -> int:
        return prod(factorial(c) for c in self)

    def plus(self, other) -> "MultiIndex":
        _check_same_length(self, other)
        return MultiIndex(map(add, self, other))

    def minus(self, other) -> "MultiIndex":
        _check_same_length(self, other)
        diff = tuple(map(sub, self, other))
        if any(c < 0 for c in diff):
            raise ValueError(f"[Algebra] ERROR: {tuple(self)} - {tuple(other)} is negative")
        return MultiIndex(diff)

    def dominates(self, other) -> bool:
        """True when every component of self is >= the matching component of other."""
        _check_same_length(self, other)
        return all(a >= b for a, b in zip(self, other))

    def __repr__(self):
        return f"MultiIndex({tuple(self)})"


def _check_same_length(a, b):
    if len(a) != len(b):
        raise DimensionMismatchError(
            f"[Algebra] ERROR: multi-index dimensions differ ({len(a)} vs {len(b)})"
        )


def monomials_of_degree(dim: int, degree: int) -> list[tuple]:
    """All exponent tuples of the given total degree, lexicographically descending."""
    if dim == 1:
        return [(degree,)]
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials_of_degree(dim - 1, degree - first):
            out.append((first,) + rest)
    return out


# === POLYNOMIALS ===

class VarSpace(Enum):
    POSITION = "position"
    MOMENTUM = "momentum"

    @property
    def letter(self) -> str:
        return "x" if self is VarSpace.POSITION else "p"


def _term_order(key):
    return (-sum(key), tuple(-e for e in key))


def _check_dim(dim: int):
    if not 1 <= dim <= MAX_DIM:
        raise DimensionMismatchError(f"[Algebra] ERROR: dimension {dim} outside 1..{MAX_DIM}")


@lru_cache(maxsize=None)
def poly_ring(dim: int, varspace: VarSpace):
    """The sympy ring QQ_I[x0..x(dim-1)] (or p0..) behind every Poly of that shape."""
    _check_dim(dim)
    R, *_gens = ring(",".join(f"{varspace.letter}{k}" for k in range(dim)), QQ_I)
    return R


class Poly:
    """
    Sparse multivariate polynomial over Scalar.

    Wraps a sympy PolyElement over QQ_I. The variable-space tag (position x
    or momentum p) is checked by every binary operation.
    """

    __slots__ = ("dim", "varspace", "rep", "_terms")

    def __init__(self, dim: int, varspace: VarSpace, terms=None):
        _check_dim(dim)
        cleaned = {}
        for key, coeff in (terms or {}).items():
            key = tuple(int(e) for e in key)
            if len(key) != dim:
                raise DimensionMismatchError(
                    f"[Algebra] ERROR: exponent {key} does not match dimension {dim}"
                )
            if any(e < 0 for e in key):
                raise ValueError(f"[Algebra] ERROR: negative exponent in {key}")
            c = Scalar.of(coeff)
            if c:
                cleaned[key] = cleaned.get(key, ZERO) + c
        self.dim = dim
        self.varspace = varspace
        self.rep = poly_ring(dim, varspace).from_dict({k: c.value for k, c in cleaned.items() if c})
        self._terms = None

    @classmethod
    def wrap(cls, dim: int, varspace: VarSpace, rep) -> "Poly":
        obj = object.__new__(cls)
        obj.dim = dim
        obj.varspace = varspace
        obj.rep = rep
        obj._terms = None
        return obj

    def _new(self, rep) -> "Poly":
        return Poly.wrap(self.dim, self.varspace, rep)

    def _from_raw(self, raw: dict) -> "Poly":
        return self._new(poly_ring(self.dim, self.varspace).from_dict(raw))

    # --- constructors ---

    @classmethod
    def zero(cls, dim: int, varspace: VarSpace) -> "Poly":
        return cls.wrap(dim, varspace, poly_ring(dim, varspace).zero)

    @classmethod
    def const(cls, value, dim: int, varspace: VarSpace) -> "Poly":
        R = poly_ring(dim, varspace)
        return cls.wrap(dim, varspace, R.ground_new(Scalar.of(value).value))

    @classmethod
    def var(cls, axis: int, dim: int, varspace: VarSpace) -> "Poly":
        R = poly_ring(dim, varspace)
        if not 0 <= axis < dim:
            raise DimensionMismatchError(f"[Algebra] ERROR: variable {axis} outside 0..{dim - 1}")
        return cls.wrap(dim, varspace, R.gens[axis])

    @classmethod
    def monomial(cls, exponents, varspace: VarSpace, coeff=1) -> "Poly":
        exponents = tuple(exponents)
        return cls(len(exponents), varspace, {exponents: coeff})

    # --- inspection ---

    @property
    def terms(self):
        """Exponent tuple -> nonzero Scalar coefficient."""
        if self._terms is None:
            self._terms = {k: Scalar.wrap(c) for k, c in self.rep.items()}
        return MappingProxyType(self._terms)

    def items(self) -> list:
        """Terms in canonical order: higher degree first, then lexicographically descending."""
        return sorted(self.terms.items(), key=lambda kv: _term_order(kv[0]))

    def coefficient(self, exponents) -> Scalar:
        c = self.rep.get(tuple(exponents))
        return Scalar.wrap(c) if c else ZERO

    def is_zero(self) -> bool:
        return not self.rep

    def __bool__(self):
        return bool(self.rep)

    def __len__(self):
        return len(self.rep)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(k) for k in self.rep), default=-1)

    def degrees(self) -> list[int]:
        return sorted({sum(k) for k in self.rep})

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous_component(self, degree: int) -> "Poly":
        return self._from_raw({k: c for k, c in self.rep.items() if sum(k) == degree})

    def homogeneous_components(self) -> dict:
        return {n: self.homogeneous_component(n) for n in self.degrees()}

    def is_real(self) -> bool:
        return all(not c.y for c in self.rep.values())

    def max_abs2(self) -> Fraction:
        """Largest squared modulus among the coefficients."""
        return max((c.abs2() for c in self.terms.values()), default=Fraction(0))

    def conjugate(self) -> "Poly":
        return self._from_raw({k: QQ_I(c.x, -c.y) for k, c in self.rep.items()})

    # --- arithmetic ---

    def _check_compatible(self, other: "Poly"):
        if other.dim != self.dim:
            raise DimensionMismatchError(
                f"[Algebra] ERROR: polynomial dimensions differ ({self.dim} vs {other.dim})"
            )
        if other.varspace is not self.varspace:
            raise VarSpaceError(
                f"[Algebra] ERROR: cannot combine {self.varspace.value} and "
                f"{other.varspace.value} polynomials"
            )

    def _as_poly(self, other):
        if isinstance(other, Poly):
            self._check_compatible(other)
            return other
        if is_scalar_like(other):
            return Poly.const(other, self.dim, self.varspace)
        return None

    def __add__(self, other):
        o = self._as_poly(other)
        if o is None:
            return NotImplemented
        return self._new(self.rep + o.rep)

    __radd__ = __add__

    def __neg__(self):
        return self._new(-self.rep)

    def __sub__(self, other):
        o = self._as_poly(other)
        if o is None:
            return NotImplemented
        return self._new(self.rep - o.rep)

    def __rsub__(self, other):
        o = self._as_poly(other)
        if o is None:
            return NotImplemented
        return self._new(o.rep - self.rep)

    def scale(self, factor) -> "Poly":
        return self._new(self.rep.mul_ground(Scalar.of(factor).value))

    def __mul__(self, other):
        if is_scalar_like(other):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check_compatible(other)
        return self._new(self.rep * other.rep)

    def __rmul__(self, other):
        if is_scalar_like(other):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if is_scalar_like(other):
            return self.scale(Scalar.of(other).inverse())
        return NotImplemented

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        return self._new(self.rep ** exponent)

    # --- comparison ---

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.varspace is other.varspace
            and self.rep == other.rep
        )

    def __hash__(self):
        return hash((self.dim, self.varspace, frozenset(self.terms.items())))

    # --- printing ---

    def __str__(self):
        letter = self.varspace.letter
        if not self.rep:
            return f"0*{letter}0"
        return format_terms((c, format_monomial(k, letter)) for k, c in self.items())

    def __repr__(self):
        return f"Poly({self.varspace.value}, dim={self.dim}: {self})"


def format_monomial(exponents, letter: str, offset: int = 0) -> str:
    parts = []
    for axis, e in enumerate(exponents):
        if e == 1:
            parts.append(f"{letter}{axis + offset}")
        elif e > 1:
            parts.append(f"{letter}{axis + offset}^{e}")
    return "*".join(parts)


def _format_coefficient(c: Scalar, body: str) -> tuple[bool, str]:
    """Return (negative, text) for one term of a sum."""
    if c.is_real() or not c.re:
        value = c.re if c.is_real() else c.im
        negative = value < 0
        magnitude = abs(value)
        if c.is_real():
            text = body if (magnitude == 1 and body) else (
                f"{magnitude}*{body}" if body else f"{magnitude}"
            )
        else:
            text = f"{magnitude}*i*{body}" if body else f"{magnitude}*i"
        return negative, text
    return False, f"({c})*{body}" if body else f"({c})"


def format_terms(terms) -> str:
    """Join (coefficient, body) pairs into a parseable sum."""
    out = []
    for c, body in terms:
        negative, text = _format_coefficient(c, body)
        if not out:
            out.append(f"-{text}" if negative else text)
        else:
            out.append(f" - {text}" if negative else f" + {text}")
    return "".join(out) if out else "0"


# === POLYNOMIAL CALCULUS ===

def differentiate(P: Poly, kappa) -> Poly:
    kappa = tuple(kappa)
    if len(kappa) != P.dim:
        raise DimensionMismatchError(
            f"[Algebra] ERROR: derivative index {kappa} does not match dimension {P.dim}"
        )
    rep = P.rep
    gens = rep.ring.gens
    for axis, k in enumerate(kappa):
        for _ in range(k):
            if not rep:
                return P._new(rep)
            rep = rep.diff(gens[axis])
    return P._new(rep)


def _matrix_rows(M) -> list[list[Scalar]]:
    rows = M.rows if hasattr(M, "rows") else M
    return [[Scalar.of(v) for v in row] for row in rows]


def substitute_linear(P: Poly, M) -> Poly:
    """
    Return P(M x): variable j is replaced by the linear form sum_k M[j][k] x_k.

    With this convention a matrix whose row 1 is e_2 sends p1 to p2.
    """
    rows = _matrix_rows(M)
    d = P.dim
    if len(rows) != d or any(len(r) != d for r in rows):
        raise DimensionMismatchError(f"[Algebra] ERROR: substitution matrix must be {d}x{d}")
    R = P.rep.ring
    forms = [
        R.from_dict({tuple(MultiIndex.unit(d, k)): rows[j][k].value for k in range(d) if rows[j][k]})
        for j in range(d)
    ]
    return P._new(P.rep.compose(list(zip(R.gens, forms))))


# === DIFFERENTIAL OPERATORS ===

def _kappa_order(kappa):
    return (-sum(kappa), tuple(-e for e in kappa))


class DiffOp:
    """Finite sum of polynomial coefficients times partial derivatives."""

    __slots__ = ("dim", "varspace", "_terms")

    def __init__(self, dim: int, varspace: VarSpace, terms=()):
        _check_dim(dim)
        merged = {}
        for coeff, kappa in terms:
            kappa = MultiIndex(kappa)
            if kappa.dim != dim or coeff.dim != dim:
                raise DimensionMismatchError(
                    f"[Algebra] ERROR: operator term does not match dimension {dim}"
                )
            if coeff.varspace is not varspace:
                raise VarSpaceError(
                    f"[Algebra] ERROR: {coeff.varspace.value} coefficient in a "
                    f"{varspace.value} operator"
                )
            merged[kappa] = merged[kappa] + coeff if kappa in merged else coeff
        self.dim = dim
        self.varspace = varspace
        self._terms = {k: c for k, c in merged.items() if c}

    @classmethod
    def _raw(cls, dim, varspace, terms) -> "DiffOp":
        obj = object.__new__(cls)
        obj.dim = dim
        obj.varspace = varspace
        obj._terms = {k: c for k, c in terms.items() if c}
        return obj

    @classmethod
    def partial(cls, kappa, varspace: VarSpace, coeff=1) -> "DiffOp":
        kappa = MultiIndex(kappa)
        return cls(kappa.dim, varspace, [(Poly.const(coeff, kappa.dim, varspace), kappa)])

    @property
    def terms(self) -> tuple:
        """(coefficient, MultiIndex) pairs in canonical order."""
        return tuple((self._terms[k], k) for k in sorted(self._terms, key=_kappa_order))

    def is_zero(self) -> bool:
        return not self._terms

    def order(self) -> int:
        return max((sum(k) for k in self._terms), default=-1)

    def apply(self, P: Poly) -> Poly:
        return apply_diffop(self, P)

    def _check_compatible(self, other: "DiffOp"):
        if other.dim != self.dim:
            raise DimensionMismatchError(
                f"[Algebra] ERROR: operator dimensions differ ({self.dim} vs {other.dim})"
            )
        if other.varspace is not self.varspace:
            raise VarSpaceError("[Algebra] ERROR: cannot combine position and momentum operators")

    def __add__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        self._check_compatible(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out[k] + c if k in out else c
        return DiffOp._raw(self.dim, self.varspace, out)

    def __neg__(self):
        return DiffOp._raw(self.dim, self.varspace, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not is_scalar_like(other):
            return NotImplemented
        return DiffOp._raw(self.dim, self.varspace, {k: c.scale(other) for k, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.varspace is other.varspace
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self.dim, self.varspace, frozenset(self._terms.items())))

    def __str__(self):
        if not self._terms:
            return "0"
        return " + ".join(
            f"({coeff})*D[{','.join(str(e) for e in kappa)}]" for coeff, kappa in self.terms
        )

    def __repr__(self):
        return f"DiffOp({self})"


def apply_diffop(D: DiffOp, P: Poly) -> Poly:
    if D.dim != P.dim:
        raise DimensionMismatchError(
            f"[Algebra] ERROR: operator dimension {D.dim} vs polynomial dimension {P.dim}"
        )
    if D.varspace is not P.varspace:
        raise VarSpaceError(
            f"[Algebra] ERROR: {D.varspace.value} operator applied to a "
            f"{P.varspace.value} polynomial"
        )
    total = Poly.zero(P.dim, P.varspace)
    for kappa, coeff in D._terms.items():
        derived = differentiate(P, kappa)
        if derived:
            total = total + coeff * derived
    return total


def compose(D1: DiffOp, D2: DiffOp) -> DiffOp:
    """The operator D1 o D2, expanded with the multivariate Leibniz rule."""
    D1._check_compatible(D2)
    out = {}
    for alpha, a in D1._terms.items():
        for beta, b in D2._terms.items():
            for gamma in product(*(range(k + 1) for k in alpha)):
                db = differentiate(b, gamma)
                if not db:
                    continue
                weight = prod(comb(k, g) for k, g in zip(alpha, gamma))
                coeff = (a * db).scale(weight)
                kappa = MultiIndex(tuple(k - g + m for k, g, m in zip(alpha, gamma, beta)))
                out[kappa] = out[kappa] + coeff if kappa in out else coeff
    return DiffOp._raw(D1.dim, D1.varspace, out)


def commutator(D1: DiffOp, D2: DiffOp) -> DiffOp:
    return compose(D1, D2) - compose(D2, D1)
