"""
lorentzkit/spinor.py

Covariants of type (s, s): the spinor-contracted polynomial (wb x~ w)^(2s),
its products with delta expansions and the inverse map modulo the box^l delta
kernel, the (wb d~ w) identities, Clebsch-Gordan bookkeeping, reflection
parity and the SL(2,C) -> Lorentz homomorphism.

Spins are stored doubled (r2 = 2r, s2 = 2s). The 2x2 matrix is
x~ = [[x0 - x3, -x1 + i x2], [-x1 - i x2, x0 + x3]] and the slot of
wb_r x~_rs w_s is keyed (a = e_s over w, b = e_r over wb).
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType

from .algebra import I, ONE, DiffOp, MultiIndex, Poly, Scalar, VarSpace, format_monomial, substitute_linear
from .delta import DeltaExpansion, box_power, mul_poly
from .errors import DeterminantError, InconsistentSystemError, ParameterError
from .linalg import MatrixQ
from .logger import logger
from .lorentz import minkowski_square
from .report import Report

_EMPTY = (0, 0)
_UNIT_SLOT = (_EMPTY, _EMPTY)
_E = ((1, 0), (0, 1))
SPINOR_CONVENTION = "x -> Lambda(A) x, w -> (A^dagger)^-1 w, wb -> conj((A^dagger)^-1) wb"


def _is_zero(value) -> bool:
    if isinstance(value, Scalar):
        return value.is_zero()
    return value.is_zero()


def _slot_order(slot):
    a, b = slot
    return (tuple(-e for e in b), tuple(-e for e in a))


class SpinorPoly:
    """
    Bihomogeneous polynomial in (w1, w2) and (wb1, wb2).

    Coefficients are Poly, DeltaExpansion or DiffOp values (Scalar while an
    expression is being parsed).
    """

    __slots__ = ("bidegree", "_terms")

    def __init__(self, bidegree, terms=None):
        a_total, b_total = bidegree
        cleaned = {}
        for (a, b), coeff in (terms or {}).items():
            a, b = tuple(a), tuple(b)
            if len(a) != 2 or len(b) != 2 or sum(a) != a_total or sum(b) != b_total:
                raise ParameterError(f"[Spinor] ERROR: slot {(a, b)} is not of bidegree {bidegree}")
            if not _is_zero(coeff):
                cleaned[(a, b)] = coeff
        self.bidegree = (a_total, b_total)
        self._terms = cleaned

    @classmethod
    def unit(cls, coeff=ONE) -> "SpinorPoly":
        return cls((0, 0), {_UNIT_SLOT: coeff})

    @classmethod
    def omega(cls, index: int, bar: bool = False) -> "SpinorPoly":
        """The variable w_index (or wb_index), index in {1, 2}, with coefficient 1."""
        e = _E[index - 1]
        if bar:
            return cls((0, 1), {(_EMPTY, e): ONE})
        return cls((1, 0), {(e, _EMPTY): ONE})

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def items(self) -> list:
        return sorted(self._terms.items(), key=lambda kv: _slot_order(kv[0]))

    def is_zero(self) -> bool:
        return not self._terms

    def slot_count(self) -> int:
        return len(self._terms)

    def map_coefficients(self, fn) -> "SpinorPoly":
        return SpinorPoly(self.bidegree, {slot: fn(c) for slot, c in self._terms.items()})

    def coefficient(self, a, b):
        return self._terms.get((tuple(a), tuple(b)))

    # --- arithmetic ---

    def __add__(self, other):
        if not isinstance(other, SpinorPoly):
            if self.bidegree == (0, 0):
                other = SpinorPoly.unit(other)
            else:
                return NotImplemented
        if other.bidegree != self.bidegree:
            raise ParameterError(
                f"[Spinor] ERROR: cannot add bidegrees {self.bidegree} and {other.bidegree}"
            )
        out = dict(self._terms)
        for slot, c in other._terms.items():
            out[slot] = out[slot] + c if slot in out else c
        return SpinorPoly(self.bidegree, out)

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return self.map_coefficients(lambda c: -c)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, SpinorPoly):
            out = {}
            for (a1, b1), c1 in self._terms.items():
                for (a2, b2), c2 in other._terms.items():
                    slot = ((a1[0] + a2[0], a1[1] + a2[1]), (b1[0] + b2[0], b1[1] + b2[1]))
                    term = c1 * c2
                    out[slot] = out[slot] + term if slot in out else term
            bidegree = (self.bidegree[0] + other.bidegree[0], self.bidegree[1] + other.bidegree[1])
            return SpinorPoly(bidegree, out)
        return self.map_coefficients(lambda c: c * other)

    def __rmul__(self, other):
        return self.map_coefficients(lambda c: other * c)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = SpinorPoly.unit()
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, SpinorPoly):
            return NotImplemented
        return self.bidegree == other.bidegree and self._terms == other._terms

    def __hash__(self):
        return hash((self.bidegree, frozenset(self._terms)))

    # --- printing ---

    def __str__(self):
        if not self._terms:
            a_total, b_total = self.bidegree
            return f"0*{_monomial_text((a_total, 0), (b_total, 0))}"
        return " + ".join(f"{_monomial_text(a, b)}*({c})" for (a, b), c in self.items())

    def __repr__(self):
        return f"SpinorPoly{self.bidegree}({self})"


def _monomial_text(a, b) -> str:
    parts = [p for p in (format_monomial(b, "wb", offset=1), format_monomial(a, "w", offset=1)) if p]
    return "*".join(parts) if parts else "w1^0"


def apply_spinor_operator(op: SpinorPoly, target: SpinorPoly) -> SpinorPoly:
    """Apply an operator-valued spinor polynomial: slots multiply, coefficients act."""
    out = {}
    for (a1, b1), D in op.terms.items():
        for (a2, b2), P in target.terms.items():
            slot = ((a1[0] + a2[0], a1[1] + a2[1]), (b1[0] + b2[0], b1[1] + b2[1]))
            term = D.apply(P)
            out[slot] = out[slot] + term if slot in out else term
    bidegree = (op.bidegree[0] + target.bidegree[0], op.bidegree[1] + target.bidegree[1])
    return SpinorPoly(bidegree, out)


# === COVARIANTS ===

def x_tilde(varspace: VarSpace = VarSpace.POSITION) -> tuple[tuple[Poly, Poly], tuple[Poly, Poly]]:
    x = [Poly.var(k, 4, varspace) for k in range(4)]
    return (
        (x[0] - x[3], -x[1] + x[2].scale(I)),
        (-x[1] - x[2].scale(I), x[0] + x[3]),
    )


def _linear_spinor(matrix) -> SpinorPoly:
    return SpinorPoly(
        (1, 1),
        {(_E[sigma], _E[rho]): matrix[rho][sigma] for rho in (0, 1) for sigma in (0, 1)},
    )


@lru_cache(maxsize=None)
def covariant_poly(s2: int, varspace: VarSpace = VarSpace.POSITION) -> SpinorPoly:
    """(wb x~ w)^s2; every coefficient is homogeneous of degree s2."""
    if s2 < 0:
        raise ParameterError(f"[Spinor] ERROR: s2 must be >= 0, got {s2}")
    base = _linear_spinor(x_tilde(varspace))
    result = SpinorPoly.unit(Poly.const(1, 4, varspace))
    for _ in range(s2):
        result = result * base
    return result


@lru_cache(maxsize=None)
def d_tilde() -> SpinorPoly:
    """(wb d~ w) with contravariant derivatives (d_p0, -d_p1, -d_p2, -d_p3)."""
    space = VarSpace.MOMENTUM

    def d(axis, coeff=1):
        return DiffOp.partial(MultiIndex.unit(4, axis), space, coeff)

    matrix = (
        (d(0) + d(3), d(1) + d(2, -I)),
        (d(1) + d(2, I), d(0) - d(3)),
    )
    return _linear_spinor(matrix)


def check_covariant_identities() -> Report:
    report = Report("identities", {"d_tilde": "contravariant (d0, -d1, -d2, -d3)"})
    p2 = minkowski_square(VarSpace.MOMENTUM)
    p_cov = covariant_poly(1, VarSpace.MOMENTUM)
    D = d_tilde()
    report.add(
        "(wb d~ w) p^2 = 2 (wb p~ w)",
        p_cov.map_coefficients(lambda c: c.scale(2)),
        apply_spinor_operator(D, SpinorPoly.unit(p2)),
    )
    report.add("(wb d~ w)(wb p~ w) = 0", SpinorPoly((2, 2)), apply_spinor_operator(D, p_cov))
    report.add(
        "(wb d~ w) 1 = 0",
        SpinorPoly((1, 1)),
        apply_spinor_operator(D, SpinorPoly.unit(Poly.const(1, 4, VarSpace.MOMENTUM))),
    )
    return report


def kernel_apply(s2: int, l: int) -> SpinorPoly:
    """(wb d~ w)^s2 applied to (p^2)^l."""
    if s2 < 1 or l < 0:
        raise ParameterError(f"[Spinor] ERROR: kernel check needs s2 >= 1 and l >= 0, got {s2}, {l}")
    target = SpinorPoly.unit(minkowski_square(VarSpace.MOMENTUM) ** l)
    D = d_tilde()
    for _ in range(s2):
        target = apply_spinor_operator(D, target)
    return target


def kernel_test(s2: int, l: int) -> bool:
    """True iff (wb d~ w)^s2 (p^2)^l vanishes, i.e. iff l <= s2 - 1."""
    return kernel_apply(s2, l).is_zero()


def make_covariant(v: DeltaExpansion, s2: int) -> SpinorPoly:
    """w = (wb x~ w)^s2 v, slot by slot."""
    if v.dim != 4:
        raise ParameterError("[Spinor] ERROR: covariants need a four-dimensional expansion")
    cov = covariant_poly(s2, VarSpace.POSITION)
    return SpinorPoly(cov.bidegree, {slot: mul_poly(c, v) for slot, c in cov.terms.items()})


def _grade(w: SpinorPoly, m: int) -> SpinorPoly:
    return w.map_coefficients(lambda c: c.order_component(m))


def extract_invariant(w: SpinorPoly, s2: int) -> tuple[DeltaExpansion, list[int]]:
    """
    Invariant v = sum_l c_l box^l delta with make_covariant(v, s2) = w.

    box^l delta contributes to grade 2l - s2 only, and vanishes for l < s2;
    those orders 2l are returned as the ambiguity and get coefficient 0.
    """
    if w.bidegree != (s2, s2):
        raise ParameterError(f"[Spinor] ERROR: expected bidegree {(s2, s2)}, got {w.bidegree}")
    if any(not isinstance(c, DeltaExpansion) for c in w.terms.values()):
        raise ParameterError("[Spinor] ERROR: extract_invariant needs delta-expansion coefficients")
    grades = sorted({m for c in w.terms.values() for m in c.orders()})
    v = DeltaExpansion.zero(4)
    for m in grades:
        l2 = m + s2
        if l2 % 2 or l2 // 2 < s2:
            raise InconsistentSystemError(
                f"[Spinor] ERROR: grade {m} cannot come from an invariant functional", m
            )
        l = l2 // 2
        column = make_covariant(box_power(l), s2)
        target = _grade(w, m)
        slot, col_coeff = column.items()[0]
        kappa, col_value = col_coeff.items()[0]
        given = target.coefficient(*slot)
        c = (given.terms.get(kappa, Scalar(0)) if given is not None else Scalar(0)) / col_value
        if column.map_coefficients(lambda x: x.scale(c)) != target:
            raise InconsistentSystemError(
                f"[Spinor] ERROR: grade {m} is not a multiple of the box^{l} delta covariant", m
            )
        v = v + box_power(l).scale(c)
        logger.debug(f"[Spinor] grade {m}: box^{l} delta coefficient {c}")
    return v, [2 * l for l in range(s2)]


# === REPRESENTATION BOOKKEEPING ===

@dataclass(frozen=True, order=True)
class RepLabel:
    r2: int
    s2: int

    def __post_init__(self):
        if self.r2 < 0 or self.s2 < 0:
            raise ParameterError(f"[Spinor] ERROR: doubled spins must be >= 0, got ({self.r2}, {self.s2})")

    def __str__(self):
        return f"({Fraction(self.r2, 2)},{Fraction(self.s2, 2)})"


def cg_decompose(rep: RepLabel) -> list[RepLabel]:
    """Irreducible content of (r,s) x (s,r): both labels run over |r-s|, |r-s|+1, ..., r+s."""
    values = range(abs(rep.r2 - rep.s2), rep.r2 + rep.s2 + 1, 2)
    return [RepLabel(a, b) for a in values for b in values]


def diagonal_count(labels) -> int:
    return sum(1 for label in labels if label.r2 == label.s2)


def cg_covariant_degrees(rep: RepLabel) -> tuple[list[int], str]:
    """Degrees 2s' of the (s',s') covariants in the series and their common parity."""
    degrees = [label.s2 for label in cg_decompose(rep) if label.r2 == label.s2]
    parity = "even" if (rep.r2 + rep.s2) % 2 == 0 else "odd"
    return degrees, parity


def reflection_parity(s2_prime: int) -> int:
    """Sign of the (s',s') covariant under p -> -p, found by substitution."""
    cov = covariant_poly(s2_prime, VarSpace.MOMENTUM)
    minus_identity = MatrixQ.identity(4).scale(-1)
    flipped = cov.map_coefficients(lambda c: substitute_linear(c, minus_identity))
    if flipped == cov:
        return 1
    if flipped == -cov:
        return -1
    raise ParameterError(f"[Spinor] ERROR: covariant of degree {s2_prime} has no definite parity")


# === SL(2,C) ===

def _as_2x2(A) -> MatrixQ:
    M = A if isinstance(A, MatrixQ) else MatrixQ(A)
    if M.shape != (2, 2):
        raise ParameterError(f"[Spinor] ERROR: expected a 2x2 matrix, got {M.shape}")
    if M.det() != ONE:
        raise DeterminantError(f"[Spinor] ERROR: det A = {M.det()}, expected 1")
    return M


@lru_cache(maxsize=None)
def _tilde_units() -> tuple[MatrixQ, ...]:
    """x~ evaluated at the unit vectors e_0..e_3."""
    return (
        MatrixQ([[1, 0], [0, 1]]),
        MatrixQ([[0, -1], [-1, 0]]),
        MatrixQ([[0, I], [-I, 0]]),
        MatrixQ([[-1, 0], [0, 1]]),
    )


def _decode(M: MatrixQ) -> list[Scalar]:
    """Inverse of x -> x~ on Hermitian 2x2 matrices."""
    half = Scalar(Fraction(1, 2))
    return [
        (M[0, 0] + M[1, 1]) * half,
        -(M[0, 1] + M[1, 0]) * half,
        (M[0, 1] - M[1, 0]) / (I * 2),
        (M[1, 1] - M[0, 0]) * half,
    ]


def sl2_to_lorentz(A) -> MatrixQ:
    """The real Lambda(A) with x~(Lambda x) = A x~ A^dagger."""
    A = _as_2x2(A)
    adj = A.adjoint()
    columns = [_decode(A @ unit @ adj) for unit in _tilde_units()]
    Lam = MatrixQ.from_columns(columns, 4)
    if not Lam.is_real():
        raise ParameterError("[Spinor] ERROR: A x~ A^dagger left the Hermitian matrices")
    return Lam


def minkowski_metric() -> MatrixQ:
    return MatrixQ([[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]])


def lorentz_form_check(Lam: MatrixQ) -> bool:
    eta = minkowski_metric()
    return Lam.transpose() @ eta @ Lam == eta


def covariance_check(A) -> Report:
    """Invariance of the degree-1 covariant under x -> Lambda x and the dual spinor action."""
    A = _as_2x2(A)
    Lam = sl2_to_lorentz(A)
    C = A.adjoint().inverse()
    Cbar = C.conjugate()
    X = x_tilde(VarSpace.POSITION)
    moved = [[substitute_linear(X[r][s], Lam) for s in (0, 1)] for r in (0, 1)]
    report = Report("covariance", {"A": str(A), "convention": SPINOR_CONVENTION})
    report.results = {"lambda": Lam.to_strings()}
    report.add("Lambda real", True, Lam.is_real())
    report.add("Lambda^T eta Lambda = eta", True, lorentz_form_check(Lam))
    for r2 in (0, 1):
        for s2 in (0, 1):
            total = Poly.zero(4, VarSpace.POSITION)
            for r in (0, 1):
                for s in (0, 1):
                    factor = Cbar[r, r2] * C[s, s2]
                    if factor:
                        total = total + moved[r][s].scale(factor)
            report.add(f"slot wb{r2 + 1} w{s2 + 1} invariant", X[r2][s2], total)
    return report
