"""
lorentzkit/split.py

Decomposition of a Lorentz-invariant delta expansion into a difference of
Lorentz-invariant functionals: the rotation-invariant spaces F_n and G_n,
the matrix of the boost N_1 between them and its exact inverse, the solver
for N_1 v = u, the end-to-end completion pipeline, and the two-dimensional
obstruction.

All computations run on Fourier images (momentum polynomials).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod

from .algebra import Poly, Scalar, VarSpace, apply_diffop, monomials_of_degree
from .delta import DeltaExpansion, fourier, fourier_inv
from .errors import (
    ConditionError,
    InvarianceError,
    NonHomogeneousError,
    NotInSpanError,
    ParameterError,
    VarSpaceError,
)
from .harmonic import double_factorial, so3_project, spatial_square_power
from .linalg import MatrixQ, PolyBasis
from .logger import logger
from .lorentz import boost, casimir, invariance_violations, minkowski_square, rotation
from .metrics import inc_solve
from .report import Check, Report

MOMENTUM = VarSpace.MOMENTUM


def _p(axis: int) -> Poly:
    return Poly.var(axis, 4, MOMENTUM)


# === BASES ===

@lru_cache(maxsize=None)
def basis_F(n: int) -> tuple[Poly, ...]:
    """p0^(n-2k) |p|^(2k), k = 0..n//2."""
    if n < 0:
        raise ParameterError(f"[Split] ERROR: degree must be >= 0, got {n}")
    return tuple(_p(0) ** (n - 2 * k) * spatial_square_power(k) for k in range(n // 2 + 1))


@lru_cache(maxsize=None)
def basis_G(n: int) -> tuple[Poly, ...]:
    """p0^(n-2k-1) |p|^(2k) p1, k = 0..(n-1)//2."""
    if n < 1:
        raise ParameterError(f"[Split] ERROR: G_n needs n >= 1, got {n}")
    return tuple(
        _p(0) ** (n - 2 * k - 1) * spatial_square_power(k) * _p(1) for k in range((n - 1) // 2 + 1)
    )


@lru_cache(maxsize=None)
def _g_coordinates(n: int) -> PolyBasis:
    return PolyBasis(basis_G(n))


# === BOOST MATRIX ===

@lru_cache(maxsize=None)
def boost_matrix(n: int) -> MatrixQ:
    """Matrix of N_1 from basis_F(n) (columns) to basis_G(n) (rows)."""
    if n < 1:
        raise ParameterError(f"[Split] ERROR: boost matrix needs n >= 1, got {n}")
    N1 = boost(1, MOMENTUM)
    columns = [_g_coordinates(n).coordinates(apply_diffop(N1, f)) for f in basis_F(n)]
    return MatrixQ.from_columns(columns, len(basis_G(n)))


def closed_form_boost_matrix(n: int) -> MatrixQ:
    """a_kk = n - 2k, a_k,k+1 = 2(k+1), zero elsewhere."""
    rows = (n - 1) // 2 + 1
    cols = n // 2 + 1
    entries = [[0] * cols for _ in range(rows)]
    for k in range(rows):
        entries[k][k] = n - 2 * k
        if k + 1 < cols:
            entries[k][k + 1] = 2 * (k + 1)
    return MatrixQ(entries, cols)


def restricted_columns(n: int) -> list[int]:
    """All F columns for odd n; for even n the first n/2, dropping |p|^n."""
    size = (n - 1) // 2 + 1
    return list(range(size))


@lru_cache(maxsize=None)
def restricted_inverse(n: int) -> MatrixQ:
    A = boost_matrix(n)
    square = A.submatrix(range(A.nrows), restricted_columns(n))
    return square.inverse()


def boost_inverse_closed_form(n: int, k: int, l: int) -> Fraction:
    """
    Entry (k, l) of the inverse of the square bidiagonal boost matrix:
    (-1)^(l-k) prod_{j=k}^{l-1} 2(j+1) / prod_{j=k}^{l} (n-2j), zero below the diagonal.
    """
    if l < k:
        return Fraction(0)
    numerator = prod(2 * (j + 1) for j in range(k, l))
    denominator = prod(n - 2 * j for j in range(k, l + 1))
    return Fraction((-1) ** (l - k) * numerator, denominator)


def last_column_closed_form(n: int, k: int) -> Fraction:
    """|a^-1_{k,last}|: (n-1)!!/((n-2k)!!(2k)!!) for odd n, (n-2)!!/(...) for even n."""
    top = n - 1 if n % 2 else n - 2
    return Fraction(double_factorial(top), double_factorial(n - 2 * k) * double_factorial(2 * k))


def kernel_direction(n: int) -> Poly | None:
    """Kernel of N_1 on F_n: (p0^2 - |p|^2)^(n/2) for even n, nothing for odd n."""
    if n % 2:
        return None
    return minkowski_square(MOMENTUM) ** (n // 2)


# === REPORTS ===

def _format_list(values) -> str:
    return "[" + ", ".join(str(v) for v in values) + "]"


@dataclass
class SplitReport:
    n: int
    matrix: MatrixQ | None = None
    restricted_inverse: MatrixQ | None = None
    max_abs_entry: Fraction | None = None
    closed_form_column: list = field(default_factory=list)
    kernel: Poly | None = None
    solution: Poly | None = None
    ratio: Fraction | float | None = None
    residual: Poly | None = None
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name, expected, computed, passed=None):
        if passed is None:
            passed = expected == computed
        self.checks.append(Check(name, str(expected), str(computed), bool(passed)))

    def results(self) -> dict:
        out = {"n": self.n}
        if self.matrix is not None:
            out["matrix"] = self.matrix.to_strings()
        if self.restricted_inverse is not None:
            out["restricted_inverse"] = self.restricted_inverse.to_strings()
        if self.max_abs_entry is not None:
            out["max_abs_entry"] = str(self.max_abs_entry)
        if self.closed_form_column:
            out["closed_form_column"] = [str(v) for v in self.closed_form_column]
        if self.kernel is not None:
            out["kernel"] = str(self.kernel)
        if self.solution is not None:
            out["solution"] = str(self.solution)
        if self.ratio is not None:
            out["ratio"] = str(self.ratio)
        return out


def inverse_bound_check(n: int) -> SplitReport:
    """
    Exact inverse of the (restricted) boost matrix against its closed forms.

    Checks the full inverse entry by entry, the last-column double-factorial
    formula, growth along diagonals (|a^-1_{k+1,l+1}| > |a^-1_{k,l}|), that the
    maximum sits in the last column, and max|a^-1| <= 2^(n/2).
    """
    if n < 1:
        raise ParameterError(f"[Split] ERROR: inverse_bound_check needs n >= 1, got {n}")
    A = boost_matrix(n)
    inv = restricted_inverse(n)
    size = inv.nrows
    report = SplitReport(n=n, matrix=A, restricted_inverse=inv)
    report.add(f"n={n}: matrix matches closed form", closed_form_boost_matrix(n), A)

    closed = MatrixQ(
        [[boost_inverse_closed_form(n, k, l) for l in range(size)] for k in range(size)], size
    )
    report.add(f"n={n}: inverse matches bidiagonal closed form", closed, inv)

    last = size - 1
    column = [abs(inv[k, last].re) for k in range(size)]
    report.closed_form_column = [last_column_closed_form(n, k) for k in range(size)]
    report.add(
        f"n={n}: last column double-factorial form",
        _format_list(report.closed_form_column),
        _format_list(column),
        report.closed_form_column == column,
    )

    diagonal_growth = all(
        abs(inv[k + 1, l + 1].re) > abs(inv[k, l].re)
        for k in range(size - 1)
        for l in range(k, size - 1)
    )
    report.add(f"n={n}: entries grow along diagonals", True, diagonal_growth)

    report.max_abs_entry = inv.max_abs_entry()
    report.add(f"n={n}: maximum lies in the last column", report.max_abs_entry, max(column))
    within = report.max_abs_entry ** 2 <= 2**n
    report.add(f"n={n}: max |a^-1| <= 2^(n/2)", f"<= 2^({n}/2)", report.max_abs_entry, within)

    if n % 2 == 0:
        report.kernel = kernel_direction(n)
        report.add(
            f"n={n}: (p^2)^(n/2) spans the kernel",
            Poly.zero(4, MOMENTUM),
            apply_diffop(boost(1, MOMENTUM), report.kernel),
        )
    logger.debug(f"[Split] inverse bound n={n}: max={report.max_abs_entry}")
    return report


# === SOLVER ===

def _check_rhs(u: Poly, n: int):
    if u.dim != 4 or u.varspace is not MOMENTUM:
        raise VarSpaceError("[Split] ERROR: right-hand side must be a 4D momentum polynomial")
    if n < 1:
        raise ParameterError(f"[Split] ERROR: boost equation needs n >= 1, got {n}")
    if u and (not u.is_homogeneous() or u.degree() != n):
        raise NonHomogeneousError(f"[Split] ERROR: right-hand side is not homogeneous of degree {n}")


def solve_boost_equation(u: Poly, n: int) -> Poly:
    """
    Rotation-invariant v0 with N_1 v0 = u.

    u must lie in span(basis_G(n)), be an eigenvector of the Casimir with
    eigenvalue 2 and be annihilated by M_23. For even n the |p|^n coefficient
    of v0 is zero.
    """
    _check_rhs(u, n)
    coords = _g_coordinates(n).coordinates(u)
    if apply_diffop(casimir(MOMENTUM), u) != u.scale(2):
        raise ConditionError(f"[Split] ERROR: degree {n}: right-hand side is not a Casimir eigenvector for 2")
    if apply_diffop(rotation(2, 3, MOMENTUM), u):
        raise ConditionError(f"[Split] ERROR: degree {n}: right-hand side is not invariant under M23")
    solution = restricted_inverse(n).apply(coords)
    F = basis_F(n)
    v0 = Poly.zero(4, MOMENTUM)
    for c, f in zip(solution, F):
        if c:
            v0 = v0 + f.scale(c)
    inc_solve()
    return v0


def _max_abs(P: Poly):
    top = P.max_abs2()
    if P.is_real():
        return max((abs(c.re) for c in P.terms.values()), default=Fraction(0))
    return float(top) ** 0.5


def coefficient_bound_check(u: Poly, n: int) -> SplitReport:
    """max|coefficient of v0| <= 6^(n/2) max|coefficient of u|."""
    v0 = solve_boost_equation(u, n)
    residual = apply_diffop(boost(1, MOMENTUM), v0) - u
    report = SplitReport(n=n, solution=v0, residual=residual)
    report.add(f"n={n}: residual N1 v0 - u", Poly.zero(4, MOMENTUM), residual)
    if u.is_zero():
        report.ratio = Fraction(0)
        report.add(f"n={n}: coefficient ratio <= 6^(n/2)", f"<= 6^({n}/2)", report.ratio, True)
        return report
    bound_sq = Fraction(6) ** n
    within = v0.max_abs2() <= bound_sq * u.max_abs2()
    top_u = _max_abs(u)
    report.ratio = _max_abs(v0) / top_u
    report.add(f"n={n}: coefficient ratio <= 6^(n/2)", f"<= 6^({n}/2)", report.ratio, within)
    return report


# === INVARIANT COMPLETION ===

def invariant_completion(v_plus: DeltaExpansion, v_minus: DeltaExpansion) -> tuple[DeltaExpansion, DeltaExpansion]:
    """
    Replace (v_plus, v_minus) by Lorentz-invariant (w_plus, w_minus) with the same difference.

    Per degree n: average both Fourier images over SO(3), form u = N_1 of the
    averaged v_plus, solve N_1 v0 = u inside F_n and subtract v0 from both.
    """
    if v_plus.dim != 4 or v_minus.dim != 4:
        raise ParameterError("[Split] ERROR: invariant completion works in four dimensions")
    difference = fourier(v_plus - v_minus)
    violations = invariance_violations(difference)
    if violations:
        label, degree = violations[0]
        raise InvarianceError(
            f"[Split] ERROR: the difference is not Lorentz invariant ({label} fails at degree {degree})",
            label,
            degree,
        )
    plus_parts = fourier(v_plus).homogeneous_components()
    minus_parts = fourier(v_minus).homogeneous_components()
    N1 = boost(1, MOMENTUM)
    w_plus = Poly.zero(4, MOMENTUM)
    w_minus = Poly.zero(4, MOMENTUM)
    for n in sorted(set(plus_parts) | set(minus_parts)):
        avg_plus = so3_project(plus_parts.get(n, Poly.zero(4, MOMENTUM)))
        avg_minus = so3_project(minus_parts.get(n, Poly.zero(4, MOMENTUM)))
        if n == 0:
            w_plus, w_minus = w_plus + avg_plus, w_minus + avg_minus
            continue
        u = apply_diffop(N1, avg_plus)
        v0 = solve_boost_equation(u, n)
        w_plus = w_plus + (avg_plus - v0)
        w_minus = w_minus + (avg_minus - v0)
        logger.debug(f"[Split] degree {n}: removed {len(v0)} term(s)")
    for name, W in (("w_plus", w_plus), ("w_minus", w_minus)):
        bad = invariance_violations(W)
        if bad:
            raise ConditionError(f"[Split] ERROR: {name} is not invariant ({bad[0][0]} at degree {bad[0][1]})")
    return fourier_inv(w_plus), fourier_inv(w_minus)


def completion_report(v_plus: DeltaExpansion, v_minus: DeltaExpansion) -> Report:
    w_plus, w_minus = invariant_completion(v_plus, v_minus)
    report = Report("split", {"plus": str(v_plus), "minus": str(v_minus)})
    report.results = {"w_plus": str(w_plus), "w_minus": str(w_minus)}
    report.add("difference preserved", v_plus - v_minus, w_plus - w_minus)
    report.add("w_plus invariant", [], invariance_violations(fourier(w_plus)))
    report.add("w_minus invariant", [], invariance_violations(fourier(w_minus)))
    return report


# === TWO-DIMENSIONAL OBSTRUCTION ===

def boost_matrix_2d(n: int) -> MatrixQ:
    """N_1 = p1 d0 + p0 d1 on degree-n polynomials in (p0, p1), monomial basis p0^(n-j) p1^j."""
    monomials = monomials_of_degree(2, n)
    index = {m: i for i, m in enumerate(monomials)}
    N1 = boost(1, MOMENTUM, dim=2)
    entries = [[0] * len(monomials) for _ in monomials]
    for j, m in enumerate(monomials):
        for k, c in apply_diffop(N1, Poly.monomial(m, MOMENTUM)).terms.items():
            entries[index[k]][j] = c
    return MatrixQ(entries, len(monomials))


def cokernel_2d(n: int) -> list[Poly]:
    """
    Cokernel of N_1 on degree-n polynomials in two dimensions.

    A left-nullspace vector y is returned as the polynomial sum y_k p^k / k!,
    the functional it represents under the Fischer pairing, normalized so the
    leading coefficient is 1.
    """
    if n < 0:
        raise ParameterError(f"[Split] ERROR: degree must be >= 0, got {n}")
    monomials = monomials_of_degree(2, n)
    out = []
    for y in boost_matrix_2d(n).left_nullspace():
        terms = {m: c / prod(factorial(e) for e in m) for m, c in zip(monomials, y) if c}
        P = Poly(2, MOMENTUM, terms)
        lead = P.items()[0][1]
        out.append(P.scale(lead.inverse()))
    return out


def constant_in_image_2d() -> bool:
    """Whether the Fourier image of delta (the constant 1) is in the image of N_1 in 2D."""
    A = boost_matrix_2d(0)
    try:
        A.solve([Scalar(1)])
    except NotInSpanError:
        return False
    return True
