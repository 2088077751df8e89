"""
lorentzkit/linalg.py

Exact linear algebra over the complex rationals.

MatrixQ keeps its entries as Scalars and hands every elimination to a sympy
DomainMatrix: over QQ when all entries are real, over QQ_I otherwise.
"""

from fractions import Fraction

from sympy.polys.domains import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from .algebra import ONE, ZERO, Poly, Scalar, to_fraction
from .errors import DeterminantError, DimensionMismatchError, NotInSpanError, ParameterError
from .logger import logger

# === DOMAIN CONVERSION ===


def _domain_for(rows):
    return QQ if all(v.is_real() for row in rows for v in row) else QQ_I


def _to_domain(v: Scalar, K):
    return v.value.x if K == QQ else v.value


def _from_domain(v, K) -> Scalar:
    return Scalar(to_fraction(v)) if K == QQ else Scalar.wrap(v)


def _domain_matrix(rows, shape, K) -> DomainMatrix:
    return DomainMatrix([[_to_domain(v, K) for v in row] for row in rows], shape, K)


def _from_domain_matrix(dm: DomainMatrix) -> "MatrixQ":
    K = dm.domain
    _, ncols = dm.shape
    return MatrixQ([[_from_domain(v, K) for v in row] for row in dm.to_list()], ncols)


# === MATRICES ===

class MatrixQ:
    """Immutable matrix of Scalar entries."""

    __slots__ = ("nrows", "ncols", "rows", "_dm")

    def __init__(self, rows, ncols=None):
        rows = tuple(tuple(Scalar.of(v) for v in row) for row in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatchError("[Linalg] ERROR: ragged matrix rows")
        self.nrows = len(rows)
        self.ncols = ncols
        self.rows = rows
        self._dm = None

    @classmethod
    def identity(cls, n: int) -> "MatrixQ":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "MatrixQ":
        return cls([[ZERO] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def from_columns(cls, columns, nrows: int) -> "MatrixQ":
        columns = [list(c) for c in columns]
        return cls([[col[i] for col in columns] for i in range(nrows)], len(columns))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def domain_matrix(self, domain=None) -> DomainMatrix:
        """The sympy DomainMatrix of this matrix, over QQ or QQ_I unless a domain is given."""
        if domain is not None:
            return _domain_matrix(self.rows, self.shape, domain)
        if self._dm is None:
            self._dm = _domain_matrix(self.rows, self.shape, _domain_for(self.rows))
        return self._dm

    def __getitem__(self, key):
        if isinstance(key, tuple):
            i, j = key
            return self.rows[i][j]
        return self.rows[key]

    def column(self, j: int) -> list:
        return [row[j] for row in self.rows]

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_real(self) -> bool:
        return all(v.is_real() for row in self.rows for v in row)

    # --- structure ---

    def transpose(self) -> "MatrixQ":
        return MatrixQ([[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)], self.nrows)

    def conjugate(self) -> "MatrixQ":
        return MatrixQ([[v.conjugate() for v in row] for row in self.rows], self.ncols)

    def adjoint(self) -> "MatrixQ":
        return self.transpose().conjugate()

    def submatrix(self, row_idx, col_idx) -> "MatrixQ":
        col_idx = list(col_idx)
        return MatrixQ([[self.rows[i][j] for j in col_idx] for i in row_idx], len(col_idx))

    # --- arithmetic ---

    def _pair(self, other: "MatrixQ"):
        K = QQ if self.is_real() and other.is_real() else QQ_I
        return self.domain_matrix(K), other.domain_matrix(K)

    def __matmul__(self, other):
        if not isinstance(other, MatrixQ):
            return NotImplemented
        if self.ncols != other.nrows:
            raise DimensionMismatchError(
                f"[Linalg] ERROR: cannot multiply {self.shape} by {other.shape}"
            )
        A, B = self._pair(other)
        return _from_domain_matrix(A.matmul(B))

    def apply(self, vector) -> list:
        vector = [Scalar.of(v) for v in vector]
        if len(vector) != self.ncols:
            raise DimensionMismatchError("[Linalg] ERROR: vector length does not match columns")
        return (self @ MatrixQ.from_columns([vector], self.ncols)).column(0)

    def __add__(self, other):
        if not isinstance(other, MatrixQ):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionMismatchError("[Linalg] ERROR: matrix shapes differ")
        A, B = self._pair(other)
        return _from_domain_matrix(A + B)

    def __neg__(self):
        return _from_domain_matrix(-self.domain_matrix())

    def __sub__(self, other):
        if not isinstance(other, MatrixQ):
            return NotImplemented
        return self + (-other)

    def scale(self, factor) -> "MatrixQ":
        f = Scalar.of(factor)
        return MatrixQ([[v * f for v in row] for row in self.rows], self.ncols)

    def __eq__(self, other):
        if not isinstance(other, MatrixQ):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    # --- elimination ---

    def rank(self) -> int:
        if not self.nrows or not self.ncols:
            return 0
        return self.domain_matrix().rank()

    def rref(self) -> tuple["MatrixQ", list[int]]:
        """Reduced row echelon form and the pivot columns."""
        if not self.nrows or not self.ncols:
            return self, []
        R, pivots = self.domain_matrix().rref()
        return _from_domain_matrix(R), list(pivots)

    def nullspace(self) -> list[list[Scalar]]:
        """Basis of {x : A x = 0}, one vector per free column in increasing order, 1 at that column."""
        if not self.nrows:
            return [[ONE if i == j else ZERO for i in range(self.ncols)] for j in range(self.ncols)]
        R, pivots = self.rref()
        basis = []
        for free in range(self.ncols):
            if free in pivots:
                continue
            x = [ZERO] * self.ncols
            x[free] = ONE
            for i, pc in enumerate(pivots):
                x[pc] = -R[i, free]
            basis.append(x)
        return basis

    def left_nullspace(self) -> list[list[Scalar]]:
        return self.transpose().nullspace()

    def solve(self, b) -> list[Scalar]:
        """
        A particular solution of A x = b (free variables set to 0).

        Raises NotInSpanError when the system is inconsistent.
        """
        b = [Scalar.of(v) for v in b]
        if len(b) != self.nrows:
            raise DimensionMismatchError("[Linalg] ERROR: right-hand side length does not match rows")
        augmented = MatrixQ([list(row) + [v] for row, v in zip(self.rows, b)], self.ncols + 1)
        R, pivots = augmented.rref()
        if pivots and pivots[-1] == self.ncols:
            raise NotInSpanError("[Linalg] ERROR: linear system is inconsistent")
        x = [ZERO] * self.ncols
        for i, pc in enumerate(pivots):
            x[pc] = R[i, self.ncols]
        return x

    def inverse(self) -> "MatrixQ":
        if not self.is_square():
            raise DimensionMismatchError(f"[Linalg] ERROR: cannot invert a {self.shape} matrix")
        try:
            inv = self.domain_matrix().inv()
        except DMNonInvertibleMatrixError:
            raise DeterminantError("[Linalg] ERROR: matrix is singular") from None
        logger.debug(f"[Linalg] inverted {self.nrows}x{self.nrows} matrix")
        return _from_domain_matrix(inv)

    def det(self) -> Scalar:
        if not self.is_square():
            raise DimensionMismatchError(f"[Linalg] ERROR: determinant of a {self.shape} matrix")
        if not self.nrows:
            return ONE
        dm = self.domain_matrix()
        return _from_domain(dm.det(), dm.domain)

    def max_abs_entry(self) -> Fraction:
        if not self.is_real():
            raise ParameterError("[Linalg] ERROR: max_abs_entry needs a real matrix")
        return max((abs(v.re) for row in self.rows for v in row), default=Fraction(0))

    # --- printing ---

    def to_strings(self) -> list[list[str]]:
        return [[str(v) for v in row] for row in self.rows]

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(r) + "]" for r in self.to_strings()) + "]"

    def __repr__(self):
        return f"MatrixQ({self})"


# === POLYNOMIAL SPANS ===

class PolyBasis:
    """
    Coordinates with respect to linearly independent polynomials.

    The basis is stored as the matrix whose columns are the coefficient
    vectors over the monomials it uses; coordinates come from solving
    against that matrix.
    """

    def __init__(self, polys):
        self.polys = tuple(polys)
        if not self.polys:
            raise ParameterError("[Linalg] ERROR: empty polynomial basis")
        self.dim = self.polys[0].dim
        self.varspace = self.polys[0].varspace
        self.monomials = sorted({k for P in self.polys for k in P.terms}, reverse=True)
        self._row = {k: i for i, k in enumerate(self.monomials)}
        self.matrix = MatrixQ.from_columns(
            [[P.coefficient(k) for k in self.monomials] for P in self.polys], len(self.monomials)
        )
        if self.matrix.rank() < len(self.polys):
            raise ParameterError("[Linalg] ERROR: basis polynomials are linearly dependent")

    def __len__(self):
        return len(self.polys)

    def coordinates(self, P: Poly) -> list[Scalar]:
        if P.dim != self.dim or P.varspace is not self.varspace:
            raise DimensionMismatchError("[Linalg] ERROR: polynomial does not match the basis space")
        outside = [k for k, _ in P.items() if k not in self._row]
        if outside:
            raise NotInSpanError(f"[Linalg] ERROR: monomial {outside[0]} of the target is outside the span")
        return self.matrix.solve([P.coefficient(k) for k in self.monomials])

    def combine(self, coords) -> Poly:
        total = Poly.zero(self.dim, self.varspace)
        for c, P in zip(coords, self.polys):
            c = Scalar.of(c)
            if c:
                total = total + P.scale(c)
        return total
