"""
lorentzkit/taylor.py

Polynomial division by a coordinate, the jet-vanishing decomposition
f = sum_i x_i^(m+1) f_i, and the rewrite of f through powers of the
entries of x~.

Variables are 0-based: x_0 .. x_(n-1). The recursion processes x_0 first,
so outputs are deterministic.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .algebra import I, MultiIndex, Poly, differentiate, substitute_linear
from .errors import DivisionPreconditionError, JetConditionError, ParameterError
from .linalg import MatrixQ
from .logger import logger
from .spinor import x_tilde

ENTRIES = ((1, 1), (1, 2), (2, 1), (2, 2))

_HALF = Fraction(1, 2)
# y = T x with y = (x~_11, x~_12, x~_21, x~_22)
_TO_ENTRIES = MatrixQ([
    [1, 0, 0, -1],
    [0, -1, I, 0],
    [0, -1, -I, 0],
    [1, 0, 0, 1],
])
_FROM_ENTRIES = MatrixQ([
    [_HALF, 0, 0, _HALF],
    [0, -_HALF, -_HALF, 0],
    [0, -I * _HALF, I * _HALF, 0],
    [-_HALF, 0, 0, _HALF],
])


def restrict(f: Poly, i: int) -> Poly:
    """f with x_i set to 0."""
    _check_axis(f, i)
    return Poly(f.dim, f.varspace, {k: c for k, c in f.terms.items() if not k[i]})


def _check_axis(f: Poly, i: int):
    if not 0 <= i < f.dim:
        raise ParameterError(f"[Taylor] ERROR: variable {i} outside 0..{f.dim - 1}")


def divide_by_coordinate(f: Poly, i: int) -> Poly:
    """f1 with x_i * f1 = f; needs f to vanish on x_i = 0."""
    _check_axis(f, i)
    for k, _ in f.items():
        if not k[i]:
            raise DivisionPreconditionError(
                f"[Taylor] ERROR: f does not vanish on x{i} = 0 (monomial {k})", MultiIndex(k)
            )
    return Poly(
        f.dim,
        f.varspace,
        {k[:i] + (k[i] - 1,) + k[i + 1:]: c for k, c in f.terms.items()},
    )


# === JET DECOMPOSITION ===

@dataclass(frozen=True)
class JetStep:
    variable: int
    j: int
    g_terms: int


@dataclass(frozen=True)
class DecompositionResult:
    parts: tuple
    m: int
    steps: tuple = field(default=(), compare=False)

    def reconstruct(self) -> Poly:
        if not self.parts:
            raise ParameterError("[Taylor] ERROR: empty decomposition")
        first = self.parts[0]
        total = Poly.zero(first.dim, first.varspace)
        for i, f_i in enumerate(self.parts):
            total = total + Poly.var(i, first.dim, first.varspace) ** (self.m + 1) * f_i
        return total


def check_jet(f: Poly, bound: int):
    """Raise JetConditionError for the lowest monomial of degree <= bound."""
    low = [k for k in f.terms if sum(k) <= bound]
    if low:
        kappa = min(low, key=lambda k: (sum(k), tuple(-e for e in k)))
        raise JetConditionError(
            f"[Taylor] ERROR: derivative {kappa} of f at 0 is nonzero, needs |kappa| > {bound}",
            MultiIndex(kappa),
        )


def _recurse(f: Poly, m: int, var: int, multiplier: Poly, parts: list, steps: list):
    if f.is_zero():
        return
    if var == f.dim:
        check_jet(multiplier * f, m * f.dim)
        return
    x = Poly.var(var, f.dim, f.varspace)
    remainder = f
    for j in range(m + 1):
        g_j = restrict(differentiate(f, MultiIndex.unit(f.dim, var, j)), var) / factorial(j)
        steps.append(JetStep(var, j, len(g_j)))
        remainder = remainder - x ** j * g_j
        _recurse(g_j, m, var + 1, multiplier * x ** j, parts, steps)
    for _ in range(m + 1):
        remainder = divide_by_coordinate(remainder, var) if remainder else remainder
    parts[var] = parts[var] + multiplier * remainder


def jet_decompose(f: Poly, m: int) -> DecompositionResult:
    """
    f = sum_i x_i^(m+1) f_i, for f whose derivatives of order <= m*n vanish at 0.

    Each level splits off g_j = (1/j!) d_i^j f |_(x_i = 0) for j <= m and
    recurses on g_j in the remaining variables; the rest is divisible by
    x_i^(m+1).
    """
    if m < 0:
        raise ParameterError(f"[Taylor] ERROR: m must be >= 0, got {m}")
    check_jet(f, m * f.dim)
    parts = [Poly.zero(f.dim, f.varspace) for _ in range(f.dim)]
    steps = []
    _recurse(f, m, 0, Poly.const(1, f.dim, f.varspace), parts, steps)
    logger.debug(f"[Taylor] jet decomposition m={m}: {len(steps)} recursion steps")
    return DecompositionResult(tuple(parts), m, tuple(steps))


# === ENTRY SPLIT ===

@dataclass(frozen=True)
class MatrixSplit:
    s2: int
    parts: dict
    route: str
    decomposition: DecompositionResult | None = None

    def entries(self) -> dict:
        f = next(iter(self.parts.values()))
        X = x_tilde(f.varspace)
        return {(r, s): X[r - 1][s - 1] for r, s in ENTRIES}

    def reconstruct(self) -> Poly:
        entries = self.entries()
        total = None
        for key, part in self.parts.items():
            term = entries[key] ** self.s2 * part
            total = term if total is None else total + term
        return total


def _assign(g: Poly, s2: int, acc: dict):
    """Add the entry-coordinate monomials of g to the first entry with exponent >= s2."""
    for k, c in substitute_entries(g).terms.items():
        for idx, e in enumerate(k):
            if e >= s2:
                key = k[:idx] + (e - s2,) + k[idx + 1:]
                acc[idx][key] = acc[idx].get(key, 0) + c
                break
        else:
            raise JetConditionError(
                f"[Taylor] ERROR: entry monomial {k} has no exponent >= {s2}", MultiIndex(k)
            )


def substitute_entries(f: Poly) -> Poly:
    """f rewritten as a polynomial in (x~_11, x~_12, x~_21, x~_22)."""
    return substitute_linear(f, _FROM_ENTRIES)


def _assign_binomial(i: int, s2: int, f_i: Poly, parts: dict):
    """Expand x_i^(2 s2) through its two entries and give each term to the entry carrying exponent >= s2."""
    (a_idx, a), (b_idx, b) = [(j, c) for j, c in enumerate(_FROM_ENTRIES[i]) if c]
    X = x_tilde(f_i.varspace)
    y_a = X[ENTRIES[a_idx][0] - 1][ENTRIES[a_idx][1] - 1]
    y_b = X[ENTRIES[b_idx][0] - 1][ENTRIES[b_idx][1] - 1]
    n = 2 * s2
    for k in range(n + 1):
        weight = a ** k * b ** (n - k) * comb(n, k)
        if k >= s2:
            key, rest = ENTRIES[a_idx], y_a ** (k - s2) * y_b ** (n - k)
        else:
            key, rest = ENTRIES[b_idx], y_a ** k * y_b ** (s2 - k)
        parts[key] = parts[key] + rest.scale(weight) * f_i


def sl2_matrix_split(f: Poly, s2: int, route: str | None = None) -> MatrixSplit:
    """
    f = sum_(rho, sigma) x~_(rho sigma)^s2 f_(rho sigma) over the entries of x~.

    route "direct" hands every entry-coordinate monomial of f to its first
    entry with exponent >= s2. Route "jet" first writes f = sum_i x_i^(2 s2) f_i
    and expands each x_i^(2 s2) binomially in its two entries. Without a
    route, "jet" is used when f vanishes beyond order 4 (2 s2 - 1).
    """
    if f.dim != 4:
        raise ParameterError("[Taylor] ERROR: the entry split needs four variables")
    if s2 < 1:
        raise ParameterError(f"[Taylor] ERROR: s2 must be >= 1, got {s2}")
    if route is None:
        route = "jet" if f and not any(sum(k) <= 4 * (2 * s2 - 1) for k in f.terms) else "direct"
    decomposition = None
    if route == "jet":
        decomposition = jet_decompose(f, 2 * s2 - 1)
        parts = {key: Poly.zero(4, f.varspace) for key in ENTRIES}
        for i, f_i in enumerate(decomposition.parts):
            if f_i:
                _assign_binomial(i, s2, f_i, parts)
    elif route == "direct":
        acc = [{} for _ in ENTRIES]
        _assign(f, s2, acc)
        parts = {
            key: substitute_linear(Poly(4, f.varspace, terms), _TO_ENTRIES)
            for key, terms in zip(ENTRIES, acc)
        }
    else:
        raise ParameterError(f"[Taylor] ERROR: unknown split route {route!r}")
    logger.debug(f"[Taylor] entry split s2={s2} via {route}")
    return MatrixSplit(s2, parts, route, decomposition)
