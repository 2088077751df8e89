"""
lorentzkit/parser.py

Expression grammar and evaluator for the CLI. Parses polynomials in x or p,
delta expansions d[k0,k1,k2,k3], derivative literals D[...] (applied to the
product on their right), covariants cov(s2) and spinor variables w1, w2,
wb1, wb2. Printed values of every type parse back to equal values.

    expr   := term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := '-'? atom ('^' uint)?
    atom   := rational | 'i' | var | 'd[' uint,... ']' | 'D[' uint,... ']'
            | 'cov(' uint ')' | '(' expr ')'
"""

import re
import threading
from fractions import Fraction
from typing import Any, NamedTuple

from arpeggio import EOF, NoMatch, Optional, ParserPython, PTNodeVisitor, ZeroOrMore, visit_parse_tree
from arpeggio import RegExMatch as _

from .algebra import I, ONE, Poly, Scalar, VarSpace, differentiate
from .delta import DeltaExpansion, derivative
from .errors import ParseError, VarSpaceError
from .spinor import SpinorPoly, covariant_poly

_PARSER_LOCK = threading.Lock()
_PARSER = None

_POSITION_VAR = re.compile(r"(?<![A-Za-z0-9_])x\d")
_MOMENTUM_VAR = re.compile(r"(?<![A-Za-z0-9_])p\d")


# === GRAMMAR ===

def uint():
    return _(r"\d+")


def rational():
    return _(r"\d+(/\d+)?")


def imag():
    return _(r"i(?![A-Za-z0-9_])")


def variable():
    return _(r"(wb|[xpw])\d+")


def delta_literal():
    return _(r"d\["), uint, ZeroOrMore(",", uint), "]"


def deriv_literal():
    return _(r"D\["), uint, ZeroOrMore(",", uint), "]"


def cov_literal():
    return _(r"cov\("), uint, ")"


def group():
    return "(", expr, ")"


def atom():
    return [delta_literal, deriv_literal, cov_literal, rational, imag, variable, group]


def power():
    return atom, Optional("^", uint)


def sign():
    return _(r"-")


def factor():
    return Optional(sign), power


def term():
    return factor, ZeroOrMore("*", factor)


def addop():
    return _(r"[+-]")


def expr():
    return term, ZeroOrMore(addop, term)


def root():
    return expr, EOF


def _get_parser() -> ParserPython:
    global _PARSER
    with _PARSER_LOCK:
        if _PARSER is None:
            _PARSER = ParserPython(root, ignore_case=False)
    return _PARSER


# === EVALUATION ===

class _Tok(NamedTuple):
    kind: str
    value: Any
    position: int


def _toks(children) -> list[_Tok]:
    return [c for c in children if isinstance(c, _Tok)]


class ExpressionVisitor(PTNodeVisitor):
    """Evaluates the parse tree bottom-up into Scalar/Poly/DeltaExpansion/SpinorPoly values."""

    def __init__(self, parser, varspace: VarSpace, **kwargs):
        super().__init__(**kwargs)
        self.parser = parser
        self.varspace = varspace

    def _error(self, message: str, position: int) -> ParseError:
        line, col = self.parser.pos_to_linecol(position)
        return ParseError(f"[Parser] ERROR: {message}", line, col)

    def _combine(self, op, a, b, position: int):
        try:
            if op == "*":
                if isinstance(a, DeltaExpansion) and isinstance(b, DeltaExpansion):
                    raise TypeError
                result = a * b
            elif op == "+":
                result = a + b
            else:
                result = a - b
        except TypeError:
            raise self._error(
                f"cannot combine {type(a).__name__} {op} {type(b).__name__}", position
            ) from None
        return result

    # --- terminals ---

    def visit_uint(self, node, children):
        return _Tok("uint", int(node.value), node.position)

    def visit_rational(self, node, children):
        text = node.value
        num, _sep, den = text.partition("/")
        if den and int(den) == 0:
            raise self._error(f"zero denominator in {text}", node.position)
        return _Tok("value", Scalar(Fraction(int(num), int(den) if den else 1)), node.position)

    def visit_imag(self, node, children):
        return _Tok("value", I, node.position)

    def visit_variable(self, node, children):
        text = node.value
        if text.startswith("w"):
            bar = text.startswith("wb")
            index = int(text[2:] if bar else text[1:])
            if index not in (1, 2):
                raise self._error(f"spinor variable {text} must be w1, w2, wb1 or wb2", node.position)
            return _Tok("value", SpinorPoly.omega(index, bar), node.position)
        axis = int(text[1:])
        if axis > 3:
            raise self._error(f"variable {text} outside x0..x3 / p0..p3", node.position)
        return _Tok("value", Poly.var(axis, 4, self.varspace), node.position)

    def visit_sign(self, node, children):
        return _Tok("sign", "-", node.position)

    def visit_addop(self, node, children):
        return _Tok("op", node.value, node.position)

    # --- literals ---

    def _kappa(self, node, children):
        kappa = tuple(t.value for t in _toks(children))
        if len(kappa) > 4:
            raise self._error(f"multi-index {kappa} has more than four components", node.position)
        return kappa

    def visit_delta_literal(self, node, children):
        kappa = self._kappa(node, children)
        return _Tok("value", DeltaExpansion(len(kappa), {kappa: 1}), node.position)

    def visit_deriv_literal(self, node, children):
        return _Tok("deriv", self._kappa(node, children), node.position)

    def visit_cov_literal(self, node, children):
        (s2,) = _toks(children)
        return _Tok("value", covariant_poly(s2.value, self.varspace), node.position)

    def visit_group(self, node, children):
        (inner,) = _toks(children)
        return _Tok("value", inner.value, node.position)

    def visit_atom(self, node, children):
        return _toks(children)[0]

    # --- structure ---

    def visit_power(self, node, children):
        toks = _toks(children)
        base = toks[0]
        if len(toks) == 1:
            return base
        exponent = toks[1].value
        if base.kind == "deriv":
            raise self._error("derivative literals cannot be raised to a power", node.position)
        if isinstance(base.value, DeltaExpansion):
            raise self._error("delta expansions cannot be raised to a power", node.position)
        return _Tok("value", base.value ** exponent, node.position)

    def visit_factor(self, node, children):
        toks = _toks(children)
        if len(toks) == 1:
            return toks[0]
        inner = toks[1]
        if inner.kind == "deriv":
            return _Tok("deriv-neg", inner.value, node.position)
        return _Tok("value", -inner.value, node.position)

    def _apply_deriv(self, kappa, value, position: int):
        if isinstance(value, Scalar):
            return Scalar(0)
        if isinstance(value, SpinorPoly):
            return value.map_coefficients(lambda c: self._apply_deriv(kappa, c, position))
        if len(kappa) != value.dim:
            raise self._error(f"derivative {kappa} does not match dimension {value.dim}", position)
        if isinstance(value, DeltaExpansion):
            return derivative(value, kappa)
        return differentiate(value, kappa)

    def visit_term(self, node, children):
        toks = _toks(children)
        acc = None
        for tok in reversed(toks):
            if tok.kind in ("deriv", "deriv-neg"):
                acc = self._apply_deriv(tok.value, ONE if acc is None else acc, tok.position)
                if tok.kind == "deriv-neg":
                    acc = -acc
            elif acc is None:
                acc = tok.value
            else:
                acc = self._combine("*", tok.value, acc, tok.position)
        return _Tok("value", acc, node.position)

    def visit_expr(self, node, children):
        toks = _toks(children)
        acc = toks[0].value
        for op, rhs in zip(toks[1::2], toks[2::2]):
            acc = self._combine(op.value, acc, rhs.value, op.position)
        return _Tok("value", acc, node.position)

    def visit_root(self, node, children):
        return _toks(children)[0]


def detect_varspace(text: str, default: VarSpace = VarSpace.POSITION) -> VarSpace:
    """Momentum if any p-variable occurs, position if any x-variable does, else default."""
    has_x = bool(_POSITION_VAR.search(text))
    has_p = bool(_MOMENTUM_VAR.search(text))
    if has_x and has_p:
        raise VarSpaceError("[Parser] ERROR: expression mixes x and p variables")
    if has_p:
        return VarSpace.MOMENTUM
    return VarSpace.POSITION if has_x else default


def varspace_of(value) -> VarSpace | None:
    """The variable space a printed value must be parsed back into, None for delta expansions."""
    if isinstance(value, Poly):
        return value.varspace
    if isinstance(value, SpinorPoly):
        spaces = {c.varspace for c in value.terms.values() if isinstance(c, Poly)}
        return spaces.pop() if len(spaces) == 1 else None
    return None


def _finalize(value, varspace: VarSpace):
    if isinstance(value, Scalar):
        return Poly.const(value, 4, varspace)
    if isinstance(value, SpinorPoly):
        return value.map_coefficients(lambda c: _finalize(c, varspace))
    return value


def parse_expression(text: str, varspace: VarSpace | None = None):
    """
    Parse text into a Poly, DeltaExpansion or SpinorPoly.

    Without x or p variables the result lives in varspace (position when
    not given); with them, a given varspace must agree.
    """
    detected = detect_varspace(text, varspace or VarSpace.POSITION)
    if varspace is not None and detected is not varspace:
        raise VarSpaceError(f"[Parser] ERROR: expected a {varspace.value} expression, got {text!r}")
    parser = _get_parser()
    with _PARSER_LOCK:
        try:
            tree = parser.parse(text)
        except NoMatch as e:
            line, col = parser.pos_to_linecol(e.position)
            raise ParseError(f"[Parser] ERROR: syntax error in {text!r}", line, col) from None
        result = visit_parse_tree(tree, ExpressionVisitor(parser, detected))
    return _finalize(result.value, detected)


def format_expression(value) -> str:
    """
    Canonical text of a parsed value.

    parse_expression(format_expression(v), varspace_of(v)) == v; constants
    print bare, so their variable space travels as the hint.
    """
    return str(value)
