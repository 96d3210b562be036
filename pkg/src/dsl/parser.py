"""
LRJ Calculus Workbench
.geo Parser

Recursive-descent parser with typed evaluation. Expressions evaluate to
functions, operators or forms while they are parsed, so every type,
degree and name error is reported at the token that caused it.

Precedence, loosest first: + -, ^, * /, unary -, **.
"""

import logging
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import sympy as sp

from ..cas.expressions import ZERO, const, div, normalize, power
from ..calculus.forms import AlphaForm, SkewFormD, XForm, coordinate_differential, scalar_form, unit_form, wedge
from ..calculus.operators import DiffOp, FormError
from ..chart.chart import Chart
from .document import (
    CHECK_FLAGS, STRUCTURE_KEYS, Binding, CheckDirective, Entry, GeoDocument, StructureDecl, Value,
)
from .lexer import ParseError, Token, TokenKind, tokenize

logger = logging.getLogger(__name__)

FUNCTIONS = {"sin": sp.sin, "cos": sp.cos, "exp": sp.exp}
BINDING_KINDS = ("scalar", "field", "op", "form")


def _is_scalar(value) -> bool:
    return isinstance(value, sp.Basic)


def _describe(value) -> str:
    if isinstance(value, SkewFormD):
        return f"a degree-{value.degree} form"
    if isinstance(value, DiffOp):
        return "an operator"
    return "a function"


class Parser:
    """Parser for one ``.geo`` document."""

    def __init__(self, source: str):
        self.tokens = tokenize(source)
        self.pos = 0
        self.chart: Optional[Chart] = None
        self.names: Dict[str, Binding] = {}
        self.structs: Dict[str, StructureDecl] = {}
        self.context: Optional[str] = None

    # ---------------------------------------------------------------- tokens
    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        token = self.tok
        if token.kind is not TokenKind.EOF:
            self.pos += 1
        return token

    def error(self, message: str, token: Optional[Token] = None) -> ParseError:
        token = token or self.tok
        return ParseError(message, token.line, token.column, token.text)

    def accept(self, text: str) -> Optional[Token]:
        if self.tok.is_symbol(text):
            return self.advance()
        return None

    def expect(self, text: str) -> Token:
        if not self.tok.is_symbol(text):
            raise self.error(f"expected {text!r}, found {self.tok.shown}")
        return self.advance()

    def expect_word(self, text: str) -> Token:
        if not self.tok.is_word(text):
            raise self.error(f"expected {text!r}, found {self.tok.shown}")
        return self.advance()

    def expect_ident(self, what: str = "identifier") -> Token:
        if self.tok.kind is not TokenKind.IDENT:
            raise self.error(f"expected {what}, found {self.tok.shown}")
        return self.advance()

    def integer(self, what: str) -> int:
        negative = self.accept("-") is not None
        token = self.tok
        if token.kind is not TokenKind.NUMBER or not token.text.isdigit():
            raise self.error(f"expected an integer {what}, found {token.shown}")
        self.advance()
        return -int(token.text) if negative else int(token.text)

    def real(self, what: str) -> float:
        negative = self.accept("-") is not None
        token = self.tok
        if token.kind is not TokenKind.NUMBER:
            raise self.error(f"expected a number for {what}, found {token.shown}")
        self.advance()
        return -float(token.text) if negative else float(token.text)

    # -------------------------------------------------------------- document
    def parse_document(self) -> GeoDocument:
        self.parse_chart()
        document = GeoDocument(self.chart)
        while self.tok.kind is not TokenKind.EOF:
            document.items.append(self.parse_item())
        return document

    def parse_chart(self) -> None:
        if not self.tok.is_word("chart"):
            raise self.error(f"a document starts with a chart declaration, found {self.tok.shown}")
        self.advance()
        name = self.expect_ident("chart name")
        self.expect("(")
        coords = [self.expect_ident("coordinate")]
        while self.accept(","):
            coords.append(self.expect_ident("coordinate"))
        self.expect(")")
        domain: List[Tuple[float, float]] = []
        if self.tok.is_word("domain"):
            self.advance()
            domain.append(self.interval())
            while self.accept(","):
                domain.append(self.interval())
        self.expect(";")
        try:
            self.chart = Chart(name.text, tuple(c.text for c in coords), tuple(domain))
        except ValueError as exc:
            raise self.error(str(exc), name) from None

    def interval(self) -> Tuple[float, float]:
        self.expect("[")
        low = self.real("an interval bound")
        self.expect(",")
        high = self.real("an interval bound")
        self.expect("]")
        return (low, high)

    def parse_item(self):
        token = self.tok
        if token.kind is TokenKind.IDENT:
            if token.text in BINDING_KINDS:
                return self.parse_binding()
            if token.text in STRUCTURE_KEYS:
                return self.parse_structure()
            if token.text == "check":
                return self.parse_check()
            if token.text == "chart":
                raise self.error("a document declares exactly one chart")
        raise self.error(f"expected a declaration, found {token.shown}")

    def declare_name(self) -> Token:
        name = self.expect_ident("name")
        if name.text in self.names:
            raise self.error(f"duplicate name {name.text}", name)
        if name.text in self.chart.coords:
            raise self.error(f"name {name.text} shadows a coordinate", name)
        return name

    # -------------------------------------------------------------- bindings
    def parse_binding(self) -> Binding:
        keyword = self.advance()
        name = self.declare_name()
        degree, on = None, None
        if keyword.text == "form":
            self.expect(":")
            degree = self.integer("degree")
            if degree < 0:
                raise self.error("form degree must be nonnegative")
            self.expect_word("on")
            space = self.expect_ident("X or D")
            if space.text not in ("X", "D"):
                raise self.error(f"expected X or D, found {space.shown}", space)
            on = space.text
        self.expect("=")
        start = self.tok
        value = self.expression(context=on if keyword.text == "form" else None)
        self.expect(";")

        what = f"{keyword.text} {name.text}"
        if keyword.text == "scalar":
            value = self.as_scalar(value, start, what)
        elif keyword.text == "op":
            value = self.as_op(value, start, what)
        elif keyword.text == "field":
            value = self.as_field(value, start, what)
        else:
            value = self.as_form(value, degree, on, start, what)
        binding = Binding(keyword.text, name.text, value, degree=degree, on=on, line=keyword.line)
        self.names[name.text] = binding
        return binding

    # ---------------------------------------------------------- coercions
    def as_scalar(self, value: Value, token: Token, what: str):
        if not _is_scalar(value):
            raise self.error(f"{what} must be a function, got {_describe(value)}", token)
        return value

    def as_op(self, value: Value, token: Token, what: str) -> DiffOp:
        if _is_scalar(value):
            return DiffOp.multiplication(self.chart, value)
        if not isinstance(value, DiffOp):
            raise self.error(f"{what} must be an operator, got {_describe(value)}", token)
        return value

    def as_field(self, value: Value, token: Token, what: str) -> DiffOp:
        op = self.as_op(value, token, what)
        if not op.is_vector_field:
            raise self.error(f"{what} must be a vector field, has scalar part {op.scalar}", token)
        return op

    def as_form(self, value: Value, degree: int, on: str, token: Token, what: str) -> SkewFormD:
        if _is_scalar(value):
            if degree == 0:
                value = scalar_form(self.chart, value)
            elif normalize(value) == ZERO:
                value = SkewFormD.zero(self.chart, degree)
            else:
                raise self.error(f"{what} declared with degree {degree}, got a function", token)
        if not isinstance(value, SkewFormD):
            raise self.error(f"{what} must be a form, got {_describe(value)}", token)
        if value.degree != degree:
            raise self.error(f"{what} declared with degree {degree}, expression has degree {value.degree}", token)
        try:
            if on == "X":
                return value.as_xform()
            if degree == 1:
                return value.as_alpha()
            return value.as_plain()
        except FormError:
            raise self.error(f"{what} is declared on X but involves u", token) from None

    # ------------------------------------------------------------ structures
    def parse_structure(self) -> StructureDecl:
        keyword = self.advance()
        name = self.expect_ident("structure name")
        if name.text in self.structs:
            raise self.error(f"duplicate structure {name.text}", name)
        self.expect("{")
        allowed = STRUCTURE_KEYS[keyword.text]
        entries: Dict[str, Entry] = {}
        starts: Dict[str, Token] = {}
        while not self.tok.is_symbol("}"):
            key = self.expect_ident("key")
            if key.text not in allowed:
                raise self.error(f"unknown key {key.text} for {keyword.text}", key)
            if key.text in entries:
                raise self.error(f"duplicate key {key.text}", key)
            self.expect("=")
            start = self.tok
            if keyword.text == "lift" and key.text == "contact":
                ref = self.expect_ident("contact structure")
                target = self.structs.get(ref.text)
                if target is None or target.kind != "contact":
                    raise self.error(f"unknown contact structure {ref.text}", ref)
                entries[key.text] = Entry(ref.text, ref.text)
            else:
                ref = start.text if (start.kind is TokenKind.IDENT and self.peek().is_symbol(";")
                                     and start.text in self.names) else None
                entries[key.text] = Entry(self.expression(context="D"), ref)
            starts[key.text] = start
            self.expect(";")
        close = self.expect("}")
        self.accept(";")

        if keyword.text == "lift" and "g" not in entries:
            entries["g"] = Entry(ZERO)
            starts["g"] = close
        for key in allowed:
            if key not in entries:
                raise self.error(f"{keyword.text} {name.text} is missing {key}", close)
        self.typecheck_structure(keyword.text, name.text, entries, starts)
        decl = StructureDecl(keyword.text, name.text, {k: entries[k] for k in allowed}, line=keyword.line)
        self.structs[name.text] = decl
        return decl

    def typecheck_structure(self, kind: str, name: str, entries: Dict[str, Entry], starts: Dict[str, Token]) -> None:
        def coerce(key: str, convert) -> None:
            entries[key].value = convert(entries[key].value, starts[key], f"{key} of {kind} {name}")

        if kind == "lcs":
            coerce("alpha", lambda v, t, w: self.as_form(v, 1, "X", t, w))
            coerce("omega", lambda v, t, w: self.as_form(v, 2, "X", t, w))
        elif kind == "contact":
            coerce("beta", lambda v, t, w: self.as_form(v, 1, "X", t, w))
            coerce("Omega", lambda v, t, w: self.as_form(v, 2, "X", t, w))
            coerce("E", self.as_field)
        elif kind == "lrj":
            coerce("alpha", lambda v, t, w: self.as_form(v, 1, "D", t, w))
            coerce("omega", lambda v, t, w: self.as_form(v, 2, "D", t, w))
        else:
            coerce("c", self.as_constant)
            coerce("g", self.as_scalar)

    def as_constant(self, value: Value, token: Token, what: str):
        value = self.as_scalar(value, token, what)
        reduced = normalize(value)
        if not reduced.is_Rational:
            raise self.error(f"{what} must be a rational constant, got {reduced}", token)
        return reduced

    # ---------------------------------------------------------------- checks
    def parse_check(self) -> CheckDirective:
        keyword = self.advance()
        target = self.expect_ident("structure name")
        if target.text not in self.structs:
            raise self.error(f"unknown structure {target.text}", target)
        directive = CheckDirective(target=target.text, line=keyword.line)
        if self.tok.is_word("with"):
            self.advance()
            self.parse_option(directive)
            while self.accept(","):
                self.parse_option(directive)
        self.expect(";")
        return directive

    def scalar_list(self, count: int, what: str) -> Tuple:
        self.expect("[")
        values = [self.scalar_operand(what)]
        while self.accept(","):
            values.append(self.scalar_operand(what))
        close = self.expect("]")
        if len(values) != count:
            raise self.error(f"{what} takes {count} functions, got {len(values)}", close)
        return tuple(values)

    def scalar_operand(self, what: str):
        start = self.tok
        return self.as_scalar(self.expression(context=None), start, f"operand of {what}")

    def parse_option(self, directive: CheckDirective) -> None:
        option = self.expect_ident("check option")
        if option.text in CHECK_FLAGS:
            if option.text not in directive.flags:
                directive.flags.append(option.text)
            return
        self.expect("=")
        if option.text == "bracket":
            directive.brackets.append(self.scalar_list(2, "bracket"))
        elif option.text == "jacobi":
            directive.jacobi.append(self.scalar_list(3, "jacobi"))
        elif option.text == "hamiltonian":
            directive.hamiltonians.append(self.scalar_operand("hamiltonian"))
        elif option.text == "samples":
            start = self.tok
            directive.samples = self.integer("sample count")
            if directive.samples < 1:
                raise self.error("samples must be at least 1", start)
        elif option.text == "seed":
            directive.seed = self.integer("seed")
        elif option.text == "tolerance":
            start = self.tok
            directive.tolerance = self.real("tolerance")
            if not directive.tolerance > 0:
                raise self.error("tolerance must be positive", start)
        else:
            raise self.error(f"unknown check option {option.text}", option)

    # ------------------------------------------------------------ expressions
    def expression(self, context: Optional[str]) -> Value:
        saved, self.context = self.context, context
        try:
            return self.sum()
        finally:
            self.context = saved

    def sum(self) -> Value:
        left = self.wedge_product()
        while self.tok.is_symbol("+") or self.tok.is_symbol("-"):
            op = self.advance()
            right = self.wedge_product()
            left = self.add(left, right if op.text == "+" else self.negate(right), op)
        return left

    def wedge_product(self) -> Value:
        left = self.term()
        while self.tok.is_symbol("^"):
            op = self.advance()
            right = self.term()
            if not (isinstance(left, SkewFormD) and isinstance(right, SkewFormD)):
                raise self.error("^ joins forms (use ** for powers)", op)
            left = wedge(left, right)
        return left

    def term(self) -> Value:
        left = self.unary()
        while self.tok.is_symbol("*") or self.tok.is_symbol("/"):
            op = self.advance()
            right = self.unary()
            left = self.multiply(left, right, op) if op.text == "*" else self.divide(left, right, op)
        return left

    def unary(self) -> Value:
        if self.accept("-"):
            return self.negate(self.unary())
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self) -> Value:
        base = self.atom()
        if self.tok.is_symbol("**"):
            op = self.advance()
            start = self.tok
            exponent = self.unary()
            if not _is_scalar(base):
                raise self.error(f"** needs a function base, got {_describe(base)}", op)
            if not (_is_scalar(exponent) and normalize(exponent).is_Integer):
                raise self.error("exponent must be an integer constant", start)
            return power(base, int(normalize(exponent)))
        return base

    def atom(self) -> Value:
        token = self.tok
        if token.kind is TokenKind.NUMBER:
            self.advance()
            return const(Fraction(token.text))
        if token.kind is TokenKind.PARTIAL:
            self.advance()
            coord = token.text[3:]
            if coord not in self.chart.coords:
                raise self.error(f"unknown coordinate {coord}", token)
            return DiffOp.partial(self.chart, coord)
        if token.is_symbol("("):
            self.advance()
            value = self.sum()
            self.expect(")")
            return value
        if token.kind is TokenKind.IDENT:
            if token.text in FUNCTIONS and self.peek().is_symbol("("):
                self.advance()
                self.advance()
                start = self.tok
                argument = self.sum()
                self.expect(")")
                if not _is_scalar(argument):
                    raise self.error(f"{token.text} takes a function, got {_describe(argument)}", start)
                return FUNCTIONS[token.text](argument)
            self.advance()
            return self.resolve(token)
        raise self.error(f"expected an expression, found {token.shown}", token)

    def resolve(self, token: Token) -> Value:
        name = token.text
        chart = self.chart
        if name in self.names:
            value = self.names[name].value
            if self.context == "X" and isinstance(value, SkewFormD) and any(0 in k for k in value.components):
                raise self.error(f"{name} involves u and cannot be used on X", token)
            return value
        if name in chart.coords:
            return chart.symbol(name)
        if name == "u":
            if self.context == "D":
                return unit_form(chart)
            if self.context == "X":
                raise self.error("u (delta(1)) is only available in forms on D", token)
            raise self.error("u (delta(1)) is only available in forms", token)
        if name.startswith("d") and len(name) > 1:
            coord = name[1:]
            if coord in chart.coords:
                return coordinate_differential(chart, coord)
            if self.context is not None:
                raise self.error(f"unknown coordinate {coord}", token)
        raise self.error(f"unknown identifier {name}", token)

    # --------------------------------------------------------- typed algebra
    def negate(self, value: Value) -> Value:
        return -value

    def add(self, left: Value, right: Value, op: Token) -> Value:
        if _is_scalar(left) and _is_scalar(right):
            return left + right
        if isinstance(left, SkewFormD) or isinstance(right, SkewFormD):
            left, right = self.as_form_operand(left, right, op), self.as_form_operand(right, left, op)
            if left.degree != right.degree:
                raise self.error(f"cannot add forms of degree {left.degree} and {right.degree}", op)
            return left + right
        return self.as_op(left, op, "operand") + self.as_op(right, op, "operand")

    def as_form_operand(self, value: Value, other: Value, op: Token) -> SkewFormD:
        if isinstance(value, SkewFormD):
            return value
        if isinstance(value, DiffOp):
            raise self.error("cannot add an operator and a form", op)
        degree = other.degree if isinstance(other, SkewFormD) else 0
        if degree == 0:
            return scalar_form(self.chart, value)
        if normalize(value) == ZERO:
            return SkewFormD.zero(self.chart, degree)
        raise self.error(f"cannot add a function and a degree-{degree} form", op)

    def multiply(self, left: Value, right: Value, op: Token) -> Value:
        if _is_scalar(left) and _is_scalar(right):
            return left * right
        if _is_scalar(left):
            return right.scale(left)
        if _is_scalar(right):
            return left.scale(right)
        if isinstance(left, SkewFormD) and isinstance(right, SkewFormD):
            raise self.error("use ^ to multiply forms", op)
        raise self.error(f"cannot multiply {_describe(left)} by {_describe(right)}", op)

    def divide(self, left: Value, right: Value, op: Token) -> Value:
        if not _is_scalar(right):
            raise self.error(f"cannot divide by {_describe(right)}", op)
        if normalize(right) == ZERO:
            raise self.error("division by zero", op)
        if _is_scalar(left):
            return div(left, right)
        return left.scale(div(sp.Integer(1), right))


def parse(source: str) -> GeoDocument:
    """
    Parse ``.geo`` source text.

    Raises:
        ParseError: lexical, syntactic or semantic error, with its position
    """
    return Parser(source).parse_document()


def parse_file(path: Union[str, Path]) -> GeoDocument:
    """Parse a ``.geo`` file (UTF-8)."""
    return parse(Path(path).read_text(encoding="utf-8"))


def parse_scalar(text: str, document: GeoDocument):
    """
    Parse one function expression against a document's chart and bindings.

    Raises:
        ParseError: the text is not a function of the chart coordinates
    """
    parser = Parser(text)
    parser.chart = document.chart
    parser.names = {b.name: b for b in document.bindings}
    start = parser.tok
    value = parser.as_scalar(parser.expression(context=None), start, "operand")
    if parser.tok.kind is not TokenKind.EOF:
        raise parser.error(f"unexpected {parser.tok.shown}")
    return value
