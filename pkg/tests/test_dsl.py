"""The .geo parser and printer."""

import pytest

from src.calculus.forms import unit_form
from src.calculus.operators import DiffOp
from src.dsl import ParseError, parse, parse_file, parse_scalar, print_document, tokenize
from src.dsl.lexer import TokenKind

from .helpers import CORPUS

CORPUS_FILES = sorted(CORPUS.glob("*.geo"))

BASE = [
    "chart R3 (x, y, z);",
    "scalar f = x*y;",
    "form w : 2 on D = dx^dy + u^dz;",
    "lrj s {",
    "  alpha = 0;",
    "  omega = w;",
    "}",
    "check s with reeb;",
]


def with_line(number: int, text: str) -> str:
    lines = list(BASE)
    lines[number - 1] = text
    return "\n".join(lines) + "\n"


def test_corpus_is_large_enough():
    assert len(CORPUS_FILES) >= 10


@pytest.mark.parametrize("path", CORPUS_FILES, ids=lambda p: p.stem)
def test_corpus_round_trip(path):
    document = parse_file(path)
    printed = print_document(document)
    again = parse(printed)
    assert again.semantically_equal(document)
    assert print_document(again) == printed


def test_base_document_parses():
    document = parse(with_line(1, BASE[0]))
    assert [b.name for b in document.bindings] == ["f", "w"]
    assert document.structure("s").entries["omega"].ref == "w"
    assert document.checks[0].flags == ["reeb"]


def test_unit_form_literal():
    document = parse("chart R3 (x, y, z);\nform a : 1 on D = -1*u;\n")
    assert document.binding("a").value == unit_form(document.chart).scale(-1)


def test_unknown_differential_reports_its_position():
    with pytest.raises(ParseError) as info:
        parse("chart R3 (x, y, z);\nform a : 1 on D = dx + dw;\n")
    assert (info.value.line, info.value.column) == (2, 24)
    assert "unknown coordinate w" in info.value.message


def test_empty_document_prints_chart_line_only():
    printed = print_document(parse_file(CORPUS / "empty_r2.geo"))
    assert printed.count("\n") == 1
    assert printed.startswith("chart R2 (x, y) domain ")


def test_printing_normalizes_whitespace():
    messy = "chart   R2(x,y)  ;\n\nscalar   f=y+x ;\n"
    tidy = "chart R2 (x, y);\nscalar f = x + y;\n"
    assert print_document(parse(messy)) == print_document(parse(tidy))


def test_operator_bindings():
    document = parse_file(CORPUS / "operators_r3.geo")
    chart = document.chart
    x, y, z = chart.symbols
    assert document.binding("V").value == DiffOp.vector_field(chart, [-y, x, 0])
    assert document.binding("L").value == DiffOp(chart, 2, (-y, x, z))
    assert document.binding("gamma").value.degree == 3
    assert chart.domain[1] == (0.5, 2.0)
    directive = document.checks[0]
    assert (directive.samples, directive.seed, directive.tolerance) == (16, 7, 1e-8)


def test_lift_defaults_g_to_zero():
    document = parse_file(CORPUS / "contact_r3.geo")
    lift = document.structure("std0")
    assert lift.value("g") == 0
    assert lift.value("contact") == "std"
    assert document.contact_data(lift).E == DiffOp.partial(document.chart, "z")


def test_parse_scalar_resolves_bindings():
    document = parse(with_line(1, BASE[0]))
    x, y, _ = document.chart.symbols
    assert parse_scalar("f + x", document) == x * y + x
    with pytest.raises(ParseError, match="must be a function"):
        parse_scalar("d/dx", document)
    with pytest.raises(ParseError, match="unexpected"):
        parse_scalar("x y", document)


def test_tokens_carry_positions():
    tokens = tokenize("op L = d/dx + 2.5e-1;")
    assert [t.kind for t in tokens][3] is TokenKind.PARTIAL
    assert (tokens[3].line, tokens[3].column) == (1, 8)
    assert tokens[5].text == "2.5e-1"
    assert tokens[-1].kind is TokenKind.EOF


INJECTED = [
    (2, "scalar f = x*y @;", (2, 16), "unexpected character"),
    (3, "form w : 2 on D = dx^dq;", (3, 22), "unknown coordinate q"),
    (2, "scalar f = x^y;", (2, 13), "^ joins forms"),
    (3, "form w : 3 on D = dx^dy + u^dz;", (3, 19), "declared with degree 3"),
    (3, "form w : 2 on X = dx^dy + u^dz;", (3, 27), "only available in forms on D"),
    (6, "  omega = w", (7, 1), "expected ';'"),
    (8, "check t with reeb;", (8, 7), "unknown structure t"),
    (8, "check s with wibble = 1;", (8, 14), "unknown check option wibble"),
    (2, "scalar x = 1;", (2, 8), "shadows a coordinate"),
    (5, "  gamma = 0;", (5, 3), "unknown key gamma"),
    (1, "chart R3 (x, y, x);", (1, 7), "repeated coordinates"),
    (2, "scalar f = x / 0;", (2, 14), "division by zero"),
    (8, "check s with samples = 0;", (8, 24), "at least 1"),
    (2, "scalar f = d/dx;", (2, 12), "must be a function"),
    (1, "scalar f = 1;", (1, 1), "starts with a chart"),
]


@pytest.mark.parametrize("number, text, position, message", INJECTED, ids=[m for *_, m in INJECTED])
def test_injected_errors(number, text, position, message):
    with pytest.raises(ParseError) as info:
        parse(with_line(number, text))
    assert (info.value.line, info.value.column) == position
    assert message in info.value.message
