"""DSL module initialization."""
from .lexer import ParseError, Token, TokenKind, tokenize
from .document import Binding, Entry, StructureDecl, CheckDirective, GeoDocument
from .parser import Parser, parse, parse_file, parse_scalar
from .printer import GeoPrinter, print_document, format_value, format_form, format_op, format_scalar

__all__ = [
    "ParseError", "Token", "TokenKind", "tokenize",
    "Binding", "Entry", "StructureDecl", "CheckDirective", "GeoDocument",
    "Parser", "parse", "parse_file", "parse_scalar",
    "GeoPrinter", "print_document", "format_value", "format_form", "format_op", "format_scalar"
]
