"""
LRJ Calculus Workbench
.geo Printer

Canonical text for documents and values. Output parses back to a
semantically equal document.
"""

from typing import List

import sympy as sp
from sympy.printing.str import StrPrinter

from ..calculus.forms import SkewFormD
from ..calculus.operators import DiffOp
from .document import Binding, CheckDirective, Entry, GeoDocument, StructureDecl


class GeoPrinter(StrPrinter):
    """sympy's str printer, with only names the .geo grammar knows."""

    def _print_Exp1(self, expr):
        return "exp(1)"


_printer = GeoPrinter()


def format_scalar(expr) -> str:
    return _printer.doprint(sp.sympify(expr))


def _term(coefficient, basis: str) -> str:
    if coefficient == 1:
        return basis
    if coefficient == -1:
        return f"-{basis}"
    return f"({format_scalar(coefficient)})*{basis}"


def _join(terms: List[str]) -> str:
    if not terms:
        return "0"
    text = terms[0]
    for term in terms[1:]:
        text += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return text


def format_op(op: DiffOp) -> str:
    terms = [f"({format_scalar(op.scalar)})"] if op.scalar != 0 else []
    terms += [_term(v, f"d/d{c}") for c, v in zip(op.chart.coords, op.vec) if v != 0]
    return _join(terms)


def format_form(form: SkewFormD) -> str:
    names = ("u",) + tuple(f"d{c}" for c in form.chart.coords)
    if form.degree == 0:
        return format_scalar(form.scalar)
    return _join([_term(v, "^".join(names[i] for i in key)) for key, v in form.components.items()])


def format_value(value) -> str:
    if isinstance(value, SkewFormD):
        return format_form(value)
    if isinstance(value, DiffOp):
        return format_op(value)
    if isinstance(value, str):
        return value
    return format_scalar(value)


def _number(v: float) -> str:
    return str(int(v)) if float(v).is_integer() else repr(float(v))


def _chart_line(document: GeoDocument) -> str:
    chart = document.chart
    domain = ", ".join(f"[{_number(lo)}, {_number(hi)}]" for lo, hi in chart.domain)
    return f"chart {chart.name} ({', '.join(chart.coords)}) domain {domain};"


def _binding(b: Binding) -> str:
    if b.kind == "form":
        return f"form {b.name} : {b.degree} on {b.on} = {format_value(b.value)};"
    return f"{b.kind} {b.name} = {format_value(b.value)};"


def _entry(entry: Entry) -> str:
    return entry.ref if entry.ref else format_value(entry.value)


def _structure(s: StructureDecl) -> str:
    lines = [f"{s.kind} {s.name} {{"]
    lines += [f"  {key} = {_entry(entry)};" for key, entry in s.entries.items()]
    lines.append("}")
    return "\n".join(lines)


def _check(c: CheckDirective) -> str:
    options = list(c.flags)
    options += [f"bracket = [{format_scalar(f)}, {format_scalar(g)}]" for f, g in c.brackets]
    options += [f"jacobi = [{', '.join(format_scalar(v) for v in t)}]" for t in c.jacobi]
    options += [f"hamiltonian = {format_scalar(h)}" for h in c.hamiltonians]
    if c.samples is not None:
        options.append(f"samples = {c.samples}")
    if c.seed is not None:
        options.append(f"seed = {c.seed}")
    if c.tolerance is not None:
        options.append(f"tolerance = {repr(float(c.tolerance))}")
    suffix = f" with {', '.join(options)}" if options else ""
    return f"check {c.target}{suffix};"


def print_document(document: GeoDocument) -> str:
    """Canonical text of a document."""
    lines = [_chart_line(document)]
    for item in document.items:
        if isinstance(item, Binding):
            lines.append(_binding(item))
        elif isinstance(item, StructureDecl):
            lines.append(_structure(item))
        else:
            lines.append(_check(item))
    return "\n".join(lines) + "\n"
