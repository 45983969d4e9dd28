"""Printers and the JSON form document.

Text output round-trips through the expression grammar; the JSON document
is versioned and stable (sorted term order, exact rational coefficients).
The LaTeX emitter mirrors the usual jet-coordinate notation (omega^sigma_J,
dx^i) so printed forms can be checked visually.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Optional

from .charts import BaseVar, ChartContext, MultiIndex
from .expr import Add, Div, Fn, Mul, Pow, Rat, ScalarExpr, Var
from .forms import CoframeElement, Dx, ExteriorForm, FormError, Omega, coframe_key, make_form

SCHEMA_VERSION = "lepage.form/1"

_P_ADD = 10
_P_MUL = 20
_P_POW = 30
_P_ATOM = 100


def variable_name(ref, fiber_count: Optional[int] = None) -> str:
    """Coordinate spelling: x1, y2_12; the fiber index is dropped when m = 1."""
    if isinstance(ref, BaseVar):
        return f"x{ref.i}"
    sigma = "" if fiber_count == 1 else str(ref.sigma)
    if ref.jj:
        return f"y{sigma}_{''.join(str(j) for j in ref.jj)}"
    return f"y{sigma}"


def _rat_text(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def expr_to_text(e: ScalarExpr, fiber_count: Optional[int] = None) -> str:
    """Parseable text rendering."""
    return _text(e, 0, fiber_count)


def _text(e: ScalarExpr, prec: int, m: Optional[int]) -> str:
    if isinstance(e, (Rat, Mul)) and prec <= _P_ADD:
        sign, body = _signed(e, m)
        if sign == "-":
            return f"-{body}"
    if isinstance(e, Rat):
        s = _rat_text(e.value)
        if (e.value < 0 or e.value.denominator != 1) and prec >= _P_MUL:
            return f"({s})"
        return s
    if isinstance(e, Var):
        return variable_name(e.ref, m)
    if isinstance(e, Add):
        parts = []
        for idx, t in enumerate(e.terms):
            sign, body = _signed(t, m)
            if idx == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        s = "".join(parts)
        return f"({s})" if prec > _P_ADD else s
    if isinstance(e, Mul):
        s = "*".join(_text(f, _P_MUL, m) for f in e.factors)
        return f"({s})" if prec > _P_MUL else s
    if isinstance(e, Div):
        s = f"({_text(e.num, 0, m)})/({_text(e.den, 0, m)})"
        return f"({s})" if prec > _P_MUL else s
    if isinstance(e, Pow):
        base = _text(e.base, _P_ATOM, m)
        if not isinstance(e.base, (Var, Fn)):
            base = f"({_text(e.base, 0, m)})"
        exponent = str(e.exponent) if e.exponent >= 0 else f"({e.exponent})"
        return f"{base}^{exponent}"
    if isinstance(e, Fn):
        return f"{e.name}({_text(e.arg, 0, m)})"
    raise TypeError(f"unknown node {e!r}")


def _signed(t: ScalarExpr, m: Optional[int]) -> tuple[str, str]:
    """Split a leading negative rational factor off an additive term."""
    if isinstance(t, Rat) and t.value < 0:
        return "-", _text(Rat(-t.value), _P_ADD + 1, m)
    if isinstance(t, Mul) and t.factors and isinstance(t.factors[0], Rat):
        head = t.factors[0].value
        if head < 0:
            rest = t.factors[1:]
            if head == -1 and rest:
                body = Mul(rest) if len(rest) > 1 else rest[0]
            else:
                body = Mul((Rat(-head),) + rest)
            return "-", _text(body, _P_MUL, m)
    return "+", _text(t, _P_ADD + 1, m)


def expr_to_latex(e: ScalarExpr, fiber_count: Optional[int] = None) -> str:
    return _latex(e, 0, fiber_count)


def _latex_var(ref, m: Optional[int]) -> str:
    if isinstance(ref, BaseVar):
        return f"x^{{{ref.i}}}"
    upper = "" if m == 1 else f"^{{{ref.sigma}}}"
    lower = f"_{{{''.join(str(j) for j in ref.jj)}}}" if ref.jj else ""
    return f"y{upper}{lower}"


def _latex(e: ScalarExpr, prec: int, m: Optional[int]) -> str:
    if isinstance(e, (Rat, Mul)) and prec <= _P_ADD:
        sign, body = _latex_signed(e, m)
        if sign == "-":
            return f"-{body}"
    if isinstance(e, Rat):
        v = e.value
        body = str(v.numerator) if v.denominator == 1 else (
            f"-\\tfrac{{{-v.numerator}}}{{{v.denominator}}}" if v < 0
            else f"\\tfrac{{{v.numerator}}}{{{v.denominator}}}"
        )
        if v < 0 and prec >= _P_MUL:
            return f"\\left({body}\\right)"
        return body
    if isinstance(e, Var):
        return _latex_var(e.ref, m)
    if isinstance(e, Add):
        parts = []
        for idx, t in enumerate(e.terms):
            sign, body = _latex_signed(t, m)
            if idx == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        s = "".join(parts)
        return f"\\left({s}\\right)" if prec > _P_ADD else s
    if isinstance(e, Mul):
        s = "\\,".join(_latex(f, _P_MUL, m) for f in e.factors)
        return f"\\left({s}\\right)" if prec > _P_MUL else s
    if isinstance(e, Div):
        return f"\\frac{{{_latex(e.num, 0, m)}}}{{{_latex(e.den, 0, m)}}}"
    if isinstance(e, Pow):
        base = _latex(e.base, _P_ATOM, m)
        if not isinstance(e.base, Var):
            base = f"\\left({_latex(e.base, 0, m)}\\right)"
        return f"{base}^{{{e.exponent}}}"
    if isinstance(e, Fn):
        name = "\\ln" if e.name == "ln" else f"\\{e.name}"
        return f"{name}\\left({_latex(e.arg, 0, m)}\\right)"
    raise TypeError(f"unknown node {e!r}")


def _latex_signed(t: ScalarExpr, m: Optional[int]) -> tuple[str, str]:
    if isinstance(t, Rat) and t.value < 0:
        return "-", _latex(Rat(-t.value), _P_ADD + 1, m)
    if isinstance(t, Mul) and t.factors and isinstance(t.factors[0], Rat):
        head = t.factors[0].value
        if head < 0:
            rest = t.factors[1:]
            if head == -1 and rest:
                body = Mul(rest) if len(rest) > 1 else rest[0]
            else:
                body = Mul((Rat(-head),) + rest)
            return "-", _latex(body, _P_MUL, m)
    return "+", _latex(t, _P_ADD + 1, m)


# ---------------------------------------------------------------------------
# coframe labels and form documents
# ---------------------------------------------------------------------------

_LABEL_DX = re.compile(r"^dx(\d+)$")
_LABEL_W = re.compile(r"^w(\d+)(?:_(\d+))?$")


def coframe_label(el: CoframeElement) -> str:
    if isinstance(el, Dx):
        return f"dx{el.i}"
    if el.jj:
        return f"w{el.sigma}_{''.join(str(j) for j in el.jj)}"
    return f"w{el.sigma}"


def parse_coframe_label(text: str) -> CoframeElement:
    mx = _LABEL_DX.match(text)
    if mx:
        return Dx(int(mx.group(1)))
    mw = _LABEL_W.match(text)
    if mw:
        jj = tuple(int(c) for c in (mw.group(2) or ""))
        return Omega(int(mw.group(1)), MultiIndex(jj))
    raise FormError(f"unknown coframe label {text!r}")


def coframe_latex(el: CoframeElement) -> str:
    if isinstance(el, Dx):
        return f"dx^{{{el.i}}}"
    lower = f"_{{{''.join(str(j) for j in el.jj)}}}" if el.jj else ""
    return f"\\omega^{{{el.sigma}}}{lower}"


def form_to_text(form: ExteriorForm, fiber_count: Optional[int] = None) -> str:
    if form.is_structurally_zero():
        return "0"
    lines = []
    for key, coeff in form:
        labels = " ∧ ".join(coframe_label(el) for el in key) or "1"
        lines.append(f"({expr_to_text(coeff, fiber_count)}) {labels}")
    return "\n+ ".join(lines)


def form_to_latex(form: ExteriorForm, fiber_count: Optional[int] = None) -> str:
    if form.is_structurally_zero():
        return "0"
    pieces = []
    for key, coeff in form:
        labels = " \\wedge ".join(coframe_latex(el) for el in key)
        body = f"\\left({expr_to_latex(coeff, fiber_count)}\\right)"
        pieces.append(f"{body} {labels}" if labels else body)
    return " + ".join(pieces)


def form_to_document(form: ExteriorForm) -> dict:
    """The versioned JSON-ready document for a form (coefficients in explicit-sigma spelling)."""
    terms = []
    for key, coeff in form:
        terms.append(
            {
                "coeff": expr_to_text(coeff, fiber_count=None),
                "basis": [coframe_label(el) for el in key],
            }
        )
    return {
        "schema": SCHEMA_VERSION,
        "chart": {"n": form.ctx.n, "m": form.ctx.m, "order": form.order},
        "degree": form.degree,
        "terms": terms,
    }


def form_to_json(form: ExteriorForm) -> str:
    return json.dumps(form_to_document(form), indent=2)


def form_from_document(doc: dict) -> ExteriorForm:
    """Rebuild a form from its document; validates the schema and basis ordering."""
    from .parsing import parse_expression

    if doc.get("schema") != SCHEMA_VERSION:
        raise FormError(f"unsupported schema {doc.get('schema')!r}")
    chart = doc["chart"]
    ctx = ChartContext(chart["n"], chart["m"], chart["order"])
    degree = doc["degree"]
    entries = []
    for term in doc["terms"]:
        basis = tuple(parse_coframe_label(label) for label in term["basis"])
        keys = [coframe_key(el) for el in basis]
        if any(b <= a for a, b in zip(keys, keys[1:])):
            raise FormError(f"basis {term['basis']!r} is not strictly increasing")
        coeff = parse_expression(term["coeff"], ctx)
        entries.append((basis, coeff))
    return make_form(ctx, degree, entries, chart["order"])


def form_from_json(text: str) -> ExteriorForm:
    return form_from_document(json.loads(text))
