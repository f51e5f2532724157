"""Parser for polynomial expressions and maps typed on the command line.

Grammar::

    map    := expr [ "/" expr ]
    expr   := term { ("+" | "-") term }
    term   := unary { "*" unary }
    unary  := "-" unary | power
    power  := atom [ "^" INT ]
    atom   := INT | VAR | "(" expr ")"
"""

from __future__ import annotations

import re
from fractions import Fraction

from .forms import BinaryForm
from .rammap import DegenerateMapError, RationalMap, map_from_polys

# A polynomial is {(x_exp, y_exp): Fraction} without zero entries.
Poly = dict

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\S))")


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.pos = pos


def _add(f: Poly, g: Poly, sign: int = 1) -> Poly:
    out = dict(f)
    for k, v in g.items():
        out[k] = out.get(k, 0) + sign * v
        if not out[k]:
            del out[k]
    return out


def _mul(f: Poly, g: Poly) -> Poly:
    out: Poly = {}
    for (a, b), u in f.items():
        for (c, d), v in g.items():
            k = (a + c, b + d)
            out[k] = out.get(k, 0) + u * v
            if not out[k]:
                del out[k]
    return out


class _Parser:
    def __init__(self, text: str, variables: tuple[str, ...]):
        self.text = text
        self.variables = variables
        self.tokens = []
        for m in _TOKEN.finditer(text):
            num, name, op = m.groups()
            pos = m.start(m.lastindex)
            if num is not None:
                self.tokens.append(("int", int(num), pos))
            elif name is not None:
                self.tokens.append(("var", name, pos))
            else:
                self.tokens.append(("op", op, pos))
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("end", None, len(self.text))

    def error(self, message: str):
        raise ParseError(message, self.text, self.peek()[2])

    def take(self, kind, value=None):
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            got = tok[1] if tok[0] != "end" else "end of input"
            self.error(f"expected {want!r}, got {got!r}")
        self.i += 1
        return tok

    def at(self, kind, value=None) -> bool:
        tok = self.peek()
        return tok[0] == kind and (value is None or tok[1] == value)

    def map(self) -> tuple[Poly, Poly]:
        num = self.expr()
        den: Poly = {(0, 0): Fraction(1)}
        if self.at("op", "/"):
            self.i += 1
            den = self.expr()
        if not self.at("end"):
            self.error(f"unexpected {self.peek()[1]!r}")
        return num, den

    def expr(self) -> Poly:
        out = self.term()
        while self.at("op", "+") or self.at("op", "-"):
            sign = 1 if self.take("op")[1] == "+" else -1
            out = _add(out, self.term(), sign)
        return out

    def term(self) -> Poly:
        out = self.unary()
        while self.at("op", "*"):
            self.i += 1
            out = _mul(out, self.unary())
        return out

    def unary(self) -> Poly:
        if self.at("op", "-"):
            self.i += 1
            return _mul({(0, 0): Fraction(-1)}, self.unary())
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.at("op", "^"):
            self.i += 1
            e = self.take("int")[1]
            out: Poly = {(0, 0): Fraction(1)}
            for _ in range(e):
                out = _mul(out, base)
            return out
        return base

    def atom(self) -> Poly:
        kind, value, pos = self.peek()
        if kind == "int":
            self.i += 1
            return {(0, 0): Fraction(value)} if value else {}
        if kind == "var":
            if value not in self.variables:
                self.error(f"unknown variable {value!r} (allowed: {', '.join(self.variables)})")
            self.i += 1
            return {(1, 0) if value == self.variables[0] else (0, 1): Fraction(1)}
        if self.at("op", "("):
            self.i += 1
            out = self.expr()
            self.take("op", ")")
            return out
        self.error("expected a number, variable or '('")


def parse_polys(text: str, variables=("x",), allow_division: bool = True) -> tuple[Poly, Poly]:
    p = _Parser(text, tuple(variables))
    if not p.tokens:
        raise ParseError("empty expression", text, 0)
    num, den = p.map()
    if not allow_division and den != {(0, 0): Fraction(1)}:
        raise ParseError("division is not allowed here", text, text.find("/"))
    return num, den


def _univariate(f: Poly) -> list[Fraction]:
    deg = max((a for a, _ in f), default=-1)
    out = [Fraction(0)] * (deg + 1)
    for (a, _), v in f.items():
        out[a] = v
    return out


def parse_map(text: str) -> RationalMap:
    """``"(x^2+1)^2 / (4*x^3-4*x)"`` -> the normalized degree-4 map."""
    num, den = parse_polys(text, ("x",))
    if not den:
        raise ZeroDivisionError("denominator is zero")
    if not num:
        raise DegenerateMapError("numerator is zero: constant map")
    return map_from_polys(_univariate(num), _univariate(den))


def parse_form(text: str) -> BinaryForm:
    """A homogeneous form in x and y with integer coefficients, e.g. ``"x^2-25*y^2"``."""
    f, _ = parse_polys(text, ("x", "y"), allow_division=False)
    if not f:
        raise ParseError("the zero form is not allowed", text, 0)
    degrees = {a + b for a, b in f}
    if len(degrees) != 1:
        raise ParseError(f"not homogeneous (total degrees {sorted(degrees)})", text, 0)
    n = degrees.pop()
    coeffs = [f.get((n - i, i), 0) for i in range(n + 1)]
    if any(c.denominator != 1 for c in coeffs):
        raise ParseError("coefficients must be integers", text, 0)
    return BinaryForm(int(c) for c in coeffs)


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(";", ",").split(",") if t.strip()]
    except ValueError as e:
        raise ParseError(f"bad integer list ({e})", text, 0) from None
