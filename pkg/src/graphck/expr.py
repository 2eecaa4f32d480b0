"""Parser for the element expression syntax.

Elements print as ``c * s[e1 e2] * s*[f] + ...`` with ``p[v]`` sugar for the
empty-path projection; this module parses that syntax back over a graph.
Coefficient literals are rationals (``3``, ``1/2``), Gaussian rationals
(``i``, ``2/3i``, ``(1+1/2i)``) or polar ``mag@turn`` values (``1@1/3``
meaning exp(2*pi*i/3)).  A ``@`` anywhere selects polar mode for the whole
expression; otherwise the element is Gaussian-rational.
"""

from __future__ import annotations

import re
from fractions import Fraction

from . import exact
from .algebra import AlgebraElement, path_isometry, vertex_projection, zero
from .exact import GAUSSIAN, POLAR
from .graph import Graph


class ExprError(ValueError):
    pass


_TOKEN_RE = re.compile(
    r"""
      (?P<ws>\s+)
    | (?P<gen>(?:p|s\*|s)\[[^\]]*\])
    | (?P<num>\d+(?:/\d+)?)
    | (?P<imag>i)
    | (?P<op>[@*+\-()])
    """,
    re.X,
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ExprError(f"unexpected character at position {pos}: {text[pos]!r}")
        pos = m.end()
        if m.lastgroup == "ws":
            continue
        if m.lastgroup == "gen":
            raw = m.group()
            head, inner = raw.split("[", 1)
            ids = tuple(inner[:-1].split())
            tokens.append(("gen", head, ids))
        elif m.lastgroup == "num":
            tokens.append(("num", Fraction(m.group())))
        elif m.lastgroup == "imag":
            tokens.append(("i",))
        else:
            tokens.append((m.group(),))
    return tokens


class _Parser:
    def __init__(self, g: Graph, tokens, mode: str):
        self.g = g
        self.tokens = tokens
        self.pos = 0
        self.mode = mode

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ExprError("unexpected end of expression")
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.take()
        if tok[0] != kind:
            raise ExprError(f"expected {kind!r}, got {tok[0]!r}")
        return tok

    def parse(self) -> AlgebraElement:
        total = zero(self.mode)
        sign = 1
        tok = self.peek()
        if tok is not None and tok[0] in ("+", "-"):
            self.take()
            sign = -1 if tok[0] == "-" else 1
        while True:
            term = self.parse_term()
            total = total + (term if sign > 0 else -term)
            tok = self.peek()
            if tok is None:
                return total
            if tok[0] not in ("+", "-"):
                raise ExprError(f"expected '+' or '-', got {tok[0]!r}")
            self.take()
            sign = -1 if tok[0] == "-" else 1

    def parse_term(self) -> AlgebraElement:
        coeff = exact.one(self.mode)
        elem: AlgebraElement | None = None
        while True:
            piece = self.parse_factor()
            if isinstance(piece, AlgebraElement):
                elem = piece if elem is None else elem * piece
            else:
                coeff = exact.mul(coeff, piece)
            tok = self.peek()
            if tok is None or tok[0] != "*":
                break
            self.take()
        if elem is None:
            raise ExprError(
                "scalar term without a generator; the algebra has no unit"
            )
        return elem.map_coefficients(lambda c: exact.mul(coeff, c))

    def parse_factor(self):
        tok = self.take()
        if tok[0] == "gen":
            _, head, ids = tok
            if head == "p":
                if len(ids) != 1:
                    raise ExprError(f"p[...] takes one vertex id, got {ids}")
                return vertex_projection(self.g, ids[0], self.mode)
            if not ids:
                raise ExprError("s[...] needs at least one edge id")
            elem = path_isometry(self.g, self.g.path(list(ids)), self.mode)
            return elem.adjoint() if head == "s*" else elem
        if tok[0] == "num":
            value = tok[1]
            nxt = self.peek()
            if nxt is not None and nxt[0] == "@":
                self.take()
                turn = self.expect("num")[1]
                return exact.coerce(exact.PolarCoeff(value, turn), self.mode)
            if nxt is not None and nxt[0] == "i":
                self.take()
                return exact.coerce(
                    exact.GaussianRational(Fraction(0), value), self.mode
                )
            return exact.coerce(value, self.mode)
        if tok[0] == "i":
            return exact.coerce(exact.GaussianRational(Fraction(0), Fraction(1)), self.mode)
        if tok[0] == "(":
            return self.parse_paren_scalar()
        raise ExprError(f"unexpected token {tok[0]!r}")

    def parse_paren_scalar(self):
        def signed_part():
            sign = 1
            tok = self.peek()
            if tok is not None and tok[0] in ("+", "-"):
                self.take()
                sign = -1 if tok[0] == "-" else 1
            tok = self.peek()
            if tok is not None and tok[0] == "i":
                self.take()
                return Fraction(0), sign * Fraction(1)
            value = self.expect("num")[1]
            tok = self.peek()
            if tok is not None and tok[0] == "i":
                self.take()
                return Fraction(0), sign * value
            return sign * value, Fraction(0)

        re1, im1 = signed_part()
        tok = self.peek()
        re2 = im2 = Fraction(0)
        if tok is not None and tok[0] in ("+", "-"):
            re2, im2 = signed_part()
        self.expect(")")
        return exact.coerce(
            exact.GaussianRational(re1 + re2, im1 + im2), self.mode
        )


def parse_element(g: Graph, text: str) -> AlgebraElement:
    """Parse an element expression over the given graph."""
    tokens = _tokenize(text)
    if not tokens:
        raise ExprError("empty expression")
    if len(tokens) == 1 and tokens[0] == ("num", Fraction(0)):
        return zero(GAUSSIAN)
    mode = POLAR if ("@",) in tokens else GAUSSIAN
    parser = _Parser(g, tokens, mode)
    try:
        element = parser.parse()
    except exact.ExactnessError as err:
        raise ExprError(str(err)) from err
    return element
