"""Tokenizer and recursive-descent parser for polynomials and session files.

Session grammar::

    session   := (decl ';')+
    decl      := ringdecl | idealdecl
    ringdecl  := 'ring' NAME '=' 'QQ' '[' var (',' var)* ']' ('/' '(' poly (',' poly)* ')')?
    var       := NAME ('(' INT (',' INT)* ')')?
    idealdecl := 'ideal' NAME '=' '(' poly (',' poly)* ')' 'in' NAME

Polynomials use ``+ - * ^``, integer and ``p/q`` literals and parentheses;
there is no implicit multiplication.  ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from gmpy2 import mpq

from .poly import Polynomial, PolynomialRing

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<op>[-+*^/()\[\],;=])
    """,
    re.VERBOSE,
)


class ParseError(ValueError):
    def __init__(self, message, line=None, col=None):
        self.line, self.col = line, col
        where = f" at line {line}, column {col}" if line is not None else ""
        super().__init__(message + where)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        chunk = m.group()
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rfind("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Stream:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def at(self, text) -> bool:
        return self.tok.text == text and self.tok.kind in ("op", "name")

    def expect(self, text) -> Token:
        if not self.at(text):
            self.fail(f"expected {text!r}, found {self.tok.text or 'end of input'!r}")
        return self.next()

    def expect_kind(self, kind) -> Token:
        if self.tok.kind != kind:
            self.fail(f"expected {kind}, found {self.tok.text or 'end of input'!r}")
        return self.next()

    def fail(self, message):
        raise ParseError(message, self.tok.line, self.tok.col)


# --------------------------------------------------------------------------
# polynomial expressions


def _parse_expr(s: _Stream, ring: PolynomialRing) -> Polynomial:
    result = _parse_term(s, ring)
    while s.at("+") or s.at("-"):
        op = s.next().text
        rhs = _parse_term(s, ring)
        result = result + rhs if op == "+" else result - rhs
    return result


def _parse_term(s, ring):
    result = _parse_unary(s, ring)
    while s.at("*"):
        s.next()
        result = result * _parse_unary(s, ring)
    return result


def _parse_unary(s, ring):
    if s.at("-"):
        s.next()
        return -_parse_unary(s, ring)
    if s.at("+"):
        s.next()
        return _parse_unary(s, ring)
    return _parse_power(s, ring)


def _parse_power(s, ring):
    base = _parse_atom(s, ring)
    if s.at("^"):
        s.next()
        exp = int(s.expect_kind("int").text)
        base = base**exp
    return base


def _parse_atom(s, ring):
    t = s.tok
    if t.kind == "int":
        s.next()
        value = mpq(int(t.text))
        if s.at("/"):
            s.next()
            den = int(s.expect_kind("int").text)
            if den == 0:
                raise ParseError("zero denominator", t.line, t.col)
            value = mpq(int(t.text), den)
        return ring.constant(value)
    if t.kind == "name":
        if t.text not in ring.names:
            raise ParseError(f"unknown variable {t.text!r}", t.line, t.col)
        s.next()
        return ring.gen(t.text)
    if s.at("("):
        s.next()
        inner = _parse_expr(s, ring)
        s.expect(")")
        return inner
    s.fail(f"unexpected token {t.text or 'end of input'!r}")


def parse_polynomial(text: str, ring: PolynomialRing) -> Polynomial:
    s = _Stream(tokenize(text))
    p = _parse_expr(s, ring)
    if s.tok.kind != "eof":
        s.fail(f"trailing input {s.tok.text!r}")
    return p


# --------------------------------------------------------------------------
# sessions


@dataclass
class RingDecl:
    name: str
    variables: list  # (name, weights tuple)
    relations: list  # polynomial source strings, parsed later against the ring
    line: int = 0
    col: int = 0


@dataclass
class IdealDecl:
    name: str
    generators: list
    ring: str
    line: int = 0
    col: int = 0


@dataclass
class SessionAST:
    decls: list = field(default_factory=list)


def _capture_poly(s: _Stream) -> str:
    """Collect the raw token text of one polynomial (until ``,`` or ``)`` at depth 0)."""
    depth = 0
    parts = []
    start = s.tok
    while True:
        t = s.tok
        if t.kind == "eof":
            s.fail("unterminated polynomial list")
        if depth == 0 and t.text in (",", ")") and t.kind == "op":
            break
        if t.text == "(":
            depth += 1
        elif t.text == ")":
            depth -= 1
        parts.append(t.text)
        s.next()
    if not parts:
        raise ParseError("empty polynomial", start.line, start.col)
    return " ".join(parts), start


def _poly_list(s: _Stream) -> list:
    s.expect("(")
    out = [_capture_poly(s)]
    while s.at(","):
        s.next()
        out.append(_capture_poly(s))
    s.expect(")")
    return out


def parse_session_ast(text: str) -> SessionAST:
    s = _Stream(tokenize(text))
    ast = SessionAST()
    while s.tok.kind != "eof":
        head = s.tok
        if s.at("ring"):
            s.next()
            name = s.expect_kind("name").text
            s.expect("=")
            s.expect("QQ")
            s.expect("[")
            variables = []
            while True:
                vt = s.expect_kind("name")
                weights = (1,)
                if s.at("("):
                    s.next()
                    ws = [s.expect_kind("int")]
                    while s.at(","):
                        s.next()
                        ws.append(s.expect_kind("int"))
                    s.expect(")")
                    weights = tuple(int(w.text) for w in ws)
                    for w in ws:
                        if int(w.text) <= 0:
                            raise ParseError("variable weights must be positive", w.line, w.col)
                variables.append((vt.text, weights, vt.line, vt.col))
                if s.at(","):
                    s.next()
                    continue
                break
            s.expect("]")
            relations = []
            if s.at("/"):
                s.next()
                relations = _poly_list(s)
            ast.decls.append(RingDecl(name, variables, relations, head.line, head.col))
        elif s.at("ideal"):
            s.next()
            name = s.expect_kind("name").text
            s.expect("=")
            gens = _poly_list(s)
            s.expect("in")
            ring = s.expect_kind("name")
            ast.decls.append(IdealDecl(name, gens, ring.text, ring.line, ring.col))
        else:
            s.fail(f"expected 'ring' or 'ideal', found {head.text!r}")
        if s.at(";"):
            s.next()
        elif s.tok.kind != "eof":
            s.fail("expected ';'")
    if not ast.decls:
        raise ParseError("empty session", 1, 1)
    return ast


def parse_in_context(source, ring: PolynomialRing) -> Polynomial:
    """Parse a captured ``(text, token)`` pair, re-anchoring error positions."""
    text, tok = source
    try:
        return parse_polynomial(text, ring)
    except ParseError as exc:
        raise ParseError(str(exc).split(" at line")[0], tok.line, tok.col) from None
