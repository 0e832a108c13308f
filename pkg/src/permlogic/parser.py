"""Text syntax for formulas: a recursive-descent parser and the canonical
printer, giving the repository's wire format.

Grammar (ASCII, whitespace-insensitive):

    formula   := iff
    iff       := imp ('<->' imp)*              left-associative
    imp       := or ('->' imp)?                right-associative
    or        := and ('|' and)*
    and       := unary ('&' unary)*
    unary     := '!' unary
               | ('E' | 'A') var '.' formula   quantifier scope is maximal
               | atomchain
               | '(' formula ')'
    atomchain := var (relop var)+              relop in { '<P', '<V', '=', 'R' }
    var       := identifier; 'E', 'A', 'R' are reserved

Chained relations desugar to conjunctions: x <P y <P z means
(x <P y) & (y <P z); chains exist only in the source text, never in the AST.

A quantifier's dot-scope extends as far right as possible (to the end of the
enclosing group), so `E x . a & b` quantifies over the whole conjunction.
The canonical printer parenthesizes every non-atomic subformula, which makes
its output unambiguous under this rule and stable under reparsing.

Identifiers of the shape `_t<digits>` are the substitution machinery's
reserved bound names; the parser admits them so that generated sentences
round-trip, but fresh-name generation always steps over any that are
present.  Other names may not start with an underscore.
"""
from __future__ import annotations

import re
from typing import NamedTuple

from .errors import ParseError
from .logic import (
    And,
    Eq,
    Exists,
    Forall,
    Formula,
    Iff,
    Implies,
    LtP,
    LtV,
    Not,
    Or,
    Rel,
    Var,
    and_all,
)

_KEYWORDS = {"E", "A", "R"}

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<iff><->)
  | (?P<ltp><P)
  | (?P<ltv><V)
  | (?P<arrow>->)
  | (?P<eq>=)
  | (?P<bang>!)
  | (?P<amp>&)
  | (?P<pipe>\|)
  | (?P<dot>\.)
  | (?P<lpar>\()
  | (?P<rpar>\))
    """,
    re.VERBOSE,
)

_RESERVED_NAME = re.compile(r"_t\d+$")


class _Token(NamedTuple):
    kind: str
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    line, line_start = 1, 0
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        chunk = m.group()
        if kind != "ws":
            tokens.append(_Token(kind, chunk, line, m.start() - line_start + 1))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = m.start() + chunk.rfind("\n") + 1
        pos = m.end()
    tokens.append(_Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"expected {what}, found {tok.text or 'end of input'!r}", tok.line, tok.column)
        return self.advance()

    def fail(self, message: str):
        tok = self.peek()
        raise ParseError(message, tok.line, tok.column)

    def parse(self) -> Formula:
        phi = self.formula()
        tok = self.peek()
        if tok.kind != "eof":
            raise ParseError(f"trailing input starting at {tok.text!r}", tok.line, tok.column)
        return phi

    def formula(self) -> Formula:
        return self.iff()

    def iff(self) -> Formula:
        out = self.imp()
        while self.peek().kind == "iff":
            self.advance()
            out = Iff(out, self.imp())
        return out

    def imp(self) -> Formula:
        left = self.disjunction()
        if self.peek().kind == "arrow":
            self.advance()
            return Implies(left, self.imp())
        return left

    def disjunction(self) -> Formula:
        out = self.conjunction()
        while self.peek().kind == "pipe":
            self.advance()
            out = Or(out, self.conjunction())
        return out

    def conjunction(self) -> Formula:
        out = self.unary()
        while self.peek().kind == "amp":
            self.advance()
            out = And(out, self.unary())
        return out

    def unary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "bang":
            self.advance()
            return Not(self.unary())
        if tok.kind == "lpar":
            self.advance()
            inner = self.formula()
            self.expect("rpar", "')'")
            return inner
        if tok.kind == "ident" and tok.text in ("E", "A"):
            self.advance()
            var = self.variable()
            self.expect("dot", "'.' after the quantified variable")
            body = self.formula()
            return Exists(var, body) if tok.text == "E" else Forall(var, body)
        if tok.kind == "ident":
            return self.atomchain()
        self.fail(f"expected a formula, found {tok.text or 'end of input'!r}")

    def variable(self) -> Var:
        tok = self.expect("ident", "a variable name")
        if tok.text in _KEYWORDS:
            raise ParseError(f"{tok.text!r} is reserved", tok.line, tok.column)
        if tok.text.startswith("_") and not _RESERVED_NAME.match(tok.text):
            raise ParseError("names starting with '_' are reserved", tok.line, tok.column)
        return Var(tok.text)

    def relop(self):
        tok = self.peek()
        if tok.kind in ("ltp", "ltv", "eq"):
            return self.advance().kind
        if tok.kind == "ident" and tok.text == "R":
            self.advance()
            return "rel"
        return None

    def atomchain(self) -> Formula:
        left = self.variable()
        atoms = []
        op = self.relop()
        if op is None:
            self.fail("expected a relation after the variable")
        while op is not None:
            right = self.variable()
            atoms.append(_ATOM_BUILDERS[op](left, right))
            left = right
            op = self.relop()
        return and_all(atoms)


_ATOM_BUILDERS = {"ltp": LtP, "ltv": LtV, "eq": Eq, "rel": Rel}


def parse(text: str) -> Formula:
    """Parse formula text, or raise ParseError with line and column."""
    return _Parser(text).parse()


_ATOM_SYMBOLS = {Eq: "=", LtP: "<P", LtV: "<V", Rel: "R"}
_BINARY_SYMBOLS = {And: "&", Or: "|", Implies: "->", Iff: "<->"}


def print_formula(phi: Formula) -> str:
    """Canonical rendering: every non-atomic subformula is parenthesized
    when it appears under an operator, and atoms carry no parentheses.

    parse(print_formula(phi)) is structurally equal to phi.
    """
    return _render(phi)


def _wrap(phi: Formula) -> str:
    text = _render(phi)
    if type(phi) in _ATOM_SYMBOLS:
        return text
    return f"({text})"


def _render(phi: Formula) -> str:
    cls = type(phi)
    if cls in _ATOM_SYMBOLS:
        return f"{phi.left.name} {_ATOM_SYMBOLS[cls]} {phi.right.name}"
    if cls is Not:
        return f"!{_wrap(phi.child)}"
    if cls in _BINARY_SYMBOLS:
        return f"{_wrap(phi.left)} {_BINARY_SYMBOLS[cls]} {_wrap(phi.right)}"
    if cls is Exists:
        return f"E {phi.var.name} . {_wrap(phi.body)}"
    if cls is Forall:
        return f"A {phi.var.name} . {_wrap(phi.body)}"
    raise TypeError(f"not a formula node: {phi!r}")
