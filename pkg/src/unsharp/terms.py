"""A small term language for candidate laws over the operators.

Grammar (ASCII)::

    equation ::= term rel term
    rel      ::= "=" | "<=1" | "~=1"
    term     ::= unary ("&" unary)*
    unary    ::= primary ("'" | "'0")*
    primary  ::= "x" | "y" | "z" | "w" | "0" | "1"
               | "(" term ")" | "(" term "->" term ")"

Postfix negation binds tightest, ``&`` associates to the left, and an
implication is always written inside its own parentheses; ``'`` and
``'0`` are interchangeable spellings of the same postfix negation.

Terms evaluate set-valued: variables and constants become singletons,
``&`` lifts pointwise, ``'`` applies set negation, ``->`` set implication.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Union

from .errors import ParseError, RequiresBoundedError
from .operators import imp_set, neg_set
from .order import ElemSet, MeetSemilattice, set_meet


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    symbol: str  # "0" or "1"


@dataclass(frozen=True)
class Neg:
    arg: "Term"


@dataclass(frozen=True)
class Meet:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Imp:
    left: "Term"
    right: "Term"


Term = Union[Var, Const, Neg, Meet, Imp]

RELATIONS = ("=", "<=1", "~=1")


@dataclass(frozen=True)
class Equation:
    lhs: Term
    relation: str
    rhs: Term
    text: str = ""


_TOKEN = re.compile(r"->|<=1|~=1|=|&|\(|\)|'0|'|[01]|[xyzw]")


def _tokenize(text: str) -> list[tuple[str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(
                f"unexpected character {text[pos]!r} at position {pos}", position=pos
            )
        out.append((m.group(), pos))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.k = 0

    def peek(self) -> str | None:
        return self.toks[self.k][0] if self.k < len(self.toks) else None

    def advance(self) -> str:
        tok, _ = self.toks[self.k]
        self.k += 1
        return tok

    def position(self) -> int:
        return self.toks[self.k][1] if self.k < len(self.toks) else len(self.text)

    def expect(self, want: str):
        if self.peek() != want:
            raise ParseError(
                f"expected {want!r} at position {self.position()}",
                position=self.position(),
            )
        self.advance()

    def term(self) -> Term:
        node = self.unary()
        while self.peek() == "&":
            self.advance()
            node = Meet(node, self.unary())
        return node

    def unary(self) -> Term:
        node = self.primary()
        while self.peek() in ("'", "'0"):
            self.advance()
            node = Neg(node)
        return node

    def primary(self) -> Term:
        tok = self.peek()
        if tok in ("x", "y", "z", "w"):
            self.advance()
            return Var(tok)
        if tok in ("0", "1"):
            self.advance()
            return Const(tok)
        if tok == "(":
            self.advance()
            inner = self.term()
            if self.peek() == "->":
                self.advance()
                rhs = self.term()
                self.expect(")")
                return Imp(inner, rhs)
            self.expect(")")
            return inner
        raise ParseError(
            f"expected a term at position {self.position()}", position=self.position()
        )


def parse_term(text: str) -> Term:
    p = _Parser(text)
    node = p.term()
    if p.peek() is not None:
        raise ParseError(
            f"trailing input at position {p.position()}", position=p.position()
        )
    return node


def parse_equation(text: str) -> Equation:
    p = _Parser(text)
    lhs = p.term()
    rel = p.peek()
    if rel not in RELATIONS:
        raise ParseError(
            f"expected a relation (=, <=1, ~=1) at position {p.position()}",
            position=p.position(),
        )
    p.advance()
    rhs = p.term()
    if p.peek() is not None:
        raise ParseError(
            f"trailing input at position {p.position()}", position=p.position()
        )
    return Equation(lhs, rel, rhs, text=text.strip())


def term_variables(term: Term) -> frozenset[str]:
    if isinstance(term, Var):
        return frozenset((term.name,))
    if isinstance(term, Const):
        return frozenset()
    if isinstance(term, Neg):
        return term_variables(term.arg)
    return term_variables(term.left) | term_variables(term.right)


def term_uses_top(term: Term) -> bool:
    if isinstance(term, Const):
        return term.symbol == "1"
    if isinstance(term, Var):
        return False
    if isinstance(term, Neg):
        return term_uses_top(term.arg)
    return term_uses_top(term.left) or term_uses_top(term.right)


def evaluate(s: MeetSemilattice, term: Term, binding: Mapping[str, int]) -> ElemSet:
    """Evaluate a term to a subset of the carrier under a variable binding."""
    if isinstance(term, Var):
        return frozenset((binding[term.name],))
    if isinstance(term, Const):
        if term.symbol == "0":
            return frozenset((s.bottom,))
        if s.top is None:
            raise RequiresBoundedError(
                "constant 1 needs a structure with a top element"
            )
        return frozenset((s.top,))
    if isinstance(term, Neg):
        return neg_set(s, evaluate(s, term.arg, binding))
    if isinstance(term, Meet):
        return set_meet(
            s, evaluate(s, term.left, binding), evaluate(s, term.right, binding)
        )
    return imp_set(
        s, evaluate(s, term.left, binding), evaluate(s, term.right, binding)
    )


def render(term: Term) -> str:
    """Canonical text form of a term (re-parses to an equal tree)."""
    if isinstance(term, Var):
        return term.name
    if isinstance(term, Const):
        return term.symbol
    if isinstance(term, Neg):
        inner = render(term.arg)
        if isinstance(term.arg, Meet):
            inner = f"({inner})"
        return inner + "'"
    if isinstance(term, Meet):
        left = render(term.left)
        right = render(term.right)
        if isinstance(term.right, Meet):
            right = f"({right})"
        return f"{left} & {right}"
    return f"({render(term.left)} -> {render(term.right)})"


def render_equation(eq: Equation) -> str:
    return eq.text or f"{render(eq.lhs)} {eq.relation} {render(eq.rhs)}"
