"""Recursive-descent parser for the formula grammar.

    formula := iff
    iff     := imp ('<->' imp)*
    imp     := or ('->' imp)?
    or      := and ('|' and)*
    and     := unary ('&' unary)*
    unary   := '!' unary | quant | 'true' | 'false' | atom | '(' formula ')'
    quant   := ('E' | 'A' | 'Einf') ident '.' unary
    atom    := poly ('=' | '!=') poly
    poly    := ['-'] term (('+' | '-') term)*
    term    := factor ('*' factor)*
    factor  := base ('^' nat)?
    base    := integer | ident | '(' poly ')'

A leading minus in ``poly`` is accepted so that printed polynomials with a
negative leading coefficient read back.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from ..algebra.poly import QQ, CoeffDomain, MultiPoly
from .ast import (And, Atom, Exists, FalseF, Forall, InfMany, Not, Or, TrueF, EQ, NE,
                  free_vars, freshen_bound, neg)


class ParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"{msg} at line {line}, column {col}")
        self.msg = msg
        self.line = line
        self.col = col


class ShadowingError(ParseError):
    pass


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int
    line: int
    col: int


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+)
  | (?P<name>[A-Za-z][A-Za-z0-9_]*)
  | (?P<op><->|->|!=|[!&|=+\-*^().])
""", re.VERBOSE)

_KEYWORDS = {"E", "A", "Einf", "true", "false"}


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        tok = m.group()
        if kind == "ws":
            nl = tok.count("\n")
            if nl:
                line += nl
                line_start = pos + tok.rfind("\n") + 1
        else:
            if kind == "name":
                if tok in _KEYWORDS:
                    kind = "kw"
                elif not tok[0].islower():
                    raise ParseError(f"identifiers must start with a lowercase letter: {tok!r}", line, col)
            out.append(Token(kind if kind != "op" else tok, tok, pos, line, col))
        pos = m.end()
    col = pos - line_start + 1
    out.append(Token("eof", "", pos, line, col))
    return out


class _Parser:
    def __init__(self, text: str, domain: CoeffDomain):
        self.toks = tokenize(text)
        self.i = 0
        self.dom = domain
        self.scope: list[str] = []

    # -- helpers --------------------------------------------------------------
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.col)

    def accept(self, kind, text=None):
        t = self.tok
        if t.kind == kind and (text is None or t.text == text):
            self.i += 1
            return t
        return None

    def expect(self, kind, text=None, what=None):
        t = self.accept(kind, text)
        if t is None:
            found = self.tok.text or "end of input"
            raise self.error(f"expected {what or text or kind}, found {found!r}")
        return t

    # -- formulas -------------------------------------------------------------
    def formula(self):
        left = self.imp()
        while self.accept("<->"):
            right = self.imp()
            left = And(Or(neg(left), right), Or(neg(right), left))
        return left

    def imp(self):
        left = self.or_()
        if self.accept("->"):
            right = self.imp()
            return Or(neg(left), right)
        return left

    def or_(self):
        args = [self.and_()]
        while self.accept("|"):
            args.append(self.and_())
        return args[0] if len(args) == 1 else Or(args)

    def and_(self):
        args = [self.unary()]
        while self.accept("&"):
            args.append(self.unary())
        return args[0] if len(args) == 1 else And(args)

    def unary(self):
        t = self.tok
        if self.accept("!"):
            return Not(self.unary())
        if t.kind == "kw":
            if t.text == "true":
                self.i += 1
                return TrueF()
            if t.text == "false":
                self.i += 1
                return FalseF()
            return self.quant()
        if t.kind == "(":
            save = self.i
            try:
                return self.atom()
            except ParseError as atom_err:
                self.i = save
                try:
                    self.expect("(")
                    f = self.formula()
                    self.expect(")", what="')'")
                    return f
                except ParseError as f_err:
                    raise max(atom_err, f_err, key=lambda e: (e.line, e.col))
        return self.atom()

    def quant(self):
        kw = self.expect("kw")
        cls = {"E": Exists, "A": Forall, "Einf": InfMany}[kw.text]
        name = self.expect("name", what="a variable name")
        if name.text in self.scope:
            raise ShadowingError(f"quantifier re-binds {name.text!r} inside its own scope", name.line, name.col)
        self.expect(".", what="'.' after the quantified variable")
        self.scope.append(name.text)
        try:
            body = self.unary()
        finally:
            self.scope.pop()
        return cls(name.text, body)

    def atom(self):
        left = self.poly()
        t = self.tok
        if self.accept("="):
            rel = EQ
        elif self.accept("!="):
            rel = NE
        else:
            found = t.text or "end of input"
            raise self.error(f"expected '=' or '!=', found {found!r}")
        right = self.poly()
        return Atom(left - right, rel)

    # -- polynomials ----------------------------------------------------------
    def poly(self):
        negate = self.accept("-") is not None
        acc = self.term()
        if negate:
            acc = -acc
        while True:
            if self.accept("+"):
                acc = acc + self.term()
            elif self.accept("-"):
                acc = acc - self.term()
            else:
                return acc

    def term(self):
        acc = self.factor()
        while self.accept("*"):
            acc = acc * self.factor()
        return acc

    def factor(self):
        b = self.base()
        if self.accept("^"):
            e = self.expect("num", what="a natural-number exponent")
            return b ** int(e.text)
        return b

    def base(self):
        t = self.tok
        if self.accept("num"):
            return MultiPoly.const(int(t.text), self.dom)
        if self.accept("name"):
            return MultiPoly.var(t.text, self.dom)
        if self.accept("("):
            p = self.poly()
            self.expect(")", what="')'")
            return p
        found = t.text or "end of input"
        raise self.error(f"expected a number, variable or '(', found {found!r}")


def parse(text: str, domain: CoeffDomain | int = QQ):
    """Parse ``text`` into a formula with pairwise distinct binders.

    Integer literals are reduced in the domain's characteristic.  A binder
    that repeats a sibling binder or a free variable is renamed; one that
    re-binds a variable inside its own scope raises :class:`ShadowingError`.
    """
    if isinstance(domain, int):
        domain = CoeffDomain(domain)
    p = _Parser(text, domain)
    f = p.formula()
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r}")
    return freshen_bound(f, set(free_vars(f)))


def parse_poly(text: str, domain: CoeffDomain | int = QQ) -> MultiPoly:
    if isinstance(domain, int):
        domain = CoeffDomain(domain)
    p = _Parser(text, domain)
    out = p.poly()
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r}")
    return out
