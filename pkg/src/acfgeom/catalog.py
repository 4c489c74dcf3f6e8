"""Fixed formula catalogs shared by the acceptance checks, the CLI and the tests.

Formulas are stored as source text and parsed on demand, so every entry also
exercises the parser.
"""
from __future__ import annotations

from dataclasses import dataclass

from .formula import parse


@dataclass(frozen=True)
class SetEntry:
    """A definable set ``{var : text}``; ``params`` are the remaining free variables."""
    text: str
    var: str = "y"
    params: tuple = ()

    def formula(self, char: int = 0):
        return parse(self.text, char)


# Sets of field elements, with and without parameters.
UNIVARIATE = [SetEntry(t) for t in (
    "true",
    "false",
    "y = 0",
    "y != 0",
    "y^2 = 1",
    "y^2 - 1 != 0",
    "y^2 = 1 | y != 2",
    "y^3 = y",
    "y^3 - y != 0",
    "y^2 + 1 = 0",
    "y^2 + 1 != 0",
    "y^3 != 1",
    "y^3 = 1",
    "y = 0 | y = 1",
    "y != 0 & y != 1",
    "y^2 = y & y != 0",
    "(y - 1)*(y - 2) = 0",
    "(y - 1)*(y - 2) != 0 | y = 5",
    "y^3 + y + 1 = 0",
    "y^2 + y + 1 != 0 & y != 3",
    "y = y",
    "y != y",
    "y^2 = 0",
    "y^2 != 0 & y^3 = 0",
    "y^2 = 2*y | y^3 = 1",
    "!(y = 0)",
    "!(y^2 = 1 | y = 3)",
    "y^2 = 4 -> y = 2",
    "y = 1 <-> y^2 = 1",
    "y^3 = 2 & y^2 = 3",
    "E z. (z^2 = y)",
    "E z. (z*y = 1)",
    "E z. (z = y & z^2 = 1)",
    "A z. (z*y = 0)",
    "A z. (z^2 != y)",
    "E z. (y = z^2 & z^3 = 1)",
)] + [SetEntry(t, "y", ps) for t, ps in (
    ("a*y = 0", ("a",)),
    ("y^2 = a", ("a",)),
    ("a*y = 1", ("a",)),
    ("a*y = b", ("a", "b")),
    ("(y - a)*(y - b) = 0", ("a", "b")),
    ("y != a", ("a",)),
    ("a*y^2 + b*y + 1 = 0", ("a", "b")),
    ("(a - 1)*y = 0 & y != a", ("a",)),
    ("a*y^2 + b*y = 0 | y^2 = 1", ("a", "b")),
    ("y^3 = a*y", ("a",)),
    ("a*b*y = 0", ("a", "b")),
    ("y^2 = a & y != 0", ("a",)),
    ("a*y = 0 | b*y = 1", ("a", "b")),
    ("y^3 = a", ("a",)),
    ("y^3 != a", ("a",)),
    ("a*y^2 = a", ("a",)),
    ("E z. (z^2 = y & a*z = 1)", ("a",)),
    ("(a*y - b)*(y - 1) = 0 | a = b", ("a", "b")),
)]


@dataclass(frozen=True)
class DimEntry:
    text: str
    variables: tuple
    dim: int

    def formula(self, char: int = 0):
        return parse(self.text, char)


# Nonempty quantifier-free sets whose components are absolutely irreducible,
# so point counts over F_{p^m} grow like p^(m*dim).
DIMENSION = [
    DimEntry("true", ("x",), 1),
    DimEntry("x = 0", ("x",), 0),
    DimEntry("x^2 = 1", ("x",), 0),
    DimEntry("x != 0", ("x",), 1),
    DimEntry("x*y = 1", ("x", "y"), 1),
    DimEntry("true", ("x", "y"), 2),
    DimEntry("y = x^2", ("x", "y"), 1),
    DimEntry("x*y != 0", ("x", "y"), 2),
    DimEntry("x = 0 & y = 0", ("x", "y"), 0),
    DimEntry("y^2 = x^3 & x != 0", ("x", "y"), 1),
]


@dataclass(frozen=True)
class BoundEntry:
    text: str
    params: tuple
    fiber: str = "y"

    def formula(self, char: int = 0):
        return parse(self.text, char)


# Families of fibers in y, degree at most 3.
BOUNDING = [
    BoundEntry("a*y = 1", ("a",)),
    BoundEntry("y^2 = a", ("a",)),
    BoundEntry("y != a", ("a",)),
    BoundEntry("a*y = 0", ("a",)),
    BoundEntry("y^3 = a*y", ("a",)),
    BoundEntry("(y - a)*(y - b) = 0 & y != 0", ("a", "b")),
    BoundEntry("a*y^2 + b*y + 1 = 0", ("a", "b")),
    BoundEntry("y^2 = a | a*y = 1", ("a",)),
    BoundEntry("a*y = b | y = 1", ("a", "b")),
    BoundEntry("y^3 = a & y != 1", ("a",)),
    BoundEntry("E z. (z^2 = y & a*z = 1)", ("a",)),
]


@dataclass(frozen=True)
class SentenceEntry:
    text: str
    char: int
    truth: bool

    def formula(self):
        return parse(self.text, self.char)


SENTENCES = [
    SentenceEntry("A x. E y. y^2 = x", 0, True),
    SentenceEntry("E y. (y^2 + 1 = 0 & y = 1)", 0, False),
    SentenceEntry("E y. y^2 + y + 1 = 0", 2, True),
    SentenceEntry("A x. x = 0", 0, False),
    SentenceEntry("A x. x = 0", 3, False),
    SentenceEntry("E y. y^2 = 2", 5, True),
    SentenceEntry("A y. y^3 - y = 0", 3, False),
    SentenceEntry("E x. (x^2 = 2 & x^3 = 3)", 0, False),
    SentenceEntry("E x. A y. x*y = 0", 0, True),
    SentenceEntry("A x. E y. x*y = 1", 0, False),
    SentenceEntry("A x. (x != 0 -> E y. x*y = 1)", 7, True),
    SentenceEntry("A a. A b. (a != 0 -> E y. a*y^2 + b*y + 1 = 0)", 0, True),
    SentenceEntry("A a. A b. (a != 0 -> E y. a*y^2 + b*y + 1 = 0)", 2, True),
    SentenceEntry("E x. E y. (x*y = 1 & x + y = 0)", 2, True),
    SentenceEntry("A x. (x^2 = 1 -> x = 1)", 2, True),
    SentenceEntry("A x. (x^2 = 1 -> x = 1)", 3, False),
    SentenceEntry("E x. (2*x = 1)", 2, False),
    SentenceEntry("E x. (2*x = 1)", 0, True),
    SentenceEntry("A x. A y. (x^2 = y^2 -> x = y | x = -y)", 0, True),
    SentenceEntry("E x. (x^3 = 1 & x != 1)", 3, False),
    SentenceEntry("E x. (x^3 = 1 & x != 1)", 5, True),
]


def slope_cover_sets():
    """Parameter-free univariate catalog entries (the caller filters to infinite ones)."""
    return [e for e in UNIVARIATE if not e.params]


def all_texts():
    """Every catalog formula as (text, characteristic) for round-trip checks."""
    out = [(e.text, 0) for e in UNIVARIATE]
    out += [(e.text, 0) for e in DIMENSION]
    out += [(e.text, 0) for e in BOUNDING]
    out += [(e.text, e.char) for e in SENTENCES]
    return out
