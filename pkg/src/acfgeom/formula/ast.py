"""First-order formulas over the ring language, plus the quantifier Einf."""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterator, Union

from ..algebra.poly import CoeffDomain, MultiPoly


class SubstitutionError(ValueError):
    pass


@dataclass(frozen=True)
class TrueF:
    def __str__(self):
        from .printer import to_text
        return to_text(self)


@dataclass(frozen=True)
class FalseF:
    def __str__(self):
        from .printer import to_text
        return to_text(self)


EQ = "="
NE = "!="


@dataclass(frozen=True)
class Atom:
    """``poly = 0`` or ``poly != 0``.  Rational coefficients are cleared on construction."""
    poly: MultiPoly
    rel: str = EQ

    def __post_init__(self):
        if self.rel not in (EQ, NE):
            raise ValueError(f"bad relation {self.rel!r}")
        p = self.poly
        if not p.domain.characteristic and any(isinstance(c, Fraction) for _, c in p.items()):
            den = lcm(*(Fraction(c).denominator for _, c in p.items()))
            object.__setattr__(self, "poly", p.scale(den))

    def negate(self) -> Atom:
        return Atom(self.poly, NE if self.rel == EQ else EQ)

    def __str__(self):
        from .printer import to_text
        return to_text(self)


@dataclass(frozen=True)
class Not:
    arg: "Formula"

    def __str__(self):
        from .printer import to_text
        return to_text(self)


@dataclass(frozen=True)
class And:
    args: tuple

    def __init__(self, *args):
        if len(args) == 1 and isinstance(args[0], (list, tuple)):
            args = args[0]
        object.__setattr__(self, "args", tuple(args))

    def __str__(self):
        from .printer import to_text
        return to_text(self)


@dataclass(frozen=True)
class Or:
    args: tuple

    def __init__(self, *args):
        if len(args) == 1 and isinstance(args[0], (list, tuple)):
            args = args[0]
        object.__setattr__(self, "args", tuple(args))

    def __str__(self):
        from .printer import to_text
        return to_text(self)


@dataclass(frozen=True)
class _Quant:
    var: str
    body: "Formula"

    def __str__(self):
        from .printer import to_text
        return to_text(self)


class Exists(_Quant):
    pass


class Forall(_Quant):
    pass


class InfMany(_Quant):
    """There are infinitely many ``var`` with ``body``."""


Formula = Union[TrueF, FalseF, Atom, Not, And, Or, Exists, Forall, InfMany]
QUANTIFIERS = (Exists, Forall, InfMany)


def eq(p: MultiPoly, q: MultiPoly | int = 0) -> Atom:
    return Atom(p - q, EQ)


def ne(p: MultiPoly, q: MultiPoly | int = 0) -> Atom:
    return Atom(p - q, NE)


def conj(*args) -> Formula:
    """And with flattening and trivial-constant removal."""
    out = []
    for a in args:
        if isinstance(a, TrueF):
            continue
        if isinstance(a, FalseF):
            return FalseF()
        out.extend(a.args if isinstance(a, And) else [a])
    if not out:
        return TrueF()
    return out[0] if len(out) == 1 else And(out)


def disj(*args) -> Formula:
    out = []
    for a in args:
        if isinstance(a, FalseF):
            continue
        if isinstance(a, TrueF):
            return TrueF()
        out.extend(a.args if isinstance(a, Or) else [a])
    if not out:
        return FalseF()
    return out[0] if len(out) == 1 else Or(out)


def neg(f: Formula) -> Formula:
    if isinstance(f, TrueF):
        return FalseF()
    if isinstance(f, FalseF):
        return TrueF()
    if isinstance(f, Not):
        return f.arg
    return Not(f)


# ---------------------------------------------------------------- traversal

def children(f: Formula) -> tuple:
    if isinstance(f, Not):
        return (f.arg,)
    if isinstance(f, (And, Or)):
        return f.args
    if isinstance(f, _Quant):
        return (f.body,)
    return ()


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    for c in children(f):
        yield from subformulas(c)


def atoms(f: Formula) -> Iterator[Atom]:
    for g in subformulas(f):
        if isinstance(g, Atom):
            yield g


def free_vars(f: Formula) -> set[str]:
    if isinstance(f, Atom):
        return set(f.poly.variables)
    if isinstance(f, _Quant):
        return free_vars(f.body) - {f.var}
    out: set[str] = set()
    for c in children(f):
        out |= free_vars(c)
    return out


def bound_vars(f: Formula) -> list[str]:
    return [g.var for g in subformulas(f) if isinstance(g, _Quant)]


def all_names(f: Formula) -> set[str]:
    return free_vars(f) | set(bound_vars(f)) | {v for a in atoms(f) for v in a.poly.variables}


def is_quantifier_free(f: Formula) -> bool:
    return not any(isinstance(g, _Quant) for g in subformulas(f))


def has_infmany(f: Formula) -> bool:
    return any(isinstance(g, InfMany) for g in subformulas(f))


def domain_of(f: Formula, default: CoeffDomain | None = None) -> CoeffDomain | None:
    for a in atoms(f):
        return a.poly.domain
    return default


def rebuild(f: Formula, new_children) -> Formula:
    if isinstance(f, Not):
        return Not(new_children[0])
    if isinstance(f, And):
        return And(tuple(new_children))
    if isinstance(f, Or):
        return Or(tuple(new_children))
    if isinstance(f, _Quant):
        return type(f)(f.var, new_children[0])
    return f


def map_atoms(f: Formula, fn) -> Formula:
    if isinstance(f, Atom):
        return fn(f)
    kids = children(f)
    if not kids:
        return f
    return rebuild(f, [map_atoms(c, fn) for c in kids])


def with_domain(f: Formula, domain: CoeffDomain) -> Formula:
    """Reinterpret integer coefficients in another characteristic."""
    return map_atoms(f, lambda a: Atom(a.poly.with_domain(domain), a.rel))


# ---------------------------------------------------------------- names

_SUFFIX = re.compile(r"^(.*?)_(\d+)$")


def fresh_name(base: str, avoid) -> str:
    if base not in avoid:
        return base
    m = _SUFFIX.match(base)
    stem = m.group(1) if m else base
    i = 1
    while f"{stem}_{i}" in avoid:
        i += 1
    return f"{stem}_{i}"


def substitute(f: Formula, v: str, p: MultiPoly | int) -> Formula:
    """Replace free ``v`` by ``p``.  ``v`` must not be bound anywhere in ``f``."""
    if v in bound_vars(f):
        raise SubstitutionError(f"{v} is bound in the formula")
    if not isinstance(p, MultiPoly):
        dom = domain_of(f)
        if dom is None:
            return f
        p = MultiPoly.const(p, dom)
    clash = set(p.variables) & set(bound_vars(f))
    if clash:
        raise SubstitutionError(f"substituted term would be captured by {sorted(clash)}")
    return map_atoms(f, lambda a: Atom(a.poly.subs(v, p), a.rel) if a.poly.mentions(v) else a)


def rename_free(f: Formula, mapping: dict[str, str]) -> Formula:
    if isinstance(f, Atom):
        return Atom(f.poly.rename(mapping), f.rel)
    if isinstance(f, _Quant):
        inner = {k: v for k, v in mapping.items() if k != f.var}
        return type(f)(f.var, rename_free(f.body, inner))
    kids = children(f)
    if not kids:
        return f
    return rebuild(f, [rename_free(c, mapping) for c in kids])


def freshen_bound(f: Formula, avoid: set[str]) -> Formula:
    """Rename every binder so it is distinct from ``avoid`` and from all other binders.

    ``avoid`` is updated in place with the names taken.
    """
    if isinstance(f, _Quant):
        new = fresh_name(f.var, avoid)
        avoid.add(new)
        body = rename_free(f.body, {f.var: new}) if new != f.var else f.body
        return type(f)(new, freshen_bound(body, avoid))
    kids = children(f)
    if not kids:
        return f
    return rebuild(f, [freshen_bound(c, avoid) for c in kids])


def alpha_equal(f: Formula, g: Formula) -> bool:
    """Structural equality up to the names of bound variables."""
    counter = [0]

    def canon(h, env):
        if isinstance(h, Atom):
            return ("atom", h.rel, h.poly.rename(env))
        if isinstance(h, _Quant):
            counter[0] += 1
            name = f"#{counter[0]}"
            return (type(h).__name__, canon(h.body, {**env, h.var: name}))
        return (type(h).__name__,) + tuple(canon(c, env) for c in children(h))

    c1 = canon(f, {})
    counter[0] = 0
    return c1 == canon(g, {})
