"""Negation normal form, DNF matrices and prenexing."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..algebra.poly import MultiPoly
from .ast import (And, Atom, EQ, Exists, FalseF, Forall, InfMany, NE, Not, Or, TrueF,
                  conj, disj, is_quantifier_free)

DEFAULT_BUDGET = 100_000


class BudgetExceeded(RuntimeError):
    def __init__(self, size: int, cap: int, what: str = "DNF", unit: str = "atoms"):
        super().__init__(f"{what} needs more than the configured cap of {cap} {unit} "
                         f"(reached {size})")
        self.size = size
        self.cap = cap


def nnf(f):
    """Push negations to the atoms (quantifier-free input)."""
    if isinstance(f, Not):
        g = f.arg
        if isinstance(g, Not):
            return nnf(g.arg)
        if isinstance(g, Atom):
            return g.negate()
        if isinstance(g, TrueF):
            return FalseF()
        if isinstance(g, FalseF):
            return TrueF()
        if isinstance(g, And):
            return Or(tuple(nnf(Not(a)) for a in g.args))
        if isinstance(g, Or):
            return And(tuple(nnf(Not(a)) for a in g.args))
        if isinstance(g, Exists):
            return Forall(g.var, nnf(Not(g.body)))
        if isinstance(g, Forall):
            return Exists(g.var, nnf(Not(g.body)))
        raise TypeError(f"cannot push negation through {type(g).__name__}")
    if isinstance(f, And):
        return And(tuple(nnf(a) for a in f.args))
    if isinstance(f, Or):
        return Or(tuple(nnf(a) for a in f.args))
    if isinstance(f, (Exists, Forall, InfMany)):
        return type(f)(f.var, nnf(f.body))
    return f


@dataclass(frozen=True)
class Disjunct:
    """Conjunction of ``p = 0`` for p in ``eqs`` and ``q != 0`` for q in ``neqs``."""
    eqs: tuple = ()
    neqs: tuple = ()

    def size(self) -> int:
        return len(self.eqs) + len(self.neqs)

    def to_formula(self):
        return conj(*[Atom(p, EQ) for p in self.eqs], *[Atom(q, NE) for q in self.neqs])


@dataclass
class DnfMatrix:
    disjuncts: list = field(default_factory=list)

    def to_formula(self):
        return disj(*[d.to_formula() for d in self.disjuncts])

    def size(self) -> int:
        return sum(d.size() for d in self.disjuncts)

    def __iter__(self):
        return iter(self.disjuncts)

    def __len__(self):
        return len(self.disjuncts)


def _merge(a: Disjunct, b: Disjunct) -> Disjunct | None:
    eqs = list(a.eqs)
    for p in b.eqs:
        if p not in eqs:
            eqs.append(p)
    neqs = list(a.neqs)
    for q in b.neqs:
        if q not in neqs:
            neqs.append(q)
    if set(eqs) & set(neqs):
        return None
    return Disjunct(tuple(eqs), tuple(neqs))


def _atom_dnf(a: Atom) -> list[Disjunct]:
    p = a.poly
    if p.is_constant():
        holds = p.is_zero() == (a.rel == EQ)
        return [Disjunct()] if holds else []
    p = p.primitive()
    return [Disjunct((p,), ())] if a.rel == EQ else [Disjunct((), (p,))]


def to_dnf(f, budget: int = DEFAULT_BUDGET) -> DnfMatrix:
    """Disjunctive normal form of a quantifier-free formula.

    Constant atoms are folded, atom polynomials are scaled to a canonical
    representative, duplicate atoms are merged and disjuncts containing both
    ``p = 0`` and ``p != 0`` are dropped.
    """
    if not is_quantifier_free(f):
        raise ValueError("to_dnf needs a quantifier-free formula")

    def check(ds):
        n = sum(d.size() for d in ds)
        if n > budget:
            raise BudgetExceeded(n, budget)
        return ds

    def go(g) -> list[Disjunct]:
        if isinstance(g, TrueF):
            return [Disjunct()]
        if isinstance(g, FalseF):
            return []
        if isinstance(g, Atom):
            return _atom_dnf(g)
        if isinstance(g, Or):
            out: list[Disjunct] = []
            seen = set()
            for a in g.args:
                for d in go(a):
                    key = (frozenset(d.eqs), frozenset(d.neqs))
                    if key not in seen:
                        seen.add(key)
                        out.append(d)
            return check(out)
        if isinstance(g, And):
            acc = [Disjunct()]
            for a in g.args:
                part = go(a)
                nxt = []
                seen = set()
                for d1 in acc:
                    for d2 in part:
                        m = _merge(d1, d2)
                        if m is None:
                            continue
                        key = (frozenset(m.eqs), frozenset(m.neqs))
                        if key not in seen:
                            seen.add(key)
                            nxt.append(m)
                acc = check(nxt)
                if not acc:
                    break
            return acc
        raise TypeError(f"unexpected node {type(g).__name__}")

    return DnfMatrix(go(nnf(f)))


def prenex(f):
    """Prenex form of an Exists/Forall formula whose binders are pairwise distinct."""
    prefix: list = []

    def go(g, polarity: bool):
        # returns the matrix; quantifiers are appended to prefix in order
        if isinstance(g, (Exists, Forall)):
            q = type(g) if polarity else (Forall if isinstance(g, Exists) else Exists)
            prefix.append((q, g.var))
            return go(g.body, polarity)
        if isinstance(g, InfMany):
            raise ValueError("Einf cannot be prenexed; rewrite it first")
        if isinstance(g, Not):
            return Not(go(g.arg, not polarity))
        if isinstance(g, (And, Or)):
            return type(g)(tuple(go(a, polarity) for a in g.args))
        return g

    matrix = go(f, True)
    for q, v in reversed(prefix):
        matrix = q(v, matrix)
    return matrix
