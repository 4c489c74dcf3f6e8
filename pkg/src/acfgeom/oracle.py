"""Brute-force ground truth over finite fields.

Formulas are evaluated on a grid: every variable gets its own numpy axis,
free variables range over the assigned values and quantified variables over
a whole search field F_{p^M}.  Quantifiers reduce along their axis.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import lcm

import numpy as np

from . import kernels
from .algebra.finite_field import FIELD_CAP, FieldTooLarge, FqElement, GF, fq_make
from .algebra.poly import CoeffDomain, MultiPoly
from .formula import (And, Atom, EQ, Exists, FalseF, Forall, InfMany, Not, Or, TrueF,
                      free_vars, is_quantifier_free, to_dnf)
from .formula.ast import _Quant, children

GRID_CAP = 2 * 10 ** 7


class OracleTooLarge(RuntimeError):
    pass


# ------------------------------------------------------------------ witness bound

@dataclass(frozen=True)
class WitnessBound:
    """Per-quantifier extension factors and the nesting structure.

    ``chain[v]`` is the product of the factors of ``v`` and every quantifier
    enclosing it; ``degree`` (B) is the lcm of those products.
    """
    per_quantifier: dict
    chain: dict
    degree: int
    atom_degree_sum: int

    def base_degree(self, k: int, p: int) -> int:
        """``k`` doubled until every search field outnumbers the atoms' roots."""
        base = k
        if self.per_quantifier:
            while p ** base <= self.atom_degree_sum:
                base *= 2
        return base

    def search_degree(self, k: int, p: int) -> int:
        """Degree M of the largest search field for assignments living in F_{p^k}."""
        return self.base_degree(k, p) * self.degree

    def level_degrees(self, k: int, p: int) -> dict:
        """Degree of the field each quantified variable ranges over."""
        base = self.base_degree(k, p)
        return {v: base * c for v, c in self.chain.items()}


def witness_bound(f) -> WitnessBound:
    """Degree bound computed from syntactic degrees before any simplification.

    A quantified variable of degree ``d`` under its quantifier contributes
    ``lcm(1..d)``: a root of a degree-d polynomial over F_{p^k} lies in
    F_{p^(k j)} for some ``j <= d``.  A quantifier ranges over the field
    extended by its own factor and those of all enclosing quantifiers.
    """
    per: dict = {}
    chain: dict = {}
    total = sum(max(a.poly.total_degree(), 0) for a in _atoms(f))

    def go(g, outer: int) -> int:
        if isinstance(g, _Quant):
            d = max((a.poly.degree(g.var) for a in _atoms(g.body)), default=0)
            fac = lcm(*range(1, max(1, d) + 1))
            per[g.var] = fac
            chain[g.var] = outer * fac
            return go(g.body, outer * fac)
        return lcm(outer, *(go(c, outer) for c in children(g)))

    return WitnessBound(per, chain, go(f, 1), total)


def _atoms(f):
    if isinstance(f, Atom):
        yield f
    for c in children(f):
        yield from _atoms(c)


# ------------------------------------------------------------------ grid evaluation

class _Grid:
    def __init__(self, field: GF, axes: dict):
        # axes: var -> code array; position fixed by insertion order
        self.F = field
        self.names = list(axes)
        self.ndim = len(self.names)
        self.values = {}
        for i, v in enumerate(self.names):
            shape = [1] * self.ndim
            shape[i] = -1
            self.values[v] = np.asarray(axes[v], dtype=np.int64).reshape(shape)
        size = 1
        for v in self.names:
            size *= len(axes[v])
        if size > GRID_CAP:
            raise OracleTooLarge(f"evaluation grid of {size} points exceeds cap {GRID_CAP}")

    def axis(self, v):
        return self.names.index(v)

    def poly(self, p: MultiPoly) -> np.ndarray:
        F = self.F
        acc = np.zeros([1] * self.ndim, dtype=np.int64)
        for mono, c in p.items():
            cc = F.from_int(int(c))
            if cc == 0:
                continue
            term = np.full([1] * self.ndim, cc, dtype=np.int64)
            for v, e in mono:
                term = kernels.gf_mul(term, kernels.gf_pow(self.values[v], e, F.log, F.exp), F.log, F.exp)
            acc = kernels.gf_add(acc, term, F.log, F.exp, F.zech)
        return acc

    def formula(self, f) -> np.ndarray:
        if isinstance(f, TrueF):
            return np.ones([1] * self.ndim, dtype=bool)
        if isinstance(f, FalseF):
            return np.zeros([1] * self.ndim, dtype=bool)
        if isinstance(f, Atom):
            z = self.poly(f.poly) == 0
            return z if f.rel == EQ else ~z
        if isinstance(f, Not):
            return ~self.formula(f.arg)
        if isinstance(f, And):
            out = np.ones([1] * self.ndim, dtype=bool)
            for a in f.args:
                out = out & self.formula(a)
            return out
        if isinstance(f, Or):
            out = np.zeros([1] * self.ndim, dtype=bool)
            for a in f.args:
                out = out | self.formula(a)
            return out
        if isinstance(f, InfMany):
            raise ValueError("the oracle does not evaluate Einf; rewrite it first")
        if isinstance(f, (Exists, Forall)):
            body = self.formula(f.body)
            ax = self.axis(f.var)
            if isinstance(f, Exists):
                return body.any(axis=ax, keepdims=True)
            return body.all(axis=ax, keepdims=True)
        raise TypeError(type(f).__name__)


def _search_field(f, p: int, k: int, degree_scale: int = 1, cap: int = FIELD_CAP) -> GF:
    wb = witness_bound(f)
    m = wb.search_degree(k, p) * degree_scale
    if p ** m > cap:
        raise OracleTooLarge(f"search field F_{p}^{m} exceeds the cap of {cap} elements")
    try:
        return fq_make(p, m)
    except FieldTooLarge as e:  # pragma: no cover - guarded above
        raise OracleTooLarge(str(e)) from e


def _bound_axes(f, F: GF, k: int, degree_scale: int = 1) -> dict:
    levels = witness_bound(f).level_degrees(k, F.p)
    return {v: F.subfield_codes(m * degree_scale) for v, m in levels.items()}


def _quants(f):
    if isinstance(f, _Quant):
        yield f
    for c in children(f):
        yield from _quants(c)


def eval_fpbar(f, p: int, assignment: dict, degree_scale: int = 1, cap: int = FIELD_CAP) -> bool:
    """Truth of ``f`` in the algebraic closure of F_p under ``assignment``.

    Assignment values are :class:`FqElement` (or integers, read in F_p).
    ``degree_scale`` multiplies the search degree; results must not depend on it.
    """
    fv = free_vars(f)
    missing = fv - set(assignment)
    if missing:
        raise ValueError(f"no value for free variables {sorted(missing)}")
    k = 1
    for val in assignment.values():
        if isinstance(val, FqElement):
            if val.field.p != p:
                raise ValueError("assignment from a field of another characteristic")
            k = lcm(k, val.field.k)
    F = _search_field(f, p, k, degree_scale, cap)
    axes = {}
    for v in sorted(fv):
        val = assignment[v]
        if isinstance(val, FqElement):
            code = int(F.embedding_from(val.field)[val.code])
        else:
            code = F.from_int(int(val))
        axes[v] = np.array([code])
    axes.update(_bound_axes(f, F, k, degree_scale))
    out = _Grid(F, axes).formula(f)
    return bool(out.reshape(-1)[0]) if out.size == 1 else bool(out.all())


def eval_fpbar_all(f, p: int, k: int, variables=None, degree_scale: int = 1,
                   cap: int = FIELD_CAP) -> np.ndarray:
    """Truth values of ``f`` for every assignment of its free variables in F_{p^k}.

    Returns a boolean array with one axis per free variable (sorted by name,
    or in the order of ``variables``), indexed by the F_{p^k} element codes.
    """
    fv = sorted(free_vars(f)) if variables is None else list(variables)
    F = _search_field(f, p, k, degree_scale, cap)
    small = fq_make(p, k)
    emb = F.embedding_from(small)
    axes = {v: emb for v in fv}
    axes.update(_bound_axes(f, F, k, degree_scale))
    g = _Grid(F, axes)
    out = g.formula(f)
    out = np.broadcast_to(out, tuple(len(axes[v]) if i < len(fv) else out.shape[i]
                                      for i, v in enumerate(g.names)))
    return out.reshape(out.shape[:len(fv)]) if len(fv) < g.ndim else np.array(out)


def count_points(f, variables, p: int, m: int, cap: int = FIELD_CAP) -> int:
    """``|{x in F_{p^m}^n : f(x)}|`` for quantifier-free ``f``."""
    if not is_quantifier_free(f):
        raise ValueError("point counting needs a quantifier-free formula")
    variables = list(variables)
    extra = free_vars(f) - set(variables)
    if extra:
        raise ValueError(f"free variables {sorted(extra)} not among {variables}")
    if (p ** m) ** len(variables) > min(cap, GRID_CAP):
        raise OracleTooLarge(f"{p}^{m * len(variables)} points exceed the cap")
    F = fq_make(p, m)
    g = _Grid(F, {v: F.elements() for v in variables})
    out = np.broadcast_to(g.formula(f), tuple([F.q] * len(variables)))
    return int(out.sum())


def point_count_growth(f, variables, p: int, m_max: int, cap: int = FIELD_CAP) -> list[int]:
    return [count_points(f, variables, p, m, cap) for m in range(1, m_max + 1)]


# ------------------------------------------------------------------ structural finiteness

FINITE = "finite"
INFINITE = "infinite"


def qf_univariate_finiteness(f, v: str, ctx=None) -> str:
    """Finite or infinite, read off the DNF of a quantifier-free formula in one variable.

    A disjunct with no equation of positive degree in ``v`` is cofinite once
    its inequation product is nonzero, hence infinite; everything else is finite.
    """
    if not is_quantifier_free(f):
        raise ValueError("structural finiteness needs a quantifier-free formula")
    extra = free_vars(f) - {v}
    if extra:
        raise ValueError(f"unexpected free variables {sorted(extra)}")
    budget = getattr(ctx, "budget", 100_000)
    for d in to_dnf(f, budget):
        if any(p.degree(v) > 0 for p in d.eqs):
            continue
        # constants were folded by to_dnf; left-over equations would be constant
        if any(p.is_constant() and not p.is_zero() for p in d.eqs):
            continue
        if all(not q.is_zero() for q in d.neqs):
            return INFINITE
    return FINITE


def _specialize(p: MultiPoly, v: str, F: GF, point: dict) -> list[int]:
    """Coefficient codes (lowest first, trimmed) of ``p(point, v)`` as a polynomial in ``v``."""
    out = []
    for c in p.coeffs_in(v):
        acc = 0
        for mono, coeff in c.items():
            t = F.from_int(int(coeff))
            for u, e in mono:
                t = F.mul(t, F.pow(point[u], e))
            acc = F.add(acc, t)
        out.append(acc)
    while out and out[-1] == 0:
        out.pop()
    return out


def fiber_finiteness(f, v: str, F: GF, point: dict, ctx=None) -> str:
    """Structural finiteness of the fiber ``{y : f(point, y)}`` over the algebraic closure.

    ``point`` maps every other free variable of ``f`` to a code of ``F``.
    """
    budget = getattr(ctx, "budget", 100_000)
    for d in to_dnf(f, budget):
        eqs = [_specialize(p, v, F, point) for p in d.eqs]
        if any(len(e) == 1 for e in eqs):
            continue  # nonzero constant: empty
        if any(len(e) > 1 for e in eqs):
            continue  # finite part
        if all(_specialize(q, v, F, point) for q in d.neqs):
            return INFINITE
    return FINITE


def fiber_points(f, v: str, p: int, k: int, point: dict, max_degree: int) -> tuple[list[int], GF]:
    """All points of a quantifier-free fiber over the algebraic closure.

    ``point`` maps parameters to codes of F_{p^k}.  Every root of a
    polynomial of degree <= ``max_degree`` over F_{p^k} lies in
    F_{p^(k*lcm(1..max_degree))}, which is searched exhaustively.  Returns the
    codes of the fiber points together with that field.
    """
    m = k * lcm(*range(1, max(1, max_degree) + 1))
    if p ** m > FIELD_CAP:
        raise OracleTooLarge(f"fiber search field F_{p}^{m} exceeds cap")
    F = fq_make(p, m)
    emb = F.embedding_from(fq_make(p, k))
    axes = {u: np.array([emb[c]]) for u, c in point.items()}
    axes[v] = F.elements()
    g = _Grid(F, axes)
    out = np.broadcast_to(g.formula(f), tuple(len(axes[u]) for u in g.names)).reshape(-1)
    return [int(c) for c in F.elements()[out]], F


# ------------------------------------------------------------------ sweeps

SWEEP_QS = (2, 3, 4, 5, 7, 8, 9, 11)


def field_of_order(q: int) -> GF:
    for p in range(2, q + 1):
        k, n = 0, q
        while n % p == 0:
            n //= p
            k += 1
        if n == 1 and k:
            return fq_make(p, k)
    raise ValueError(f"{q} is not a prime power")


@dataclass
class SweepReport:
    q: int
    subsets: int
    cover: int
    injection: int
    failures: int

    @property
    def ok(self) -> bool:
        return self.failures == 0 and self.cover + self.injection == self.subsets

    def to_dict(self):
        return {"q": self.q, "subsets": self.subsets, "cover": self.cover,
                "injection": self.injection, "failures": self.failures, "ok": self.ok}


def exhaustive_trick_sweep(q: int) -> SweepReport:
    """Run the slope-set dichotomy on every subset of F_q."""
    from .geometric import dichotomy
    cover = inj = bad = 0
    for mask in range(1 << q):
        members = [e for e in range(q) if mask >> e & 1]
        r = dichotomy(members, q)
        if r.cover:
            cover += 1
        elif r.injective:
            inj += 1
        else:
            bad += 1
    return SweepReport(q, 1 << q, cover, inj, bad)


def fused_trick_sweep(q: int) -> SweepReport:
    """Same sweep in a single kernel call (used for benchmarking)."""
    F = field_of_order(q)
    cover, inj, bad = kernels.sweep_subsets(q, F.log, F.exp, F.zech, F.neg_table)
    return SweepReport(q, 1 << q, int(cover), int(inj), int(bad))
