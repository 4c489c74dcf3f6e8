"""Eliminating Einf with the slope set, dimension, and algebraic boundedness.

Over an infinite field in which acl satisfies exchange, a definable
``X ⊆ K`` is infinite exactly when every ``s`` is a secant slope
``(y - y')/(x' - x)`` of points of ``X``.  That turns ``Einf v. phi`` into the
first-order sentence built by :func:`slope_cover_formula`, which ordinary
quantifier elimination then decides.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from itertools import product

from . import kernels
from .algebra.poly import MultiPoly
from .algebra.ratfunc import RatFunc, ratfunc_enumerate
from .formula import (And, Atom, EQ, Exists, FalseF, Forall, InfMany, NE, Or, TrueF,
                      BudgetExceeded, all_names, conj, disj, fresh_name, free_vars,
                      freshen_bound, is_quantifier_free, rename_free, to_dnf)
from .formula.ast import children, rebuild
from .oracle import FINITE, field_of_order, qf_univariate_finiteness
from .qe import FieldContext, decide, qe, simplify


class PreconditionError(ValueError):
    pass


# ------------------------------------------------------------------ Einf rewrite

def slope_cover_formula(phi, v: str, ctx: FieldContext, avoid: set | None = None):
    """``A s. E x y x' y'. phi(x) & phi(y) & phi(x') & phi(y') & x != x' & s(x' - x) = y - y'``.

    Names taken for binders are added to ``avoid`` when it is given, so
    repeated calls sharing one set never reuse a binder.
    """
    avoid = set() if avoid is None else avoid
    avoid |= all_names(phi)
    names = []
    for base in ("s", "x", "y", "xp", "yp"):
        n = fresh_name(base, avoid)
        avoid.add(n)
        names.append(n)
    s, x, y, xp, yp = names
    copies = []
    for target in (x, y, xp, yp):
        copies.append(freshen_bound(rename_free(phi, {v: target}), avoid))
    dom = ctx.coeff
    S, X, Y, XP, YP = (MultiPoly.var(n, dom) for n in names)
    matrix = And(tuple(copies) + (Atom(X - XP, NE), Atom(S * (XP - X) - (Y - YP), EQ)))
    return Forall(s, Exists(x, Exists(y, Exists(xp, Exists(yp, matrix)))))


def _split_inf_many(body, v: str, ctx: FieldContext, avoid: set):
    """``Einf v. (D1 | D2 | ...)`` as ``P1 & Einf v. C1 | ...``.

    A finite union is infinite iff one member is, and a conjunct not
    mentioning ``v`` only gates the whole set, so each slope criterion is
    built for a single conjunction ``C_i`` of atoms in ``v``.
    """
    parts = []
    for d in to_dnf(simplify(body, ctx), ctx.budget):
        gate = [Atom(p, EQ) for p in d.eqs if not p.mentions(v)]
        gate += [Atom(q, NE) for q in d.neqs if not q.mentions(v)]
        core = conj(*[Atom(p, EQ) for p in d.eqs if p.mentions(v)],
                    *[Atom(q, NE) for q in d.neqs if q.mentions(v)])
        parts.append(conj(*gate, slope_cover_formula(core, v, ctx, avoid)))
    return disj(*parts)


def rewrite_inf_many(f, ctx: FieldContext | None = None, avoid: set | None = None,
                     split: bool = True):
    """Replace every ``Einf`` (innermost first) by its slope-cover criterion.

    With ``split`` (the default) the body is first broken into its DNF
    disjuncts, one criterion per disjunct; ``split=False`` builds a single
    criterion for the whole body.
    """
    ctx = ctx or FieldContext()
    f = ctx.adopt(f)
    avoid = set(avoid or ()) | all_names(f)

    def go(g):
        if isinstance(g, InfMany):
            body = go(g.body)
            if not is_quantifier_free(body):
                body = qe(body, ctx)
            if split:
                return _split_inf_many(body, g.var, ctx, avoid)
            return slope_cover_formula(body, g.var, ctx, avoid)
        kids = children(g)
        if not kids:
            return g
        return rebuild(g, [go(c) for c in kids])

    return go(f)


def _project(f, keep: str, others, avoid: set):
    """``E others. f`` with the bound copies renamed apart."""
    mapping = {}
    for o in others:
        n = fresh_name(o, avoid)
        avoid.add(n)
        mapping[o] = n
    g = freshen_bound(rename_free(f, mapping), avoid)
    for o in reversed(list(others)):
        g = Exists(mapping[o], g)
    return g


def infinite_formula(f, variables, ctx: FieldContext):
    variables = list(variables)
    if not variables:
        raise ValueError("is_infinite needs at least one variable")
    avoid = all_names(f) | set(variables)
    parts = []
    for i, v in enumerate(variables):
        others = variables[:i] + variables[i + 1:]
        parts.append(InfMany(v, _project(f, v, others, avoid) if others else f))
    return parts[0] if len(parts) == 1 else Or(tuple(parts))


def is_infinite(f, variables, ctx: FieldContext | None = None):
    """Whether ``{variables : f}`` is infinite.

    Returns a bool when no parameters remain, otherwise the quantifier-free
    condition on the parameters.
    """
    ctx = ctx or FieldContext()
    f = ctx.adopt(f)
    crit = qe(rewrite_inf_many(infinite_formula(f, variables, ctx), ctx), ctx)
    if free_vars(crit):
        return crit
    return decide(crit, ctx)


# ------------------------------------------------------------------ dimension

@dataclass
class DimResult:
    dim: int
    variables: list
    levels: list = field(default_factory=list)  # [{"k": k, "holds": bool, "coords": {v: bool}}]

    def to_dict(self):
        return {"dim": self.dim, "variables": self.variables, "levels": self.levels}

    def to_text(self) -> str:
        lines = [f"dim {self.dim}"]
        for lv in self.levels:
            coords = " ".join(f"{v}:{'yes' if ok else 'no'}" for v, ok in lv["coords"].items())
            lines.append(f"level {lv['k']} {'holds' if lv['holds'] else 'fails'}"
                         + (f" {coords}" if coords else ""))
        return "\n".join(lines)


class _DimCriteria:
    """Quantifier-free conditions on parameters for ``dim{vars : f} >= k``, memoized."""

    def __init__(self, f, ctx: FieldContext):
        self.f = f
        self.ctx = ctx
        self.memo: dict = {}
        self.avoid = all_names(f)

    def at_least(self, variables: tuple, k: int):
        key = (variables, k)
        if key not in self.memo:
            self.memo[key] = self._compute(variables, k)
        return self.memo[key]

    def coordinate(self, variables: tuple, v: str, k: int):
        """Infinitely many values of ``v`` whose fiber has dimension >= k - 1."""
        rest = tuple(u for u in variables if u != v)
        inner = self.at_least(rest, k - 1)
        return qe(rewrite_inf_many(InfMany(v, inner), self.ctx, self.avoid), self.ctx)

    def _compute(self, variables, k):
        ctx = self.ctx
        if k <= 0:
            g = self.f
            for v in reversed(variables):
                g = Exists(v, g)
            return qe(g, ctx)
        if k > len(variables):
            return FalseF()
        return simplify(disj(*[self.coordinate(variables, v, k) for v in variables]), ctx)


def dimension(f, variables, ctx: FieldContext | None = None) -> DimResult:
    """Dimension of ``{variables : f}``; -1 for the empty set."""
    ctx = ctx or FieldContext()
    f = ctx.adopt(f)
    variables = tuple(variables)
    extra = free_vars(f) - set(variables)
    if extra:
        raise ValueError(f"free variables {sorted(extra)} are not among {list(variables)}")
    crit = _DimCriteria(f, ctx)
    nonempty = decide(crit.at_least(variables, 0), ctx)
    levels = [{"k": 0, "holds": nonempty, "coords": {}}]
    if not nonempty:
        return DimResult(-1, list(variables), levels)
    dim = 0
    for k in range(1, len(variables) + 1):
        coords = {v: decide(crit.coordinate(variables, v, k), ctx) for v in variables}
        holds = any(coords.values())
        levels.append({"k": k, "holds": holds, "coords": coords})
        if not holds:
            break
        dim = k
    return DimResult(dim, list(variables), levels)


def dimension_criterion(f, variables, k: int, ctx: FieldContext | None = None):
    """Parametric condition for ``dim{variables : f} >= k``."""
    ctx = ctx or FieldContext()
    return _DimCriteria(ctx.adopt(f), ctx).at_least(tuple(variables), k)


# ------------------------------------------------------------------ bounding polynomials

WITNESS_CAP = 4096


@dataclass
class BoundingSet:
    fiber_var: str
    params: list
    witnesses: list
    uniform_bound: int

    def to_dict(self):
        return {"fiber_var": self.fiber_var, "params": self.params,
                "witnesses": [str(w) for w in self.witnesses],
                "uniform_bound": self.uniform_bound}

    def to_text(self) -> str:
        lines = [f"fiber {self.fiber_var}", f"bound {self.uniform_bound}"]
        lines += [f"witness {w}" for w in self.witnesses]
        return "\n".join(lines)


def bounding_polys(f, params, fiber_var: str, ctx: FieldContext | None = None) -> BoundingSet:
    """Polynomials trapping every finite fiber ``f(a, K)`` and the resulting size bound.

    A finite fiber is the union of the finite fibers of the DNF disjuncts it
    meets, and each of those lies in the zero set of one of its equations that
    does not vanish at ``a``.  The witnesses are therefore the products of one
    positive-degree equation from each disjunct in a nonempty set of disjuncts.
    """
    ctx = ctx or FieldContext()
    f = ctx.adopt(f)
    extra = free_vars(f) - set(params) - {fiber_var}
    if extra:
        raise ValueError(f"free variables {sorted(extra)} are neither parameters nor the fiber variable")
    y = fiber_var
    dnf = to_dnf(qe(f, ctx), ctx.budget)
    groups = []
    for d in dnf:
        eqs = [p for p in d.eqs if p.degree(y) > 0]
        if eqs and eqs not in groups:
            groups.append(eqs)
    count = reduce(lambda a, g: a * (len(g) + 1), groups, 1) - 1
    if count > WITNESS_CAP:
        raise BudgetExceeded(count, WITNESS_CAP)
    seen = []
    one = MultiPoly.const(1, ctx.coeff)
    for choice in product(*[[None] + g for g in groups]):
        picked = [c for c in choice if c is not None]
        if not picked:
            continue
        w = reduce(lambda a, b: a * b, picked, one).primitive()
        if w not in seen:
            seen.append(w)
    seen.sort(key=lambda w: (w.degree(y), len(w.terms), str(w)))
    bound = max((w.degree(y) for w in seen), default=0)
    return BoundingSet(y, list(params), seen, bound)


# ------------------------------------------------------------------ slope cover

def slope_cover_check(f, ctx: FieldContext | None = None, var: str | None = None) -> bool:
    """Decide that every field element is a secant slope of the infinite set ``{v : f}``.

    ``var`` names the set's variable when ``f`` does not mention it (``true``).
    """
    ctx = ctx or FieldContext()
    f = ctx.adopt(f)
    fv = free_vars(f)
    if len(fv) > 1 or (var is not None and fv - {var}):
        raise PreconditionError(f"expected the single free variable of the set, got {sorted(fv)}")
    v = var or (next(iter(fv)) if fv else "x")
    if qf_univariate_finiteness(qe(f, ctx), v, ctx) == FINITE:
        raise PreconditionError("the set is finite")
    return decide(slope_cover_formula(f if is_quantifier_free(f) else qe(f, ctx), v, ctx), ctx)


# ------------------------------------------------------------------ finite combinatorics

@dataclass
class DichotomyReport:
    q: int
    members: list
    slopes: list
    cover: bool
    slope: int | None
    injective: bool

    def label(self, code):
        F = field_of_order(self.q)
        return str(F.element(F.coords(code))) if F.k > 1 else str(code)

    def to_dict(self):
        return {"q": self.q, "set": [self.label(c) for c in self.members],
                "slope_set": [self.label(c) for c in self.slopes],
                "cover": self.cover,
                "injection_slope": None if self.slope is None else self.label(self.slope),
                "injective": self.injective}

    def to_text(self) -> str:
        d = self.to_dict()
        lines = [f"q {self.q}", "set {" + ", ".join(d["set"]) + "}",
                 "slope set {" + ", ".join(d["slope_set"]) + "}"]
        if self.cover:
            lines.append("cover: slope set is the whole field")
        else:
            lines.append(f"injection slope {d['injection_slope']} "
                         f"({'injective' if self.injective else 'NOT injective'})")
        return "\n".join(lines)


def dichotomy(members, q: int) -> DichotomyReport:
    """Slope set of a subset of F_q, or a slope ``a`` with ``(x, y) -> a x + y`` injective.

    ``members`` are element codes of F_q (plain residues when q is prime).
    """
    F = field_of_order(q)
    members = sorted({int(m) for m in members})
    if any(m < 0 or m >= q for m in members):
        raise ValueError(f"codes must lie in 0..{q - 1}")
    mask = kernels.slope_set(members, F.log, F.exp, F.zech, F.neg_table)
    slopes = [int(c) for c in range(q) if mask[c]]
    if len(slopes) == q:
        return DichotomyReport(q, members, slopes, True, None, False)
    a = next(c for c in range(q) if not mask[c])
    ok = kernels.injective(members, a, F.log, F.exp, F.zech)
    return DichotomyReport(q, members, slopes, False, a, bool(ok))


@dataclass
class FrobeniusReport:
    p: int
    degree_bound: int
    elements: int
    pairs: int
    collisions: int
    sample: list

    def to_dict(self):
        return {"p": self.p, "degree_bound": self.degree_bound, "elements": self.elements,
                "pairs_checked": self.pairs, "collisions": self.collisions, "sample": self.sample}

    def to_text(self) -> str:
        return (f"p {self.p} degree<= {self.degree_bound}: {self.elements} elements, "
                f"{self.pairs} pairs, {self.collisions} collisions")


FROBENIUS_CAP = 10 ** 6


def frobenius_injection_demo(p: int, d: int, cap: int = FROBENIUS_CAP) -> FrobeniusReport:
    """Check that ``(x, y) -> x^p + t*y^p`` has no collisions on bounded F_p(t) elements."""
    if p not in (2, 3, 5):
        raise ValueError("p must be 2, 3 or 5")
    # polynomials of degree <= d alone give p^(d+1) elements: refuse before enumerating
    if p ** (2 * (d + 1)) > cap:
        raise BudgetExceeded(p ** (2 * (d + 1)), cap, "Frobenius demo", "pairs")
    elems = ratfunc_enumerate(p, d)
    pairs = len(elems) ** 2
    if pairs > cap:
        raise BudgetExceeded(pairs, cap, "Frobenius demo", "pairs")
    t = RatFunc.t(p)
    powers = [e ** p for e in elems]
    tpowers = [t * e for e in powers]
    seen: dict = {}
    collisions = 0
    for i, xp in enumerate(powers):
        for j, typ in enumerate(tpowers):
            img = xp + typ
            if img in seen:
                collisions += 1
            else:
                seen[img] = (i, j)
    sample = [f"({elems[i]}, {elems[j]}) -> {img}" for img, (i, j) in list(seen.items())[:4]]
    return FrobeniusReport(p, d, len(elems), pairs, collisions, sample)
