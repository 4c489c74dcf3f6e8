"""Quantifier elimination for algebraically closed fields of fixed characteristic.

Each existential block ``E v. D`` with ``D`` a conjunction of equations and
inequations is eliminated by splitting on the leading coefficients of the
equations in ``v``, shrinking the equation set with pseudo-remainders until a
single equation is left, and then reading off root existence from the
pseudo-remainder of the inequation product.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from .algebra.poly import CoeffDomain, MultiPoly, QQ, prem
from .algebra.univariate import coprime_base, sole_variable, strip_roots, ugcd
from .formula import (And, Atom, atoms, BudgetExceeded, DEFAULT_BUDGET, EQ, Exists, FalseF, Forall,
                      InfMany, NE, Not, Or, TrueF, conj, disj, domain_of, free_vars, has_infmany,
                      neg, nnf, to_dnf, with_domain)
from .formula.ast import children, rebuild


class FreeVariablesError(ValueError):
    pass


@dataclass
class FieldContext:
    """Algebraically closed field of the given characteristic.

    ``trace`` collects one line per elimination step when it is a list.
    """
    coeff: CoeffDomain = QQ
    budget: int = DEFAULT_BUDGET
    trace: list | None = None

    @classmethod
    def of(cls, characteristic: int = 0, **kw) -> FieldContext:
        return cls(CoeffDomain(characteristic), **kw)

    @property
    def characteristic(self) -> int:
        return self.coeff.characteristic

    def log(self, msg: str):
        if self.trace is not None:
            self.trace.append(msg)

    def adopt(self, f):
        """Move ``f`` into this context's characteristic."""
        dom = domain_of(f)
        if dom is None or dom == self.coeff:
            return f
        if dom.characteristic not in (0, self.coeff.characteristic):
            raise ValueError(f"cannot reinterpret a {dom} formula in {self.coeff}")
        return with_domain(f, self.coeff)


# ------------------------------------------------------------------ simplify

def _monomial_content(p: MultiPoly):
    """Largest monomial dividing every term of ``p`` and the cofactor."""
    common = None
    for mono in p.terms:
        d = dict(mono)
        common = d if common is None else {v: min(e, d[v]) for v, e in common.items() if v in d}
        if not common:
            return (), p
    terms = {}
    for mono, c in p.items():
        rest = tuple((v, e - common.get(v, 0)) for v, e in mono if e > common.get(v, 0))
        terms[rest] = c
    return tuple(sorted(common.items())), MultiPoly(terms, p.domain)


def _split_content(a: Atom):
    """``x^i * y^j * g = 0`` is ``x = 0 | y = 0 | g = 0``; the inequation dually."""
    p = a.poly
    mono, rest = _monomial_content(p)
    if not mono:
        return a
    parts = [Atom(MultiPoly.var(v, p.domain), a.rel) for v, _ in mono]
    if not rest.is_constant():
        parts.append(Atom(rest.primitive(), a.rel))
    if len(parts) == 1:
        return parts[0]
    return Or(tuple(parts)) if a.rel == EQ else And(tuple(parts))


class _Known:
    """Literals assumed true while simplifying a subformula.

    Besides plain membership, ``v = c`` literals are substituted into atoms and
    a known univariate equation ``g(u) = 0`` decides atoms in ``u`` alone whose
    roots contain, or avoid, all roots of ``g``.
    """
    __slots__ = ("lits", "values", "roots")

    def __init__(self, lits=frozenset(), values=None, roots=None):
        self.lits = lits
        self.values = values or {}
        self.roots = roots or {}

    def extend(self, atoms):
        if not atoms:
            return self
        lits = set(self.lits)
        values = dict(self.values)
        roots = dict(self.roots)
        for a in atoms:
            lits.add(a)
            if a.rel != EQ:
                continue
            v = sole_variable(a.poly)
            if v is None:
                continue
            if a.poly.degree(v) == 1:
                if v not in values:
                    c0, c1 = (c.constant_value() for c in a.poly.coeffs_in(v))
                    dom = a.poly.domain
                    values[v] = dom.norm(-c0 * dom.inv(c1))
            else:
                g = ugcd(roots[v], a.poly, v) if v in roots else a.poly
                if not g.is_constant():
                    roots[v] = g
        return _Known(frozenset(lits), values, roots)

    def atom(self, a: Atom):
        p = a.poly
        for v, c in self.values.items():
            if p.mentions(v):
                p = p.subs(v, c)
        if p.is_constant():
            return TrueF() if p.is_zero() == (a.rel == EQ) else FalseF()
        b = Atom(p.primitive(), a.rel)
        if b in self.lits:
            return TrueF()
        if b.negate() in self.lits:
            return FalseF()
        u = sole_variable(p)
        if u is not None and u in self.roots:
            g = self.roots[u]
            h = strip_roots(g, p, u)
            if h.is_constant():
                return TrueF() if a.rel == EQ else FalseF()
            if h.degree(u) == g.degree(u):
                return FalseF() if a.rel == EQ else TrueF()
        return b


_NOTHING = _Known()


def _simp_atom(a: Atom, known: _Known = _NOTHING):
    b = known.atom(a)
    if not isinstance(b, Atom):
        return b
    c = _split_content(b)
    if isinstance(c, Atom):
        return c
    return _simp(c, known)


def _merge_univariate(items, is_and):
    """Fold atoms in one variable with constant coefficients into a single atom.

    In a conjunction ``p1 = 0 & ... & q1 != 0 & ...`` becomes ``g = 0`` with
    ``g`` the part of ``gcd(p_i)`` avoiding the roots of every ``q_j``; a
    disjunction is handled dually.  Returns None when the connective collapses
    to its absorbing constant.
    """
    groups: dict = {}
    for b in items:
        if isinstance(b, Atom):
            v = sole_variable(b.poly)
            if v is not None:
                groups.setdefault(v, []).append(b)
    if not any(len(g) > 1 for g in groups.values()):
        return items
    main, side = (EQ, NE) if is_and else (NE, EQ)
    replaced = {}
    for v, atoms in groups.items():
        if len(atoms) < 2:
            continue
        mains = [a.poly for a in atoms if a.rel == main]
        sides = [a.poly for a in atoms if a.rel == side]
        if not mains:
            continue
        g = mains[0]
        for p in mains[1:]:
            g = ugcd(g, p, v)
        for q in sides:
            if g.is_constant():
                break
            g = strip_roots(g, q, v)
        if g.is_constant():
            return None
        for a in atoms:
            replaced[a] = None
        replaced[atoms[0]] = Atom(g.primitive(), main)
    out = []
    for b in items:
        if b in replaced:
            b = replaced[b]
            if b is None:
                continue
        if b not in out:
            out.append(b)
    return out


def _literal_order(a: Atom):
    # equations in a single variable first: they feed substitution
    return (sole_variable(a.poly) is None, a.rel != EQ, len(a.poly.terms), str(a.poly))


def _simp(f, known: _Known = _NOTHING):
    if isinstance(f, Atom):
        return _simp_atom(f, known)
    if isinstance(f, (TrueF, FalseF)):
        return f
    if isinstance(f, (Exists, Forall, InfMany)):
        body = _simp(f.body)
        if isinstance(body, (TrueF, FalseF)) and not isinstance(f, InfMany):
            return body
        return type(f)(f.var, body)
    if isinstance(f, Not):
        return neg(_simp(f.arg, known))
    is_and = isinstance(f, And)
    unit, zero = (TrueF, FalseF) if is_and else (FalseF, TrueF)
    dual = Or if is_and else And

    # literal arguments one at a time, each under the ones kept before it
    # (never mutually, which could drop a pair of equivalent literals);
    # compound arguments are then simplified under all kept literals
    lits = sorted({a for a in f.args if isinstance(a, Atom)}, key=_literal_order)
    simplified = []
    lit_facts = []
    for a in lits:
        b = _simp_atom(a, known.extend(lit_facts))
        simplified.append(b)
        if isinstance(b, Atom):
            lit_facts.append(b if is_and else b.negate())
    inner = known.extend(lit_facts)
    simplified += [_simp(a, inner) for a in f.args if not isinstance(a, Atom)]

    flat: list = []
    for a in simplified:
        if isinstance(a, zero):
            return zero()
        if isinstance(a, unit):
            continue
        for b in (a.args if isinstance(a, type(f)) else (a,)):
            if b not in flat:
                flat.append(b)
    flat = _merge_univariate(flat, is_and)
    if flat is None:
        return zero()
    lits = {b for b in flat if isinstance(b, Atom)}
    if any(b.negate() in lits for b in lits):
        return zero()
    out = []
    for b in flat:
        if isinstance(b, dual):
            # absorption: a & (a | c) -> a ; unit resolution: a & (!a | c) -> a & c
            if any(c in lits for c in b.args):
                continue
            kept = tuple(c for c in b.args if not (isinstance(c, Atom) and c.negate() in lits))
            if len(kept) != len(b.args):
                b = _simp(dual(kept)) if kept else zero()
                if isinstance(b, zero):
                    return zero()
                if isinstance(b, unit):
                    continue
        if b not in out:
            out.append(b)
    # absorption between compound siblings: X & (X' | ...) where X is a conjunct of the sibling
    members = set(out)
    pruned = [b for b in out
              if not (isinstance(b, dual) and any(c in members and c is not b for c in b.args))]
    if not pruned:
        return unit()
    if len(pruned) == 1:
        return pruned[0]
    return type(f)(tuple(pruned))


def simplify(f, ctx: FieldContext | None = None):
    """Constant folding, atom normalization, deduplication, absorption and
    simplification of each subformula under the literals beside it."""
    if ctx is not None:
        f = ctx.adopt(f)
    f = nnf(f)
    for _ in range(8):
        g = _simp(f)
        if g == f:
            return g
        f = g
    return f


# ------------------------------------------------------------------ elimination

class _Assume:
    __slots__ = ("zero", "nonzero")

    def __init__(self, zero=frozenset(), nonzero=frozenset()):
        self.zero = frozenset(zero)
        self.nonzero = frozenset(nonzero)

    def status(self, p: MultiPoly):
        if p.is_constant():
            return "zero" if p.is_zero() else "nonzero"
        k = p.primitive()
        if k in self.zero:
            return "zero"
        if k in self.nonzero:
            return "nonzero"
        return None

    def with_zero(self, p):
        return _Assume(self.zero | {p.primitive()}, self.nonzero)

    def with_nonzero(self, p):
        return _Assume(self.zero, self.nonzero | {p.primitive()})


def _nonzero_in(p: MultiPoly, v: str):
    """Parameter condition for ``p`` not vanishing identically as a polynomial in ``v``."""
    return disj(*[Atom(c, NE) for c in p.coeffs_in(v) if not c.is_zero()])


# Pseudo-remainder sequences over Z can grow without bound on dense inputs;
# past this size the run is treated like a blown DNF budget.
COEFF_BITS = 12_000


def _reducers(asm: _Assume, v: str) -> dict:
    """Assumed equations usable for division in a parameter other than ``v``.

    An equation qualifies for the variable of its largest degree when its
    leading coefficient there is a nonzero constant; per variable the one of
    least degree is kept.
    """
    out = {}
    for p in asm.zero:
        if p.mentions(v):
            continue
        u = max(p.variables, key=lambda w: (p.degree(w), w), default=None)
        if u is None or not p.lc(u).is_constant():
            continue
        if u not in out or (p.degree(u), len(p.terms)) < (out[u].degree(u), len(out[u].terms)):
            out[u] = p
    return out


def _reduce(p: MultiPoly, reducers: dict) -> MultiPoly:
    """Remainder of ``p`` modulo the reducers, up to a nonzero constant factor.

    Exact wherever the reducer equations hold; dividing by a constant leading
    coefficient never introduces new case splits.
    """
    for u, r in reducers.items():
        if p.degree(u) >= r.degree(u):
            p = prem(p, r, u)
    if p.domain.characteristic == 0 and not p.is_zero():
        p = p.primitive()
        bits = max(abs(c).bit_length() for _, c in p.items())
        if bits > COEFF_BITS:
            raise BudgetExceeded(bits, COEFF_BITS, "elimination", "coefficient bits")
    return p


def _root_avoiding(g: MultiPoly, neqs, v: str, reducers: dict | None = None):
    """``g`` (with nonzero leading coefficient) has a root that is no root of any ``neqs``.

    Holds iff g does not divide ``Q**deg(g)``, ``Q`` the product of ``neqs``.
    """
    if not neqs:
        return TrueF()
    reducers = reducers or {}
    d = g.degree(v)
    r1 = None
    for q in neqs:
        rq = _reduce(prem(q, g, v), reducers)
        r1 = rq if r1 is None else _reduce(prem(r1 * rq, g, v), reducers)
    acc = r1
    for _ in range(d - 1):
        if acc.is_zero():
            break
        acc = _reduce(prem(acc * r1, g, v), reducers)
    return _nonzero_in(acc, v)


def _solve(eqs, neqs, v: str, asm: _Assume, ctx: FieldContext, depth=0):
    conds = []
    veqs = []
    for p in eqs:
        if p.is_zero():
            continue
        if not p.mentions(v):
            st = asm.status(p)
            if st == "nonzero":
                return FalseF()
            if st != "zero":
                conds.append(Atom(p, EQ))
                asm = asm.with_zero(p)
            continue
        if p not in veqs:
            veqs.append(p)
    reducers = _reducers(asm, v)
    if reducers:
        neqs = [_reduce(q, reducers) for q in neqs]
        if any(q.is_zero() for q in neqs):
            return FalseF()
        veqs = [r for r in (_reduce(p, reducers) for p in veqs) if not r.is_zero()]
        if any(not p.mentions(v) for p in veqs):
            return conj(*conds, _solve(veqs, neqs, v, asm, ctx, depth + 1))
    if not veqs:
        return conj(*conds, *[_nonzero_in(q, v) for q in neqs])
    veqs.sort(key=lambda p: (p.degree(v), not p.lc(v).is_constant(), len(p.terms)))
    g = veqs[0]
    rest = veqs[1:]
    d = g.degree(v)
    lc = g.lc(v)
    st = asm.status(lc)
    branches = []
    if st != "nonzero":
        red = g - lc * MultiPoly.var(v, g.domain, d)
        sub = _solve([red] + rest, neqs, v, asm.with_zero(lc), ctx, depth + 1)
        branches.append(sub if st == "zero" else conj(Atom(lc, EQ), sub))
    if st != "zero":
        asm2 = asm.with_nonzero(lc)
        if rest:
            sub = _solve([g] + [_reduce(prem(f, g, v), {}) for f in rest], neqs, v, asm2, ctx,
                         depth + 1)
        else:
            sub = _root_avoiding(g, neqs, v, reducers)
        branches.append(sub if st == "nonzero" else conj(Atom(lc, NE), sub))
    return conj(*conds, disj(*branches))


def eliminate_one(disjunct, v: str, ctx: FieldContext | None = None):
    """Quantifier-free equivalent of ``E v. (/\\ eqs = 0 /\\ neqs != 0)``.

    ``disjunct`` is a pair ``(eqs, neqs)`` of polynomial sequences or a
    :class:`~acfgeom.formula.Disjunct`.
    """
    ctx = ctx or FieldContext()
    eqs, neqs = (disjunct.eqs, disjunct.neqs) if hasattr(disjunct, "eqs") else disjunct
    eqs = list(eqs)
    neqs = list(neqs)
    params = [Atom(p, EQ) for p in eqs if not p.mentions(v)]
    params += [Atom(q, NE) for q in neqs if not q.mentions(v)]
    asm = _Assume({p.primitive() for p in eqs if not p.mentions(v) and not p.is_constant()},
                  {q.primitive() for q in neqs if not q.mentions(v) and not q.is_constant()})
    vneqs = [q for q in neqs if q.mentions(v)]
    if any(q.is_zero() for q in neqs):
        return FalseF()
    body = _solve([p for p in eqs if p.mentions(v)], vneqs, v, asm, ctx)
    return simplify(conj(*params, body))


def _truth(f, zero: set):
    """Value of a quantifier-free formula when exactly the atoms in ``zero`` vanish."""
    if isinstance(f, TrueF):
        return True
    if isinstance(f, FalseF):
        return False
    if isinstance(f, Atom):
        if f.poly.is_constant():
            vanishes = f.poly.is_zero()
        else:
            vanishes = f.poly.primitive() in zero
        return vanishes == (f.rel == EQ)
    if isinstance(f, Not):
        return not _truth(f.arg, zero)
    if isinstance(f, And):
        return all(_truth(a, zero) for a in f.args)
    if isinstance(f, Or):
        return any(_truth(a, zero) for a in f.args)
    raise TypeError(f"unexpected node {type(f).__name__}")


def _decide_univariate(body, v: str) -> bool:
    """``E v. body`` for a body whose only variable is ``v``.

    Away from the finitely many roots of the atom polynomials every atom is
    an inequation, and that point set is infinite.  At a root of a member of a
    coprime base of the atom polynomials, exactly the atoms it divides vanish.
    """
    polys = {a.poly.primitive() for a in atoms(body) if not a.poly.is_constant()}
    if _truth(body, set()):
        return True
    for b in coprime_base(sorted(polys, key=str), v):
        zero = {p for p in polys if not ugcd(p, b, v).is_constant()}
        if _truth(body, zero):
            return True
    return False


def _size(f) -> int:
    if isinstance(f, Atom):
        return 1
    return sum(_size(c) for c in children(f))


def _qe(f, ctx: FieldContext):
    if isinstance(f, (Atom, TrueF, FalseF)):
        return f
    if isinstance(f, InfMany):
        raise ValueError("Einf must be rewritten before quantifier elimination")
    if isinstance(f, Forall):
        return neg(_qe(Exists(f.var, Not(f.body)), ctx))
    if isinstance(f, Exists):
        body = simplify(_qe(f.body, ctx))
        fv = free_vars(body)
        if f.var not in fv:
            return body
        t0 = time.perf_counter()
        if fv == {f.var}:
            out = TrueF() if _decide_univariate(body, f.var) else FalseF()
            ctx.log(f"eliminate {f.var}: decided by root classes "
                    f"({time.perf_counter() - t0:.3f}s)")
            return out
        dnf = to_dnf(body, ctx.budget)
        parts = [eliminate_one(d, f.var, ctx) for d in dnf]
        out = simplify(disj(*parts))
        n = _size(out)
        if n > ctx.budget:
            raise BudgetExceeded(n, ctx.budget)
        ctx.log(f"eliminate {f.var}: {len(dnf)} disjuncts -> {n} atoms "
                f"({time.perf_counter() - t0:.3f}s)")
        return out
    return rebuild(f, [_qe(c, ctx) for c in children(f)])


def qe(f, ctx: FieldContext | None = None):
    """Quantifier-free formula equivalent to ``f`` in every ACF of the context characteristic."""
    ctx = ctx or FieldContext()
    if has_infmany(f):
        raise ValueError("Einf must be rewritten before quantifier elimination")
    f = ctx.adopt(f)
    return simplify(_qe(f, ctx), ctx)


def decide(sentence, ctx: FieldContext | None = None) -> bool:
    """Truth value of a sentence in the algebraically closed fields of the context characteristic."""
    ctx = ctx or FieldContext()
    fv = free_vars(sentence)
    if fv:
        raise FreeVariablesError(f"sentence has free variables {sorted(fv)}")
    out = qe(sentence, ctx)
    if isinstance(out, TrueF):
        return True
    if isinstance(out, FalseF):
        return False
    raise AssertionError(f"variable-free residue did not fold: {out}")
