"""The eight acceptance checks, shared by ``acfgeom check`` and the test suite.

Each check returns a :class:`CriterionResult`; ``passed`` is the verdict at the
stated tolerance and ``detail`` says what was counted.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from itertools import islice, product

import numpy as np

from . import catalog
from .algebra.finite_field import FqElement
from .algebra.poly import MultiPoly
from .formula import (FalseF, TrueF, atoms, conj, free_vars, is_quantifier_free, parse, rename_free,
                      substitute, to_text)
from .geometric import (bounding_polys, dimension, frobenius_injection_demo, is_infinite,
                        rewrite_inf_many, infinite_formula, slope_cover_check)
from .oracle import (FINITE, INFINITE, SWEEP_QS, _specialize, count_points, eval_fpbar,
                     eval_fpbar_all, exhaustive_trick_sweep, fiber_finiteness, fiber_points,
                     field_of_order, qf_univariate_finiteness)
from .qe import FieldContext, qe, simplify
from .randgen import DEFAULT_SEED, formula_stream

QE_PRIMES = (2, 3, 5, 7)
QE_COUNT = 500
QE_SECONDS = 300.0
SWEEP_SECONDS = 60.0
BOUND_QS = (5, 7, 9)
FROBENIUS_CASES = ((2, 2), (3, 1))
GROWTH_P = 5


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0
    failures: list = field(default_factory=list)
    formulas: list = field(default_factory=list)  # (formula, characteristic) seen on the way

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number}. {self.name}: {self.detail} ({self.seconds:.1f}s)"

    def to_dict(self):
        return {"number": self.number, "name": self.name, "passed": self.passed,
                "detail": self.detail, "seconds": round(self.seconds, 3),
                "failures": [str(f) for f in self.failures[:20]]}


def _timed(fn):
    def run(*args, **kw):
        t0 = time.perf_counter()
        res = fn(*args, **kw)
        res.seconds = time.perf_counter() - t0
        return res
    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


# ------------------------------------------------------------------ 1

@_timed
def trick_sweep(qs=SWEEP_QS) -> CriterionResult:
    """Slope-set dichotomy on every subset of F_q."""
    t0 = time.perf_counter()
    reports = [exhaustive_trick_sweep(q) for q in qs]
    elapsed = time.perf_counter() - t0
    bad = [r.to_dict() for r in reports if not r.ok]
    total = sum(r.subsets for r in reports)
    ok = not bad and elapsed < SWEEP_SECONDS
    return CriterionResult(1, "slope-set dichotomy sweep", ok,
                           f"{total - len(bad)}/{total} subsets over q in {list(qs)}, "
                           f"{elapsed:.2f}s of {SWEEP_SECONDS:.0f}s", failures=bad)


# ------------------------------------------------------------------ 2

def _param_values(char: int):
    return (-1, 0, 1, 2) if char == 0 else tuple(range(char))


def _instantiate(f, values: dict, ctx):
    for v, c in values.items():
        f = substitute(f, v, MultiPoly.const(c, ctx.coeff))
    return f


def _truth_of(crit, values, ctx) -> bool:
    if isinstance(crit, bool):
        return crit
    g = simplify(_instantiate(crit, values, ctx), ctx)
    if isinstance(g, (TrueF, FalseF)):
        return isinstance(g, TrueF)
    raise AssertionError(f"criterion did not fold at {values}: {to_text(g)}")


def _structural(f, v, ctx) -> str:
    return qf_univariate_finiteness(f if is_quantifier_free(f) else qe(f, ctx), v, ctx)


@_timed
def infinite_pipeline(chars=(0, 5), fq=9) -> CriterionResult:
    """Einf rewrite plus QE against the structural finiteness oracle."""
    checked = 0
    failures = []
    formulas = []
    for entry in catalog.UNIVARIATE:
        for char in chars:
            ctx = FieldContext.of(char)
            f = entry.formula(char)
            crit = is_infinite(f, [entry.var], ctx)
            formulas.append((f, char))
            formulas.append((rewrite_inf_many(infinite_formula(f, [entry.var], ctx), ctx), char))
            if not isinstance(crit, bool):
                formulas.append((crit, char))
            for vals in product(_param_values(char), repeat=len(entry.params)):
                values = dict(zip(entry.params, vals))
                verdict = _truth_of(crit, values, ctx)
                truth = _structural(_instantiate(f, values, ctx), entry.var, ctx) == INFINITE
                checked += 1
                if verdict != truth:
                    failures.append((entry.text, char, values, verdict))
        if entry.params and fq:
            # parameters from a non-prime field, read through the oracle
            F = field_of_order(fq)
            ctx = FieldContext.of(F.p)
            f = entry.formula(F.p)
            crit = is_infinite(f, [entry.var], ctx)
            g = qe(f, ctx)
            for codes in product(range(F.q), repeat=len(entry.params)):
                point = dict(zip(entry.params, codes))
                if isinstance(crit, bool):
                    verdict = crit
                else:
                    verdict = eval_fpbar(crit, F.p, {v: FqElement(F, c) for v, c in point.items()})
                truth = fiber_finiteness(g, entry.var, F, point, ctx) == INFINITE
                checked += 1
                if verdict != truth:
                    failures.append((entry.text, fq, point, verdict))
    n = len(catalog.UNIVARIATE)
    return CriterionResult(2, "Einf rewrite vs structural finiteness", not failures and n >= 50,
                           f"{checked - len(failures)}/{checked} verdicts agree on {n} sets",
                           failures=failures, formulas=formulas)


# ------------------------------------------------------------------ 3

@_timed
def qe_soundness(primes=QE_PRIMES, count=QE_COUNT, seed=DEFAULT_SEED, k=2) -> CriterionResult:
    """QE output agrees with the brute-force oracle on every F_{p^k} assignment."""
    t0 = time.perf_counter()
    failures = []
    formulas = []
    done = 0
    for p in primes:
        ctx = FieldContext.of(p)
        for f in islice(formula_stream(p, seed), count):
            vs = sorted(free_vars(f))
            g = qe(f, ctx)
            formulas += [(f, p), (g, p)]
            done += 1
            if not is_quantifier_free(g):
                failures.append((to_text(f), p, "not quantifier-free"))
                continue
            a = eval_fpbar_all(f, p, k, vs)
            b = np.broadcast_to(eval_fpbar_all(g, p, k, vs), a.shape)
            if not np.array_equal(a, b):
                failures.append((to_text(f), p, to_text(g)))
    elapsed = time.perf_counter() - t0
    ok = not failures and done == count * len(primes) and elapsed < QE_SECONDS
    return CriterionResult(3, "QE soundness vs F_p-bar oracle", ok,
                           f"{done - len(failures)}/{done} formulas agree over F_(p^{k}) for "
                           f"p in {list(primes)}, {elapsed:.1f}s of {QE_SECONDS:.0f}s",
                           failures=failures, formulas=formulas)


# ------------------------------------------------------------------ 4

def product_formula(a: catalog.DimEntry, b: catalog.DimEntry):
    """``A x B`` with the second factor's variables renamed apart."""
    fa, fb = a.formula(), b.formula()
    names = set(a.variables)
    mapping = {}
    for v in b.variables:
        n = v + "2"
        while n in names:
            n += "2"
        mapping[v] = n
        names.add(n)
    return conj(fa, rename_free(fb, mapping)), tuple(a.variables) + tuple(mapping[v] for v in b.variables)


def growth_exponent(f, variables, p=GROWTH_P, m=3) -> int:
    """``round(log_p(N_m / N_{m-1}))`` for point counts ``N_j`` over F_{p^j}."""
    hi = count_points(f, variables, p, m)
    lo = count_points(f, variables, p, m - 1)
    return round(math.log(hi / lo, p))


@_timed
def dimension_suite() -> CriterionResult:
    ctx = FieldContext.of(0)
    failures = []
    formulas = []
    checks = 0
    for n in (1, 2, 3):
        vs = ("x", "y", "z")[:n]
        checks += 1
        if dimension(TrueF(), vs, ctx).dim != n:
            failures.append(("ambient", n))
    dims = {}
    for e in catalog.DIMENSION:
        f = e.formula()
        formulas.append((f, 0))
        d = dimension(f, e.variables, ctx).dim
        dims[e] = d
        checks += 3
        if d != e.dim:
            failures.append(("catalog", e.text, d, e.dim))
        if (d > 0) != bool(is_infinite(f, e.variables, ctx)):
            failures.append(("dim>0 vs infinite", e.text, d))
        g = growth_exponent(f, e.variables)
        if g != d:
            failures.append(("growth", e.text, d, g))
    for e in catalog.slope_cover_sets():
        f = e.formula()
        d = dimension(f, (e.var,), ctx).dim
        checks += 1
        if (d > 0) != (_structural(f, e.var, ctx) == INFINITE):
            failures.append(("dim>0 vs infinite", e.text, d))
    for a, b in product(catalog.DIMENSION, repeat=2):
        f, vs = product_formula(a, b)
        formulas.append((f, 0))
        d = dimension(f, vs, ctx).dim
        checks += 1
        if d != dims[a] + dims[b]:
            failures.append(("product", a.text, b.text, d))
    return CriterionResult(4, "dimension suite", not failures,
                           f"{checks - len(failures)}/{checks} checks (ambient, catalog, "
                           f"dim>0 vs infinite, growth at p={GROWTH_P}, {len(catalog.DIMENSION) ** 2} products)",
                           failures=failures, formulas=formulas)


# ------------------------------------------------------------------ 5

def _horner(coeffs, x, F):
    acc = 0
    for c in reversed(coeffs):
        acc = F.add(F.mul(acc, x), c)
    return acc


@_timed
def bounding_contract(qs=BOUND_QS) -> CriterionResult:
    failures = []
    formulas = []
    fibers = 0
    for q in qs:
        F = field_of_order(q)
        ctx = FieldContext.of(F.p)
        for e in catalog.BOUNDING:
            f = e.formula(F.p)
            bset = bounding_polys(f, e.params, e.fiber, ctx)
            y = e.fiber
            if any(w.degree(y) <= 0 for w in bset.witnesses):
                failures.append((e.text, q, "witness without the fiber variable"))
            if bset.uniform_bound != max((w.degree(y) for w in bset.witnesses), default=0):
                failures.append((e.text, q, "bound is not the largest degree"))
            g = qe(f, ctx)
            formulas.append((g, F.p))
            maxdeg = max([a.poly.degree(y) for a in atoms(g)] + [1])
            for codes in product(range(F.q), repeat=len(e.params)):
                point = dict(zip(e.params, codes))
                if fiber_finiteness(g, y, F, point, ctx) != FINITE:
                    continue
                fibers += 1
                pts, big = fiber_points(g, y, F.p, F.k, point, maxdeg)
                if len(pts) > bset.uniform_bound:
                    failures.append((e.text, q, point, f"{len(pts)} points > {bset.uniform_bound}"))
                    continue
                if not pts:
                    continue
                emb = big.embedding_from(F)
                bpoint = {v: int(emb[c]) for v, c in point.items()}
                trapped = False
                for w in bset.witnesses:
                    if not _specialize(w, y, F, point):
                        continue  # vanishes identically at this parameter
                    coeffs = _specialize(w, y, big, bpoint)
                    if all(_horner(coeffs, x, big) == 0 for x in pts):
                        trapped = True
                        break
                if not trapped:
                    failures.append((e.text, q, point, "no witness traps the fiber"))
    return CriterionResult(5, "algebraic boundedness contract", not failures,
                           f"{fibers - len(failures)}/{fibers} finite fibers trapped and bounded "
                           f"over q in {list(qs)}", failures=failures, formulas=formulas)


# ------------------------------------------------------------------ 6

@_timed
def slope_cover() -> CriterionResult:
    ctx = FieldContext.of(0)
    failures = []
    n = 0
    for e in catalog.slope_cover_sets():
        f = e.formula()
        if _structural(f, e.var, ctx) != INFINITE:
            continue
        n += 1
        if slope_cover_check(f, ctx, e.var) is not True:
            failures.append(e.text)
    return CriterionResult(6, "slope cover of infinite sets", not failures and n > 0,
                           f"{n - len(failures)}/{n} infinite catalog sets covered",
                           failures=failures)


# ------------------------------------------------------------------ 7

@_timed
def frobenius(cases=FROBENIUS_CASES) -> CriterionResult:
    reports = [frobenius_injection_demo(p, d) for p, d in cases]
    bad = [r.to_dict() for r in reports if r.collisions]
    detail = ", ".join(f"(p={r.p}, d={r.degree_bound}): {r.pairs} pairs, {r.collisions} collisions"
                       for r in reports)
    return CriterionResult(7, "Frobenius injection", not bad, detail, failures=bad)


# ------------------------------------------------------------------ 8

@_timed
def round_trip(formulas) -> CriterionResult:
    failures = []
    for f, char in formulas:
        text = to_text(f)
        try:
            g = parse(text, char)
        except Exception as exc:  # report, do not abort the sweep
            failures.append((text, repr(exc)))
            continue
        if g != f:
            failures.append((text, to_text(g)))
    n = len(formulas)
    return CriterionResult(8, "parser round trip", not failures and n > 0,
                           f"{n - len(failures)}/{n} formulas reparse to equal trees",
                           failures=failures)


def catalog_formulas():
    out = []
    for text, char in catalog.all_texts():
        out.append((parse(text, char), char))
    return out


def run_all(seed: int = DEFAULT_SEED, qe_count: int = QE_COUNT, report=None) -> list[CriterionResult]:
    """Run all eight checks in order; ``report`` is called with each result as it lands."""
    results = []

    def keep(res):
        results.append(res)
        if report is not None:
            report(res)
        return res

    keep(trick_sweep())
    keep(infinite_pipeline())
    keep(qe_soundness(count=qe_count, seed=seed))
    keep(dimension_suite())
    keep(bounding_contract())
    keep(slope_cover())
    keep(frobenius())
    seen = catalog_formulas()
    for r in results:
        seen += r.formulas
    keep(round_trip(seen))
    return results
