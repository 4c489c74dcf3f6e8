from itertools import islice

import numpy as np
import pytest

from acfgeom import catalog
from acfgeom.formula import (FalseF, TrueF, bound_vars, free_vars, is_quantifier_free, parse,
                             prenex, to_dnf, to_text)
from acfgeom.qe import FieldContext, FreeVariablesError, decide, eliminate_one, qe, simplify
from acfgeom.oracle import eval_fpbar_all
from acfgeom.randgen import formula_stream


def ctx(char=0):
    return FieldContext.of(char)


def equivalent(f, g, char):
    """Decide ``A fv. (f <-> g)`` symbolically."""
    fv = sorted(free_vars(f) | free_vars(g))
    s = f"({to_text(f)}) <-> ({to_text(g)})"
    for v in fv:
        s = f"A {v}. ({s})"
    return decide(parse(s, char), ctx(char))


def agree_on_oracle(f, g, p, k=2):
    vs = sorted(free_vars(f) | free_vars(g))
    a = np.broadcast_to(eval_fpbar_all(f, p, k, vs), (p ** k,) * len(vs))
    b = np.broadcast_to(eval_fpbar_all(g, p, k, vs), a.shape)
    return np.array_equal(a, b)


def test_linear_exists_oracle_f5():
    g = qe(parse("E y. a*y + b = 0", 5), ctx(5))
    assert is_quantifier_free(g)
    assert agree_on_oracle(g, parse("a != 0 | b = 0", 5), 5, k=1)


@pytest.mark.parametrize("char", [0, 2, 5])
def test_linear_exists_symbolic(char):
    g = qe(parse("E y. a*y + b = 0", char), ctx(char))
    assert equivalent(g, parse("a != 0 | b = 0", char), char)


@pytest.mark.parametrize("text, expected", [
    ("E y. y^2 - x = 0", "true"),
    ("E y. (y != 0 & y != 1)", "true"),
    ("A x. E y. y^2 = x", "true"),
    ("E y. x*y = 1", "x != 0"),
    ("E y. (y^2 = x & y != 0)", "x != 0"),
])
def test_qe_examples_char0(text, expected):
    g = qe(parse(text), ctx())
    assert is_quantifier_free(g)
    assert equivalent(g, parse(expected), 0)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_square_root_nonzero_oracle(p):
    f = parse("E y. (y^2 = x & y != 0)", p)
    g = qe(f, ctx(p))
    assert agree_on_oracle(f, g, p) and agree_on_oracle(g, parse("x != 0", p), p)


def test_eliminate_one_disjunct():
    d = to_dnf(parse("a*y + b = 0")).disjuncts[0]
    g = eliminate_one(d, "y", ctx())
    assert "y" not in free_vars(g)
    assert equivalent(g, parse("a != 0 | b = 0"), 0)


@pytest.mark.parametrize("text, char, truth", [
    ("E y. (y^2 + 1 = 0 & y = 1)", 0, False),
    ("E y. (y^2 + 1 = 0 & y = 1)", 2, True),
    ("E y. y^2 + y + 1 = 0", 2, True),
    ("A x. x = 0", 0, False),
    ("A x. x = 0", 7, False),
])
def test_decide_examples(text, char, truth):
    assert decide(parse(text, char), ctx(char)) is truth


def test_decide_rejects_free_variables():
    with pytest.raises(FreeVariablesError):
        decide(parse("x = 0"), ctx())


@pytest.mark.parametrize("entry", catalog.SENTENCES, ids=lambda e: f"{e.text}@{e.char}")
def test_sentence_catalog(entry):
    c = ctx(entry.char)
    f = entry.formula()
    assert decide(f, c) is entry.truth
    assert decide(prenex(f), c) is entry.truth


@pytest.mark.parametrize("text, char, expected", [
    ("(x = 0 & x != 0) | y = 0", 0, "y = 0"),
    ("1 != 0", 0, "true"),
    ("2*x = 0", 2, "true"),
    ("x = 0 & x^2 = 0", 0, "x = 0"),
    ("x = 1 & y = x", 0, "x - 1 = 0 & y - 1 = 0"),
])
def test_simplify_examples(text, char, expected):
    got = simplify(parse(text, char), ctx(char))
    want = parse(expected, char)
    assert got == want or to_text(got) == to_text(want) or equivalent(got, want, char)
    assert len(to_text(got)) <= len(to_text(parse(text, char))) or got == want


def test_simplify_folds_constants():
    assert simplify(parse("1 != 0")) == TrueF()
    assert simplify(parse("x = 0 & 1 = 0")) == FalseF()


def test_trace_lines():
    c = FieldContext.of(0, trace=[])
    qe(parse("E y. x*y = 1"), c)
    assert c.trace and all(isinstance(t, str) for t in c.trace)


def test_universal_as_negated_existential():
    f = parse("A y. (x*y = 0)")
    assert equivalent(qe(f, ctx()), parse("x = 0"), 0)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_random_sample_against_oracle(p):
    c = ctx(p)
    for f in islice(formula_stream(p, seed=99), 60):
        g = qe(f, c)
        assert is_quantifier_free(g)
        assert free_vars(g) <= free_vars(f)
        assert agree_on_oracle(f, g, p), to_text(f)


@pytest.mark.parametrize("p", [3, 5])
def test_idempotence(p):
    c = ctx(p)
    for f in islice(formula_stream(p, seed=7), 25):
        g = qe(f, c)
        assert agree_on_oracle(qe(g, c), g, p)


def test_budget_error():
    from acfgeom.formula import BudgetExceeded
    f = parse("E z. ((a*z = 1 | b*z = 1) & (c*z = 1 | d*z = 1) & (e*z^2 = 1 | f*z = 1))")
    with pytest.raises(BudgetExceeded, match="cap of 10"):
        qe(f, FieldContext.of(0, budget=10))


def test_quantifier_scope_is_one_unary():
    f = parse("E z. (a*z = 1) & z = 0")
    assert free_vars(f) == {"a", "z"}


def test_char0_output_has_no_binders():
    g = qe(parse("A a. E y. (a*y = 1 | a = 0)"))
    assert not bound_vars(g) and g == TrueF()
