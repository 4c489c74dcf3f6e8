import numpy as np
import pytest

from acfgeom import catalog
from acfgeom.algebra.poly import MultiPoly
from acfgeom.formula import (And, Atom, BudgetExceeded, EQ, Exists, FalseF, Forall, InfMany, NE,
                             Not, Or, ParseError, ShadowingError, SubstitutionError, TrueF,
                             alpha_equal, bound_vars, free_vars, is_quantifier_free, parse,
                             parse_poly, prenex, substitute, to_dnf, to_text)
from acfgeom.oracle import eval_fpbar_all

x, y = MultiPoly.var("x"), MultiPoly.var("y")


def test_parse_exists():
    assert parse("E y. y^2 = x") == Exists("y", Atom(y ** 2 - x, EQ))


def test_parse_infmany():
    assert parse("Einf x. x != 0") == InfMany("x", Atom(x, NE))


def test_shadowing_rejected():
    with pytest.raises(ShadowingError):
        parse("E x. E x. x = 0")


def test_sibling_binders_are_freshened():
    f = parse("(E y. y = x) & (E y. y = 1)")
    bs = bound_vars(f)
    assert len(set(bs)) == 2 and "x" not in bs


def test_binder_clashing_with_free_variable_is_renamed():
    f = parse("x = 0 & E x. x = 1")
    assert free_vars(f) == {"x"} and "x" not in bound_vars(f)


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse("x = 1 &\n  (y = ")
    assert (info.value.line, info.value.col) == (2, 8)


@pytest.mark.parametrize("bad", ["x", "x = ", "E . x = 0", "x ^ y = 0", "X = 0", "(x = 0", "x == 0"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse(bad)


def test_implication_and_iff_desugar():
    assert parse("x = 0 -> y = 0") == Or((Not(Atom(x, EQ)), Atom(y, EQ)))
    f = parse("x = 0 <-> y = 0")
    assert is_quantifier_free(f) and free_vars(f) == {"x", "y"}


def test_implication_right_associative():
    assert parse("x = 0 -> y = 0 -> x = 1") == parse("x = 0 -> (y = 0 -> x = 1)")


def test_char_p_literals_reduced():
    assert parse("2*x = 0", 2) == parse("0 = 0", 2)
    assert parse_poly("7*x + 3", 5) == parse_poly("2*x - 2", 5)


def test_print_atom():
    assert to_text(Atom(x - 1, EQ)) == "x - 1 = 0"


def test_print_and_true():
    assert to_text(And((TrueF(), Atom(x, EQ)))) == "true & x = 0"


def test_print_nested_quantifiers():
    assert to_text(parse("A x. E y. x*y = 1")) == "A x. (E y. (x*y - 1 = 0))"


def test_to_text_rejects_non_formula():
    with pytest.raises(TypeError):
        to_text(True)


def _dnf_sets(f):
    return [(set(d.eqs), set(d.neqs)) for d in to_dnf(f)]


def test_dnf_de_morgan():
    assert _dnf_sets(parse("!(x = 0 & y != 0)")) == [(set(), {x}), ({y}, set())]


def test_dnf_distribution():
    z = MultiPoly.var("z")
    assert _dnf_sets(parse("(x = 0 | y = 0) & z != 0")) == [({x}, {z}), ({y}, {z})]


def test_dnf_true():
    assert _dnf_sets(TrueF()) == [(set(), set())]
    assert _dnf_sets(FalseF()) == []


def test_dnf_budget():
    f = parse(" & ".join(f"(x = {i} | y = {i})" for i in range(12)))
    with pytest.raises(BudgetExceeded, match="1000"):
        to_dnf(f, 1000)


def test_substitute():
    assert substitute(Atom(x * y - 1, EQ), "x", 2) == Atom(2 * y - 1, EQ)
    assert substitute(TrueF(), "x", 2) == TrueF()


def test_free_vars():
    assert free_vars(Exists("y", Atom(x * y, EQ))) == {"x"}


def test_substitute_bound_variable_rejected():
    with pytest.raises(SubstitutionError):
        substitute(parse("E y. x*y = 1"), "y", 2)


def test_prenex_is_equivalent_shape():
    f = parse("(E y. x*y = 1) & !(A z. z = x)")
    g = prenex(f)
    assert isinstance(g, (Exists, Forall))
    assert free_vars(g) == free_vars(f)


def test_alpha_equal():
    assert alpha_equal(parse("E y. y = x"), parse("E z. z = x"))
    assert not alpha_equal(parse("E y. y = x"), parse("A z. z = x"))


@pytest.mark.parametrize("text, char", catalog.all_texts())
def test_round_trip_catalog(text, char):
    f = parse(text, char)
    assert parse(to_text(f), char) == f


QF = [e.text for e in catalog.UNIVARIATE + catalog.DIMENSION + catalog.BOUNDING
      if is_quantifier_free(parse(e.text))]


@pytest.mark.parametrize("p, k", [(3, 2), (7, 1)])
@pytest.mark.parametrize("text", QF)
def test_dnf_preserves_truth(text, p, k):
    f = parse(text, p)
    vs = sorted(free_vars(f))
    g = to_dnf(f).to_formula()
    a = eval_fpbar_all(f, p, k, vs)
    b = np.broadcast_to(eval_fpbar_all(g, p, k, vs), a.shape)
    assert np.array_equal(a, b)
