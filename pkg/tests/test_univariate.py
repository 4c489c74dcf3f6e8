import pytest

from acfgeom.algebra.univariate import coprime_base, sole_variable, strip_roots, ugcd, uquo
from acfgeom.formula import parse_poly


def P(t, c=0):
    return parse_poly(t, c)


def test_sole_variable():
    assert sole_variable(P("x^2 + 1")) == "x"
    assert sole_variable(P("x*y")) is None
    assert sole_variable(P("3")) is None


@pytest.mark.parametrize("f, g, h, c", [
    ("x^2 - 1", "x^2 + 2*x + 1", "x + 1", 0),
    ("x^3 - x", "x^2 - 3*x + 2", "x - 1", 0),
    ("x^2 + 1", "x - 5", "1", 0),
    ("x^2 + 1", "x - 2", "x + 3", 5),
    ("x^4 - 1", "x^6 - 1", "x^2 - 1", 0),
    ("6*x^2 - 6", "4*x + 4", "x + 1", 0),
])
def test_gcd(f, g, h, c):
    assert ugcd(P(f, c), P(g, c), "x") == P(h, c)


def test_gcd_large_coprime_inputs_fast():
    f = P("x^12 + 7*x^5 - 3*x + 11")
    g = P("x^11 - 5*x^4 + x^2 + 13")
    assert ugcd(f, g, "x") == P("1")


def test_strip_roots():
    assert strip_roots(P("(x - 1)^2*(x + 2)"), P("x^2 - 1"), "x") == P("x + 2")
    assert strip_roots(P("x^2 + 1"), P("x"), "x") == P("x^2 + 1")


def test_exact_quotient():
    assert uquo(P("x^3 - 1"), P("x - 1"), "x") == P("x^2 + x + 1")
    with pytest.raises(ArithmeticError):
        uquo(P("x^3 - 2"), P("x - 1"), "x")


def test_coprime_base():
    base = coprime_base([P("x^2 - 1"), P("x^2 + x"), P("x^3")], "x")
    assert sorted(map(str, base)) == ["x", "x + 1", "x - 1"]
    for i, a in enumerate(base):
        for b in base[i + 1:]:
            assert ugcd(a, b, "x") == P("1")
