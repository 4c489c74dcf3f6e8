from itertools import islice

import numpy as np
import pytest

from acfgeom import catalog
from acfgeom.algebra.finite_field import fq_make
from acfgeom.formula import free_vars, is_quantifier_free, parse
from acfgeom.geometric import dichotomy
from acfgeom.oracle import (FINITE, INFINITE, OracleTooLarge, count_points, eval_fpbar,
                            eval_fpbar_all, exhaustive_trick_sweep, fused_trick_sweep,
                            point_count_growth, qf_univariate_finiteness, witness_bound)
from acfgeom.randgen import formula_stream


@pytest.mark.parametrize("text, p, truth", [
    ("E y. y^2 + y + 1 = 0", 2, True),
    ("E y. y^2 = 2", 5, True),
    ("A y. y^3 - y = 0", 3, False),
    ("A x. E y. y^2 = x", 3, True),
    ("E x. (x^2 = 2 & x^3 = 3)", 3, False),
])
def test_eval_fpbar_sentences(text, p, truth):
    assert eval_fpbar(parse(text, p), p, {}) is truth


def test_eval_with_extension_assignment():
    F = fq_make(3, 2)
    f = parse("E y. y^2 = x", 3)
    assert all(eval_fpbar(f, 3, {"x": e}) for e in F.enumerate())
    g = parse("x^3 = x", 3)
    assert [eval_fpbar(g, 3, {"x": e}) for e in F.enumerate()].count(True) == 3


def test_missing_assignment():
    with pytest.raises(ValueError):
        eval_fpbar(parse("x = 0", 2), 2, {})


def test_witness_bound_product():
    wb = witness_bound(parse("E y. (y^2 = x & E z. z^3 = y)"))
    assert wb.search_degree(1, 5) % 6 == 0


def test_search_cap():
    f = parse("E a. E b. E c. E d. (a^3 = 1 & b^3 = 2 & c^3 = 3 & d^3 = a)", 7)
    with pytest.raises(OracleTooLarge):
        eval_fpbar(f, 7, {})


@pytest.mark.parametrize("text, verdict", [
    ("y^2 - 1 = 0", FINITE),
    ("y != 0", INFINITE),
    ("y^2 = 1 | y != 2", INFINITE),
    ("y = 0 & y != 0", FINITE),
    ("true", INFINITE),
    ("false", FINITE),
    ("1 = 0 | y = 3", FINITE),
])
def test_structural_finiteness(text, verdict):
    assert qf_univariate_finiteness(parse(text), "y") == verdict


def test_point_counts():
    assert point_count_growth(parse("true"), ["x"], 2, 3) == [2, 4, 8]
    assert point_count_growth(parse("x*y = 1", 3), ["x", "y"], 3, 2) == [2, 8]
    assert point_count_growth(parse("x = 0 & y = 0", 5), ["x", "y"], 5, 2) == [1, 1]


def test_point_count_needs_quantifier_free():
    with pytest.raises(ValueError):
        count_points(parse("E y. x = y"), ["x"], 2, 1)


def test_point_count_cap():
    with pytest.raises(OracleTooLarge):
        count_points(parse("true"), ["x", "y", "z"], 7, 3)


def test_finite_sets_saturate_infinite_grow():
    for e in catalog.slope_cover_sets():
        f = parse(e.text, 3)
        if not is_quantifier_free(f):
            continue
        counts = point_count_growth(f, ["y"], 3, 4)
        if qf_univariate_finiteness(f, "y") == FINITE:
            assert counts[-1] == counts[-2] or counts[-1] <= 3, e.text
        else:
            assert counts[0] < counts[1] < counts[2] < counts[3], e.text


@pytest.mark.parametrize("p", [2, 3, 5])
def test_doubling_search_degree_changes_nothing(p):
    checked = 0
    for f in formula_stream(p, seed=4242):
        if not (set(free_vars(f)) and not is_quantifier_free(f)):
            continue
        try:
            a = eval_fpbar_all(f, p, 1, degree_scale=1)
            b = eval_fpbar_all(f, p, 1, degree_scale=2)
        except OracleTooLarge:
            continue
        assert np.array_equal(np.broadcast_to(a, np.shape(b)), b)
        checked += 1
        if checked >= 34:
            break
    assert checked >= 34


def test_sweep_small():
    r = exhaustive_trick_sweep(2)
    assert (r.subsets, r.failures) == (4, 0) and r.ok


def test_sweep_f5_full_set_is_cover():
    r = exhaustive_trick_sweep(5)
    assert r.subsets == 32 and r.ok
    assert dichotomy(range(5), 5).cover


def test_sweep_f11():
    r = exhaustive_trick_sweep(11)
    assert r.subsets == 2048 and r.ok


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_fused_sweep_matches(q):
    a, b = exhaustive_trick_sweep(q), fused_trick_sweep(q)
    assert (a.cover, a.injection, a.failures) == (b.cover, b.injection, b.failures)


def _slopes_mod(q, X):
    """Secant slopes in Z/q computed with plain integers."""
    out = set()
    for x in X:
        for xp in X:
            if x == xp:
                continue
            inv = pow(xp - x, -1, q)
            for y in X:
                for yp in X:
                    out.add((y - yp) * inv % q)
    return out


@pytest.mark.parametrize("q", [2, 3, 5, 7])
def test_slope_sets_against_plain_integers(q):
    for mask in range(1 << q):
        X = [e for e in range(q) if mask >> e & 1]
        r = dichotomy(X, q)
        S = _slopes_mod(q, X)
        assert set(r.slopes) == S
        assert r.cover == (len(S) == q)
        if not r.cover:
            assert r.slope not in S
            vals = {(r.slope * x + y) % q for x in X for y in X}
            assert len(vals) == len(X) ** 2
            assert len(S) <= len(X) ** 4
