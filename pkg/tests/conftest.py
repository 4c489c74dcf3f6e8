import random

import pytest
from hypothesis import strategies as st

from acfgeom.algebra.poly import CoeffDomain, MultiPoly

VARS = ("x", "y", "z")


def poly_from(terms, dom):
    out = {}
    for (ex, ey, ez), c in terms:
        mono = tuple((v, e) for v, e in zip(VARS, (ex, ey, ez)) if e)
        out[mono] = out.get(mono, 0) + c
    return MultiPoly(out, dom)


def polys(dom, max_terms=4, max_exp=2):
    term = st.tuples(st.tuples(*[st.integers(0, max_exp)] * 3), st.integers(-5, 5))
    return st.lists(term, max_size=max_terms).map(lambda ts: poly_from(ts, dom))


def random_poly(rng: random.Random, dom, variables=VARS, max_terms=4, max_exp=2):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        mono = tuple((v, e) for v in variables if (e := rng.randint(0, max_exp)))
        terms[mono] = terms.get(mono, 0) + rng.randint(-5, 5)
    return MultiPoly(terms, dom)


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture(params=[0, 2, 3, 5], ids=lambda c: f"char{c}")
def domain(request):
    return CoeffDomain(request.param)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n].line())
