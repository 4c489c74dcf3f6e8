"""Univariate polynomials with constant coefficients, viewed inside MultiPoly.

Used to reason exactly about atoms in a single variable: gcds, removal of
common roots and a coprime base for deciding parameter-free sentences.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd, lcm

from .poly import CoeffDomain, MultiPoly


def sole_variable(p: MultiPoly) -> str | None:
    """The unique variable of ``p``, or None when it has zero or several."""
    vs = p.variables
    return vs[0] if len(vs) == 1 else None


def _dense(p: MultiPoly, v: str) -> list:
    out = [0] * (p.degree(v) + 1)
    for mono, c in p.items():
        out[mono[0][1] if mono else 0] = c
    return out


def _sparse(coeffs: list, v: str, dom: CoeffDomain) -> MultiPoly:
    terms = {}
    for i, c in enumerate(coeffs):
        if c:
            terms[((v, i),) if i else ()] = c
    return MultiPoly(terms, dom)


def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _divmod(a: list, b: list, dom: CoeffDomain):
    a = list(a)
    inv = dom.inv(b[-1])
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(_trim(a)) >= len(b):
        k = len(a) - len(b)
        c = dom.norm(a[-1] * inv)
        q[k] = c
        for i, bc in enumerate(b):
            a[i + k] = dom.norm(a[i + k] - c * bc)
        a.pop()
    return _trim(q), a


def _content_free(a: list) -> list:
    """Integer coefficients with content 1 (characteristic 0)."""
    if all(isinstance(c, int) for c in a):
        ints = a
    else:
        den = reduce(lcm, (Fraction(c).denominator for c in a), 1)
        ints = [int(Fraction(c) * den) for c in a]
    g = reduce(gcd, ints, 0)
    return [c // g for c in ints]


def _prem(a: list, b: list) -> list:
    """Integer pseudo-remainder of ``a`` by ``b``."""
    a = list(a)
    lb = b[-1]
    while len(_trim(a)) >= len(b):
        k = len(a) - len(b)
        la = a[-1]
        a = [c * lb for c in a]
        for i, bc in enumerate(b):
            a[i + k] -= la * bc
        a.pop()
    return a


_FILTER_PRIMES = (1_000_003, 998_244_353)


def _coprime_mod_p(a: list, b: list) -> bool:
    """Certificate that integer polynomials ``a`` and ``b`` are coprime over Q.

    A common factor of positive degree keeps its degree modulo any prime not
    dividing the leading coefficients, so a constant gcd modulo such a prime
    settles coprimality.  False means "not certified", not "not coprime".
    """
    if len(a) < 2 or len(b) < 2:
        return False
    for p in _FILTER_PRIMES:
        if a[-1] % p and b[-1] % p:
            dom = CoeffDomain(p)
            return len(_gcd([c % p for c in a], [c % p for c in b], dom)) == 1
    return False


def _gcd(a: list, b: list, dom: CoeffDomain) -> list:
    a, b = _trim(list(a)), _trim(list(b))
    if dom.characteristic:
        while b:
            a, b = b, _divmod(a, b, dom)[1]
        return a
    a = _content_free(a) if a else a
    b = _content_free(b) if b else b
    if a and b and _coprime_mod_p(a, b):
        return [1]
    # primitive remainder sequence keeps the integers small
    while b:
        r = _prem(a, b)
        a, b = b, (_content_free(r) if r else r)
    return a


@lru_cache(maxsize=8192)
def ugcd(f: MultiPoly, g: MultiPoly, v: str) -> MultiPoly:
    """Monic-normalized gcd of two polynomials in ``v`` alone."""
    dom = f.domain
    return _sparse(_gcd(_dense(f, v), _dense(g, v), dom), v, dom).primitive()


def uquo(f: MultiPoly, g: MultiPoly, v: str) -> MultiPoly:
    """Exact quotient ``f / g``."""
    dom = f.domain
    q, r = _divmod(_dense(f, v), _dense(g, v), dom)
    if r:
        raise ArithmeticError(f"{g} does not divide {f}")
    return _sparse(q, v, dom)


@lru_cache(maxsize=8192)
def strip_roots(g: MultiPoly, q: MultiPoly, v: str) -> MultiPoly:
    """Largest factor of ``g`` sharing no root with ``q``."""
    while True:
        h = ugcd(g, q, v)
        if h.is_constant():
            return g.primitive()
        g = uquo(g, h, v)


def coprime_base(polys, v: str) -> list[MultiPoly]:
    """Pairwise coprime nonconstant polynomials whose products give every input up to units."""
    base = []
    for p in polys:
        if not p.is_constant() and p.primitive() not in base:
            base.append(p.primitive())
    changed = True
    while changed:
        changed = False
        for i in range(len(base)):
            for j in range(i + 1, len(base)):
                h = ugcd(base[i], base[j], v)
                if h.is_constant():
                    continue
                a, b = base[i], base[j]
                parts = [h, uquo(a, h, v), uquo(b, h, v)]
                base = [x for k, x in enumerate(base) if k not in (i, j)]
                for x in parts:
                    x = x.primitive()
                    if not x.is_constant() and x not in base:
                        base.append(x)
                changed = True
                break
            if changed:
                break
    return base
