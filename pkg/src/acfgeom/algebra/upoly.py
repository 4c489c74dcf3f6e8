"""Dense univariate polynomials over F_p as coefficient tuples, lowest degree first.

The zero polynomial is the empty tuple.  Every function takes the prime
explicitly and returns trimmed tuples.
"""
from __future__ import annotations

from itertools import product


def trim(a, p):
    a = [c % p for c in a]
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def deg(a):
    return len(a) - 1


def add(a, b, p):
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)], p)


def neg(a, p):
    return trim([-c for c in a], p)


def sub(a, b, p):
    return add(a, neg(b, p), p)


def mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out, p)


def scale(a, c, p):
    return trim([x * c for x in a], p)


def divmod_(a, b, p):
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    a = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    q = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv % p
        if c:
            q[i - db] = c
            for j, y in enumerate(b):
                a[i - db + j] = (a[i - db + j] - c * y) % p
    return trim(q, p), trim(a[:db], p)


def mod(a, b, p):
    return divmod_(a, b, p)[1]


def monic(a, p):
    if not a:
        return a
    return scale(a, pow(a[-1], -1, p), p)


def gcd(a, b, p):
    a, b = trim(a, p), trim(b, p)
    while b:
        a, b = b, mod(a, b, p)
    return monic(a, p)


def powmod(a, e, m, p):
    result = (1,)
    base = mod(a, m, p)
    while e:
        if e & 1:
            result = mod(mul(result, base, p), m, p)
        e >>= 1
        if e:
            base = mod(mul(base, base, p), m, p)
    return result


def is_irreducible(f, p):
    """Ben-Or test: ``f`` of degree k is irreducible iff gcd(x^(p^i) - x, f) = 1 for i <= k/2."""
    f = trim(f, p)
    k = deg(f)
    if k < 1:
        return False
    if k == 1:
        return True
    x = (0, 1)
    xp = x
    for _ in range(k // 2):
        xp = powmod(xp, p, f, p)
        if deg(gcd(sub(xp, x, p), f, p)) > 0:
            return False
    return True


def monic_of_degree(p, k):
    """All monic degree-k polynomials, in lexicographic order of (c_{k-1}, ..., c_0)."""
    for digits in product(range(p), repeat=k):
        yield tuple(reversed(digits)) + (1,)


def smallest_irreducible(p, k):
    for f in monic_of_degree(p, k):
        if is_irreducible(f, p):
            return f
    raise AssertionError("unreachable: irreducibles exist in every degree")


def evaluate(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def to_str(a, var="t"):
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if not c:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            mono = var if i == 1 else f"{var}^{i}"
            parts.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(parts)
