"""Sparse multivariate polynomials with exact coefficients.

A monomial is a tuple of ``(variable, exponent)`` pairs sorted by variable
name, with every exponent positive; the empty tuple is the constant
monomial.  Coefficients live in a :class:`CoeffDomain`: arbitrary-precision
rationals in characteristic 0, residues ``0..p-1`` in characteristic p.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Mapping, Union

Coeff = Union[int, Fraction]
Monomial = tuple  # tuple[tuple[str, int], ...]


class DomainMismatch(ValueError):
    """Raised when polynomials over different characteristics are combined."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class CoeffDomain:
    characteristic: int = 0

    def __post_init__(self):
        c = self.characteristic
        if c != 0 and not is_prime(c):
            raise ValueError(f"characteristic must be 0 or prime, got {c}")

    def norm(self, c: Coeff) -> Coeff:
        p = self.characteristic
        if p:
            if isinstance(c, Fraction):
                return c.numerator * pow(c.denominator, -1, p) % p
            return c % p
        if isinstance(c, Fraction):
            return c.numerator if c.denominator == 1 else c
        return c

    def inv(self, c: Coeff) -> Coeff:
        if c == 0:
            raise ZeroDivisionError("inverse of zero coefficient")
        p = self.characteristic
        if p:
            return pow(c, -1, p)
        return self.norm(Fraction(1) / c)

    def __str__(self):
        return f"char {self.characteristic}"


QQ = CoeffDomain(0)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def _mono_deg(m: Monomial) -> int:
    return sum(e for _, e in m)


def _fmt_coeff(c: Coeff) -> str:
    return str(c)


class MultiPoly:
    """Immutable sparse polynomial; ``terms`` maps monomials to nonzero coefficients."""

    __slots__ = ("domain", "_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Coeff] | None = None,
                 domain: CoeffDomain = QQ, *, _trusted: bool = False):
        self.domain = domain
        if _trusted:
            self._terms = terms
        else:
            clean = {}
            for m, c in (terms or {}).items():
                c = domain.norm(c)
                if c:
                    m = tuple(sorted((v, e) for v, e in m if e))
                    clean[m] = domain.norm(clean.get(m, 0) + c)
                    if not clean[m]:
                        del clean[m]
            self._terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def const(cls, c: Coeff, domain: CoeffDomain = QQ) -> MultiPoly:
        return cls({(): c}, domain)

    @classmethod
    def var(cls, name: str, domain: CoeffDomain = QQ, power: int = 1) -> MultiPoly:
        return cls({((name, power),): 1}, domain)

    @classmethod
    def zero(cls, domain: CoeffDomain = QQ) -> MultiPoly:
        return cls({}, domain, _trusted=True)

    # -- basic queries ----------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    @property
    def variables(self) -> list[str]:
        return sorted({v for m in self._terms for v, _ in m})

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not m for m in self._terms)

    def constant_value(self) -> Coeff:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get((), 0)

    def total_degree(self) -> int:
        return max((_mono_deg(m) for m in self._terms), default=-1)

    def degree(self, v: str) -> int:
        """Degree in ``v``; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(dict(m).get(v, 0) for m in self._terms)

    def mentions(self, v: str) -> bool:
        return any(u == v for m in self._terms for u, _ in m)

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            if other.domain != self.domain:
                raise DomainMismatch(f"{self.domain} vs {other.domain}")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(other, self.domain)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        dom = self.domain
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = dom.norm(out.get(m, 0) + c)
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return MultiPoly(out, dom, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        dom = self.domain
        return MultiPoly({m: dom.norm(-c) for m, c in self._terms.items()}, dom, _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        dom = self.domain
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return MultiPoly(out, dom)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = MultiPoly.const(1, self.domain)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c: Coeff) -> MultiPoly:
        return MultiPoly({m: a * c for m, a in self._terms.items()}, self.domain)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other, self.domain)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.domain == other.domain and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.domain.characteristic, frozenset(self._terms.items())))
        return self._hash

    # -- univariate views ---------------------------------------------------
    def coeffs_in(self, v: str) -> list[MultiPoly]:
        """Coefficients ``c_0..c_d`` with ``self = sum c_i v^i``; ``[0]`` for zero."""
        d = self.degree(v)
        if d < 0:
            return [MultiPoly.zero(self.domain)]
        buckets: list[dict] = [{} for _ in range(d + 1)]
        for m, c in self._terms.items():
            e = 0
            rest = []
            for u, k in m:
                if u == v:
                    e = k
                else:
                    rest.append((u, k))
            buckets[e][tuple(rest)] = c
        return [MultiPoly(b, self.domain, _trusted=True) for b in buckets]

    def lc(self, v: str) -> MultiPoly:
        return self.coeffs_in(v)[-1]

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[MultiPoly], v: str, domain: CoeffDomain) -> MultiPoly:
        out = MultiPoly.zero(domain)
        for i, c in enumerate(coeffs):
            if not c.is_zero():
                out = out + c * MultiPoly.var(v, domain, i) if i else out + c
        return out

    # -- substitution / evaluation -------------------------------------------
    def subs(self, v: str, value: MultiPoly | Coeff) -> MultiPoly:
        if not isinstance(value, MultiPoly):
            value = MultiPoly.const(value, self.domain)
        coeffs = self.coeffs_in(v)
        # Horner
        acc = MultiPoly.zero(self.domain)
        for c in reversed(coeffs):
            acc = acc * value + c
        return acc

    def rename(self, mapping: Mapping[str, str]) -> MultiPoly:
        out = {}
        for m, c in self._terms.items():
            nm = tuple(sorted((mapping.get(v, v), e) for v, e in m))
            out[nm] = c
        return MultiPoly(out, self.domain)

    def with_domain(self, domain: CoeffDomain) -> MultiPoly:
        return MultiPoly(self._terms, domain)

    # -- normalization for atoms --------------------------------------------
    def primitive(self) -> MultiPoly:
        """Scale by a nonzero constant to a canonical representative.

        Characteristic p: monic in graded-lex order.  Characteristic 0:
        integer coefficients with content 1 and positive leading coefficient.
        """
        if not self._terms:
            return self
        dom = self.domain
        lead = self._terms[self.sorted_monomials()[0]]
        if dom.characteristic:
            return self.scale(dom.inv(lead))
        coeffs = list(self._terms.values())
        den = reduce(lcm, (Fraction(c).denominator for c in coeffs), 1)
        ints = [int(Fraction(c) * den) for c in coeffs]
        g = reduce(gcd, ints, 0)
        s = Fraction(den, g) if lead > 0 else Fraction(-den, g)
        return self.scale(s)

    # -- printing -----------------------------------------------------------
    def sorted_monomials(self) -> list[Monomial]:
        vs = self.variables

        def key(m):
            d = dict(m)
            return (_mono_deg(m), tuple(d.get(v, 0) for v in vs))

        return sorted(self._terms, key=key, reverse=True)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for i, m in enumerate(self.sorted_monomials()):
            c = self._terms[m]
            neg = c < 0 if not self.domain.characteristic else False
            a = -c if neg else c
            body = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
            if not body:
                txt = _fmt_coeff(a)
            elif a == 1:
                txt = body
            else:
                txt = f"{_fmt_coeff(a)}*{body}"
            if i == 0:
                parts.append(f"-{txt}" if neg else txt)
            else:
                parts.append(f" - {txt}" if neg else f" + {txt}")
        return "".join(parts)

    def __repr__(self):
        return f"MultiPoly({str(self)!r}, char={self.domain.characteristic})"


def coeffs_in(p: MultiPoly, v: str) -> list[MultiPoly]:
    return p.coeffs_in(v)


def pseudo_divide(f: MultiPoly, g: MultiPoly, v: str) -> tuple[MultiPoly, MultiPoly, int]:
    """Return ``(q, r, e)`` with ``lc_v(g)**e * f == q*g + r`` and ``deg_v r < deg_v g``.

    ``e`` counts the steps, so ``e <= deg_v f - deg_v g + 1``; when the
    leading coefficient is 1 no scaling happens and ``e`` is 0.
    """
    if f.domain != g.domain:
        raise DomainMismatch(f"{f.domain} vs {g.domain}")
    if g.is_zero():
        raise ZeroDivisionError("pseudo-division by the zero polynomial")
    dom = f.domain
    dg = g.degree(v)
    lc = g.lc(v)
    unit = lc == 1
    q = MultiPoly.zero(dom)
    r = f
    e = 0
    while not r.is_zero() and r.degree(v) >= dg:
        dr = r.degree(v)
        t = r.lc(v) * MultiPoly.var(v, dom, dr - dg) if dr > dg else r.lc(v)
        if unit:
            q = q + t
            r = r - t * g
        else:
            q = lc * q + t
            r = lc * r - t * g
            e += 1
    return q, r, e


def prem(f: MultiPoly, g: MultiPoly, v: str) -> MultiPoly:
    return pseudo_divide(f, g, v)[1]
