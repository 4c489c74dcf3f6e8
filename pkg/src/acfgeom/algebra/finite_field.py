"""Finite fields F_{p^k} = F_p[u]/(m(u)) backed by log/Zech tables.

The modulus m is the smallest monic irreducible of degree k in the order of
``(c_{k-1}, ..., c_0)``, so a field instance is a pure function of ``(p, k)``.
Elements are integer codes ``sum c_i p^i``; ``0`` and ``1`` are the field's
zero and one.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .. import kernels
from . import upoly
from .poly import is_prime

FIELD_CAP = 10 ** 7


class FieldTooLarge(ValueError):
    pass


def _prime_factors(n):
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


class GF:
    """The field with ``p**k`` elements."""

    def __init__(self, p: int, k: int = 1, cap: int = FIELD_CAP):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        if p ** k > cap:
            raise FieldTooLarge(f"F_{p}^{k} has {p ** k} elements, cap is {cap}")
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = upoly.smallest_irreducible(p, k)
        self.generator = self._find_generator()
        gen = self.coords(self.generator)
        self.exp = kernels.exp_table(p, k, list(self.modulus), gen)
        self.log, self.zech = kernels.zech_table(self.exp, p)
        n = self.q - 1
        minus_one = 0 if p == 2 else n // 2
        self.neg_table = np.zeros(self.q, dtype=np.int64)
        nz = np.arange(1, self.q)
        self.neg_table[1:] = self.exp[(self.log[nz] + minus_one) % n]

    def __repr__(self):
        return f"GF({self.p}^{self.k}, modulus={upoly.to_str(self.modulus, 'u')})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash((GF, self.p, self.k))

    # -- codes <-> coordinate vectors -----------------------------------------
    def coords(self, code: int) -> list[int]:
        out = []
        for _ in range(self.k):
            code, r = divmod(code, self.p)
            out.append(r)
        return out

    def from_coords(self, coords) -> int:
        code = 0
        for c in reversed(list(coords)):
            code = code * self.p + c % self.p
        return code

    def _polymul(self, a, b):
        return upoly.mod(upoly.mul(a, b, self.p), self.modulus, self.p)

    def _find_generator(self) -> int:
        n = self.q - 1
        if n == 1:
            return 1
        factors = _prime_factors(n)
        for cand in range(1, self.q):
            g = upoly.trim(self.coords(cand), self.p)
            if all(upoly.powmod(g, n // r, self.modulus, self.p) != (1,) for r in factors):
                return cand
        raise AssertionError("multiplicative group is cyclic")

    # -- scalar arithmetic on codes ------------------------------------------
    def add(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        n = self.q - 1
        la = self.log[a]
        z = self.zech[(self.log[b] - la) % n]
        return 0 if z < 0 else int(self.exp[(la + z) % n])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(self.log[a] + self.log[b]) % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return int(self.exp[(-self.log[a]) % (self.q - 1)])

    def pow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            return 0
        return int(self.exp[(self.log[a] * e) % (self.q - 1)])

    def from_int(self, n: int) -> int:
        return n % self.p

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def enumerate(self) -> list[FqElement]:
        return [FqElement(self, c) for c in range(self.q)]

    def element(self, value) -> FqElement:
        if isinstance(value, FqElement):
            return value
        if isinstance(value, (list, tuple)):
            return FqElement(self, self.from_coords(value))
        return FqElement(self, self.from_int(int(value)))

    @property
    def u(self) -> FqElement:
        """The class of the indeterminate u (equal to 0 when k = 1 and m = u)."""
        return self.element([0, 1] if self.k > 1 else [(-self.modulus[0]) % self.p])

    # -- subfields ------------------------------------------------------------
    def embedding_from(self, sub: GF) -> np.ndarray:
        """Array mapping codes of ``sub`` to codes of ``self`` (requires sub.k | self.k)."""
        return _embedding(sub.p, sub.k, self.p, self.k)

    def subfield_codes(self, k: int) -> np.ndarray:
        """Codes of the unique subfield with ``p**k`` elements, sorted."""
        if self.k % k:
            raise ValueError(f"F_{self.p}^{k} is not a subfield of F_{self.p}^{self.k}")
        step = (self.q - 1) // (self.p ** k - 1)
        return np.sort(np.concatenate([[0], self.exp[::step]]))


@lru_cache(maxsize=None)
def fq_make(p: int, k: int = 1) -> GF:
    return GF(p, k)


@lru_cache(maxsize=None)
def _embedding(p, k, p2, K):
    if p != p2 or K % k:
        raise ValueError("not a subfield")
    big = fq_make(p, K)
    small = fq_make(p, k)
    # image of u: smallest root of the small modulus inside the big field
    candidates = big.subfield_codes(k)
    m = small.modulus
    rho = None
    for c in candidates:
        acc = 0
        for coeff in reversed(m):
            acc = big.add(big.mul(acc, int(c)), big.from_int(coeff))
        if acc == 0:
            rho = int(c)
            break
    if rho is None:
        raise AssertionError("modulus must split in the extension")
    powers = [1]
    for _ in range(k - 1):
        powers.append(big.mul(powers[-1], rho))
    out = np.zeros(small.q, dtype=np.int64)
    for code in range(small.q):
        acc = 0
        for c, pw in zip(small.coords(code), powers):
            if c:
                acc = big.add(acc, big.mul(big.from_int(c), pw))
        out[code] = acc
    return out


@dataclass(frozen=True)
class FqElement:
    field: GF
    code: int

    @property
    def coords(self) -> list[int]:
        return self.field.coords(self.code)

    def _other(self, other):
        if isinstance(other, FqElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other.code
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FqElement(self.field, self.field.add(self.code, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FqElement(self.field, self.field.sub(self.code, o))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return FqElement(self.field, self.field.neg(self.code))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FqElement(self.field, self.field.mul(self.code, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FqElement(self.field, self.field.mul(self.code, self.field.inv(o)))

    def inverse(self) -> FqElement:
        return FqElement(self.field, self.field.inv(self.code))

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FqElement(self.field, self.field.pow(self.code, e))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.code == self.field.from_int(other)
        return isinstance(other, FqElement) and other.field == self.field and other.code == self.code

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.code))

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        if self.field.k == 1:
            return str(self.code)
        return upoly.to_str(upoly.trim(self.coords, self.field.p), "u")
