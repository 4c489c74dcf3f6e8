"""Reduced rational functions in F_p(t)."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from . import upoly
from .poly import is_prime


@dataclass(frozen=True)
class RatFunc:
    """``num/den`` with ``den`` monic and ``gcd(num, den) = 1``; zero is ``0/1``.

    Build through :meth:`make`, which reduces; the constructor trusts its input.
    """
    p: int
    num: tuple
    den: tuple

    @classmethod
    def make(cls, p: int, num, den=(1,)) -> RatFunc:
        num = upoly.trim(num, p)
        den = upoly.trim(den, p)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return cls(p, (), (1,))
        g = upoly.gcd(num, den, p)
        num = upoly.divmod_(num, g, p)[0]
        den = upoly.divmod_(den, g, p)[0]
        c = pow(den[-1], -1, p)
        return cls(p, upoly.scale(num, c, p), upoly.scale(den, c, p))

    @classmethod
    def t(cls, p: int) -> RatFunc:
        return cls.make(p, (0, 1))

    @classmethod
    def const(cls, p: int, c: int) -> RatFunc:
        return cls.make(p, (c,))

    def is_reduced(self) -> bool:
        return (bool(self.den) and self.den[-1] == 1
                and upoly.gcd(self.num, self.den, self.p) == (1,)
                and (self.num or self.den == (1,)))

    def __add__(self, o: RatFunc) -> RatFunc:
        p = self.p
        return RatFunc.make(p, upoly.add(upoly.mul(self.num, o.den, p), upoly.mul(o.num, self.den, p), p),
                            upoly.mul(self.den, o.den, p))

    def __neg__(self) -> RatFunc:
        return RatFunc(self.p, upoly.neg(self.num, self.p), self.den)

    def __sub__(self, o: RatFunc) -> RatFunc:
        return self + (-o)

    def __mul__(self, o: RatFunc) -> RatFunc:
        p = self.p
        return RatFunc.make(p, upoly.mul(self.num, o.num, p), upoly.mul(self.den, o.den, p))

    def __truediv__(self, o: RatFunc) -> RatFunc:
        if not o.num:
            raise ZeroDivisionError("division by zero rational function")
        p = self.p
        return RatFunc.make(p, upoly.mul(self.num, o.den, p), upoly.mul(self.den, o.num, p))

    def __pow__(self, e: int) -> RatFunc:
        out = RatFunc.const(self.p, 1)
        for _ in range(e):
            out = out * self
        return out

    def __str__(self):
        n = upoly.to_str(self.num)
        if self.den == (1,):
            return n
        return f"({n})/({upoly.to_str(self.den)})"


def ratfunc_enumerate(p: int, d: int) -> list[RatFunc]:
    """Every reduced fraction with numerator and denominator degree at most ``d``."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if d < 0:
        raise ValueError("degree bound must be >= 0")
    nums = [upoly.trim(c, p) for c in product(range(p), repeat=d + 1)]
    dens = [f for k in range(d + 1) for f in upoly.monic_of_degree(p, k)]
    out = [RatFunc(p, (), (1,))]
    for den in dens:
        for num in nums:
            if num and upoly.gcd(num, den, p) == (1,):
                out.append(RatFunc(p, num, den))
    return out
