"""The rational function field K = F_q(t)."""

from __future__ import annotations

from .field import GF
from .poly import Poly, gcd


class RatK:
    """A reduced fraction num/den with den monic and gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly.one(num.F)
        num._check(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num = num
            self.den = Poly.one(num.F)
            return
        if not den.is_one():
            g = gcd(num, den)
            if not g.is_one():
                num = num.exact_div(g)
                den = den.exact_div(g)
            lead = den.lead
            if lead != 1:
                inv = num.F.inv(lead)
                num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den

    @classmethod
    def _reduced(cls, num: Poly, den: Poly) -> "RatK":
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    @classmethod
    def zero(cls, F: GF) -> "RatK":
        return cls._reduced(Poly.zero(F), Poly.one(F))

    @classmethod
    def one(cls, F: GF) -> "RatK":
        return cls._reduced(Poly.one(F), Poly.one(F))

    @classmethod
    def t(cls, F: GF) -> "RatK":
        return cls._reduced(Poly.t(F), Poly.one(F))

    @classmethod
    def const(cls, F: GF, a: int) -> "RatK":
        return cls._reduced(Poly.const(F, a), Poly.one(F))

    @property
    def F(self) -> GF:
        return self.num.F

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.is_one()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            other = RatK._reduced(other, Poly.one(other.F))
        if not isinstance(other, RatK):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num.c, self.den.c))

    def __repr__(self) -> str:
        return f"RatK({self})"

    def __str__(self) -> str:
        from .parse import format_ratk

        return format_ratk(self)

    # -- arithmetic ------------------------------------------------------

    @staticmethod
    def _coerce(x) -> "RatK":
        if isinstance(x, RatK):
            return x
        if isinstance(x, Poly):
            return RatK._reduced(x, Poly.one(x.F))
        return NotImplemented

    def __add__(self, other) -> "RatK":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.num, self.den, other.num, other.den
        if a.is_zero():
            return other
        if c.is_zero():
            return self
        if b.is_one() and d.is_one():
            return RatK._reduced(a + c, b)
        if d.is_one():
            # gcd(a + c*b, b) = gcd(a, b) = 1
            return RatK._reduced(a + c * b, b)
        if b.is_one():
            return RatK._reduced(a * d + c, d)
        if b == d:
            return RatK(a + c, b)
        g = gcd(b, d)
        if g.is_one():
            return RatK._reduced(a * d + c * b, b * d)
        bg, dg = b.exact_div(g), d.exact_div(g)
        return RatK(a * dg + c * bg, b * dg)

    __radd__ = __add__

    def __neg__(self) -> "RatK":
        return RatK._reduced(-self.num, self.den)

    def __sub__(self, other) -> "RatK":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "RatK":
        return (-self) + other

    def scale(self, a: int) -> "RatK":
        if a == 0:
            return RatK.zero(self.F)
        return RatK._reduced(self.num.scale(a), self.den)

    def __mul__(self, other) -> "RatK":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.num, self.den, other.num, other.den
        if a.is_zero() or c.is_zero():
            return RatK.zero(self.F)
        if b.is_one() and d.is_one():
            return RatK._reduced(a * c, b)
        g1 = gcd(a, d)
        g2 = gcd(c, b)
        if not g1.is_one():
            a, d = a.exact_div(g1), d.exact_div(g1)
        if not g2.is_one():
            c, b = c.exact_div(g2), b.exact_div(g2)
        num, den = a * c, b * d
        lead = den.lead
        if lead != 1:
            inv = self.F.inv(lead)
            num, den = num.scale(inv), den.scale(inv)
        return RatK._reduced(num, den)

    __rmul__ = __mul__

    def inverse(self) -> "RatK":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero in K")
        num, den = self.den, self.num
        lead = den.lead
        if lead != 1:
            inv = self.F.inv(lead)
            num, den = num.scale(inv), den.scale(inv)
        return RatK._reduced(num, den)

    def __truediv__(self, other) -> "RatK":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, n: int) -> "RatK":
        if n < 0:
            return self.inverse() ** (-n)
        # powers of a reduced fraction stay reduced
        return RatK._reduced(self.num**n, self.den**n)

    def frob(self, k: int = 1) -> "RatK":
        """x^(q^k)."""
        return RatK._reduced(self.num.frob(k), self.den.frob(k))


def common_denominator(xs) -> tuple[list[Poly], Poly]:
    """Numerators over one monic common denominator (the lcm of the dens)."""
    xs = list(xs)
    if not xs:
        raise ValueError("empty list")
    F = xs[0].F
    L = Poly.one(F)
    for x in xs:
        if not x.den.is_one() and not L == x.den:
            g = gcd(L, x.den)
            L = L * x.den.exact_div(g)
    nums = []
    for x in xs:
        if x.den == L:
            nums.append(x.num)
        else:
            nums.append(x.num * L.exact_div(x.den))
    return nums, L
