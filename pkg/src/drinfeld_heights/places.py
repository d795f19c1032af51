"""Places of F_q(t) and their normalized logarithmic absolute values.

``log_abs(x, v)`` is ``-ord_v(x) * deg(v)``: an integer in log_q units, so
that the product formula reads ``sum_v log_abs(x, v) == 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .field import GF
from .poly import Poly, irreducibles, is_irreducible, prime_factors
from .ratfunc import RatK

NEG_INF = -math.inf
POS_INF = math.inf


@dataclass(frozen=True)
class Place:
    """The infinite place (``prime is None``) or a finite place (monic irreducible)."""

    prime: Poly | None = None

    def __post_init__(self):
        P = self.prime
        if P is not None:
            if not P.is_monic() or P.deg < 1:
                raise ValueError(f"place prime {P} must be monic of degree >= 1")

    @classmethod
    def finite(cls, P: Poly, check: bool = True) -> "Place":
        if check and not is_irreducible(P):
            raise ValueError(f"{P} is not irreducible")
        return cls(P)

    @property
    def is_infinite(self) -> bool:
        return self.prime is None

    @property
    def degree(self) -> int:
        return 1 if self.prime is None else self.prime.deg

    def sort_key(self) -> tuple:
        if self.prime is None:
            return (0,)
        return (1,) + self.prime.sort_key()

    def __lt__(self, other: "Place") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return "inf" if self.prime is None else str(self.prime)

    def __repr__(self) -> str:
        return f"Place({self})"


INF = Place(None)


def parse_place(F: GF, text: str) -> Place:
    from .parse import parse_poly

    text = text.strip()
    if text in ("inf", "oo", "infinity"):
        return INF
    P = parse_poly(F, text)
    if not P.is_monic():
        raise ValueError(f"place {text!r} is not given by a monic polynomial")
    return Place.finite(P)


def poly_valuation(f: Poly, v: Place) -> float | int:
    if f.is_zero():
        return POS_INF
    if v.prime is None:
        return -f.deg
    return f.valuation_at(v.prime)


def valuation(x: RatK, v: Place) -> float | int:
    """ord_v(x); +inf for x == 0."""
    if x.is_zero():
        return POS_INF
    if v.prime is None:
        return x.den.deg - x.num.deg
    P = v.prime
    if x.num.deg >= P.deg:
        k = x.num.valuation_at(P)
        if k:
            return k
    if x.den.deg >= P.deg:
        return -x.den.valuation_at(P)
    return 0


def log_abs(x: RatK, v: Place) -> float | int:
    """log_q |x|_v, an integer, or -inf for x == 0."""
    if x.is_zero():
        return NEG_INF
    return -valuation(x, v) * v.degree


def log_abs_frac(num: Poly, den: Poly, v: Place) -> float | int:
    """log_q |num/den|_v without reducing the fraction first."""
    if num.is_zero():
        return NEG_INF
    if v.prime is None:
        return num.deg - den.deg
    return (den.valuation_at(v.prime) - num.valuation_at(v.prime)) * v.degree


def support(x: RatK) -> list[tuple[Place, int]]:
    """All places where x has nonzero valuation, with that valuation."""
    if x.is_zero():
        raise ValueError("support of zero is not finite")
    out = []
    for P in prime_factors(x.num):
        out.append((Place(P), x.num.valuation_at(P)))
    for P in prime_factors(x.den):
        out.append((Place(P), -x.den.valuation_at(P)))
    if x.num.deg != x.den.deg:
        out.append((INF, x.den.deg - x.num.deg))
    return out


def poles(x: RatK) -> list[Place]:
    """Finite places where |x|_v > 1."""
    if x.den.is_one():
        return []
    return [Place(P) for P in prime_factors(x.den)]


def product_formula_check(x: RatK) -> int:
    """Sum of log|x|_v over all places; always 0 for nonzero x."""
    if x.is_zero():
        raise ValueError("product formula needs a nonzero element")
    return sum(log_abs(x, v) for v, _ in support(x))


def enumerate_places(F: GF, max_deg: int, include_infinite: bool = True) -> list[Place]:
    if max_deg < 1:
        raise ValueError("max_deg must be >= 1")
    out = [INF] if include_infinite else []
    for k in range(1, max_deg + 1):
        out.extend(Place(P) for P in irreducibles(F, k))
    return out
