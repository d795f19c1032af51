"""Twisted polynomials K{tau} and Drinfeld modules over A = F_q[t]."""

from __future__ import annotations

import threading
from typing import Sequence

from .errors import ResourceLimitError
from .field import GF
from .places import Place, valuation
from .poly import Poly, gcd, prime_factors
from .ratfunc import RatK, common_denominator

# orbit values above this degree (num or den) raise ResourceLimitError
DEFAULT_MAX_DEGREE = 200_000


class TwistedPoly:
    """sum_i c_i tau^i with c_i in K, multiplied by composition (tau c = c^q tau)."""

    __slots__ = ("F", "coeffs")

    def __init__(self, F: GF, coeffs: Sequence[RatK] = ()):
        c = list(coeffs)
        while c and c[-1].is_zero():
            c.pop()
        self.F = F
        self.coeffs = tuple(c)

    @classmethod
    def identity(cls, F: GF) -> "TwistedPoly":
        return cls(F, [RatK.one(F)])

    @classmethod
    def tau(cls, F: GF, k: int = 1) -> "TwistedPoly":
        return cls(F, [RatK.zero(F)] * k + [RatK.one(F)])

    @property
    def tau_degree(self) -> int:
        """-1 for the zero element."""
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> RatK:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else RatK.zero(self.F)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, TwistedPoly):
            return NotImplemented
        return self.F is other.F and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"TwistedPoly({self})"

    def __str__(self) -> str:
        from .parse import format_ratk

        terms = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            s = format_ratk(c)
            if i == 0:
                terms.append(f"({s})" if "+" in s else s)
            else:
                mon = "tau" if i == 1 else f"tau^{i}"
                terms.append(mon if s == "1" else f"({s})*{mon}")
        return " + ".join(terms) if terms else "0"

    def __add__(self, other: "TwistedPoly") -> "TwistedPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return TwistedPoly(self.F, [self[i] + other[i] for i in range(n)])

    def __neg__(self) -> "TwistedPoly":
        return TwistedPoly(self.F, [-c for c in self.coeffs])

    def __sub__(self, other: "TwistedPoly") -> "TwistedPoly":
        return self + (-other)

    def scale(self, a: int) -> "TwistedPoly":
        """Left (equivalently right) multiplication by a in F_q."""
        return TwistedPoly(self.F, [c.scale(a) for c in self.coeffs])

    def compose(self, other: "TwistedPoly") -> "TwistedPoly":
        """self o other: sum_{i,j} f_i g_j^(q^i) tau^(i+j)."""
        f, g = self.coeffs, other.coeffs
        if not f or not g:
            return TwistedPoly(self.F, [])
        out = [RatK.zero(self.F)] * (len(f) + len(g) - 1)
        for i, fi in enumerate(f):
            if fi.is_zero():
                continue
            for j, gj in enumerate(g):
                if gj.is_zero():
                    continue
                out[i + j] = out[i + j] + fi * gj.frob(i)
        return TwistedPoly(self.F, out)

    __mul__ = compose

    def is_integral(self) -> bool:
        return all(c.is_poly() for c in self.coeffs)

    def __call__(self, x: RatK) -> RatK:
        return twisted_eval(self, x)


def _integral_form(f: TwistedPoly) -> tuple[list[Poly], Poly]:
    """Numerators n_i and one monic B with c_i = n_i / B."""
    F = f.F
    B = Poly.one(F)
    for c in f.coeffs:
        if not c.den.is_one():
            B = B * c.den.exact_div(gcd(B, c.den))
    return [c.num * B.exact_div(c.den) for c in f.coeffs], B


def twisted_eval_frac(f: TwistedPoly, N: Poly, D: Poly) -> tuple[Poly, Poly]:
    """f(N/D) as an unreduced pair (num, den); den is monic when D is."""
    F = f.F
    ns, B = _integral_form(f)
    k = len(ns) - 1
    if D.is_one():
        num = Poly.zero(F)
        for i, c in enumerate(ns):
            if not c.is_zero():
                num = num + c * N.frob(i)
        return num, B
    # common denominator D^(q^k); D^(q^k - q^i) = frob_i(D^(q^(k-i) - 1))
    Dq1 = D ** (F.q - 1)
    E = [Poly.one(F)]
    for _ in range(k):
        E.append(E[-1].frob(1) * Dq1)
    num = Poly.zero(F)
    for i, c in enumerate(ns):
        if not c.is_zero():
            num = num + c * N.frob(i) * E[k - i].frob(i)
    return num, B * D.frob(k)


def _reduce_by(num: Poly, den: Poly, G: Poly) -> RatK:
    """num/den as a RatK, given that every common prime of num and den divides G."""
    if num.is_zero():
        return RatK.zero(num.F)
    while G.deg >= 1:
        h = gcd(gcd(G, num), den)
        if h.is_one():
            break
        num, den = num.exact_div(h), den.exact_div(h)
    return RatK._reduced(num, den)


def twisted_eval(f: TwistedPoly, x: RatK) -> RatK:
    """sum_i c_i x^(q^i), exactly."""
    F = f.F
    if x.is_zero() or f.is_zero():
        return RatK.zero(F)
    num, den = twisted_eval_frac(f, x.num, x.den)
    # a prime of den not dividing B divides D; there the top term has the
    # smallest valuation unless the prime also divides its numerator
    B = den if x.den.is_one() else den.exact_div(x.den.frob(len(f.coeffs) - 1))
    top = f.coeffs[-1].num
    return _reduce_by(num, den, B * gcd(top, x.den))


class DrinfeldModule:
    """phi: A -> K{tau} determined by phi_t = t + a_1 tau + ... + a_d tau^d."""

    def __init__(self, F: GF, phi_t: TwistedPoly | Sequence[RatK]):
        if not isinstance(phi_t, TwistedPoly):
            phi_t = TwistedPoly(F, phi_t)
        if phi_t.F is not F:
            raise ValueError("phi_t lives over a different field")
        if phi_t[0] != RatK.t(F):
            raise ValueError("the tau^0 coefficient of phi_t must be t")
        if phi_t.tau_degree < 1:
            raise ValueError("phi_t must have positive tau-degree")
        self.F = F
        self.phi_t = phi_t
        self._powers = [TwistedPoly.identity(F), phi_t]
        self._lock = threading.Lock()
        self._bad = None

    @classmethod
    def carlitz(cls, F: GF) -> "DrinfeldModule":
        return cls(F, [RatK.t(F), RatK.one(F)])

    @property
    def q(self) -> int:
        return self.F.q

    @property
    def rank(self) -> int:
        return self.phi_t.tau_degree

    d = rank

    @property
    def coeffs(self) -> tuple[RatK, ...]:
        return self.phi_t.coeffs

    @property
    def leading(self) -> RatK:
        return self.phi_t.coeffs[-1]

    def __repr__(self) -> str:
        return f"DrinfeldModule(q={self.q}, phi_t={self.phi_t})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, DrinfeldModule):
            return NotImplemented
        return self.phi_t == other.phi_t

    def __hash__(self) -> int:
        return hash(self.phi_t)

    # -- the morphism Q -> phi_Q ---------------------------------------

    def power(self, n: int) -> TwistedPoly:
        """phi_{t^n}, memoized."""
        with self._lock:
            while len(self._powers) <= n:
                self._powers.append(self.phi_t.compose(self._powers[-1]))
            return self._powers[n]

    def phi_of(self, Q: Poly) -> TwistedPoly:
        if Q.F is not self.F:
            raise ValueError("Q lives over a different field")
        acc = TwistedPoly(self.F, [])
        for i, c in enumerate(Q.c):
            if c:
                acc = acc + self.power(i).scale(c)
        return acc

    def orbit(self, x: RatK, n: int, max_degree: int = DEFAULT_MAX_DEGREE) -> list[RatK]:
        """[phi_{t^0}(x), ..., phi_{t^n}(x)]."""
        out = [x]
        y = x
        for _ in range(n):
            y = twisted_eval(self.phi_t, y)
            _guard(y, max_degree)
            out.append(y)
        return out

    def act(self, Q: Poly, x: RatK, max_degree: int = DEFAULT_MAX_DEGREE) -> RatK:
        """phi_Q(x) as an F_q-combination of the orbit of x."""
        if Q.is_zero() or x.is_zero():
            return RatK.zero(self.F)
        return linear_combination(self.orbit(x, Q.deg, max_degree), Q.c)

    # -- reduction -------------------------------------------------------

    def is_integral(self) -> bool:
        return self.phi_t.is_integral()

    @property
    def bad_places(self) -> list[Place]:
        if self._bad is None:
            primes = set()
            for c in self.coeffs[1:]:
                if not c.is_zero():
                    primes.update(prime_factors(c.den))
            primes.update(prime_factors(self.leading.num))
            self._bad = [Place(P) for P in sorted(primes)]
        return self._bad

    def reduction_type(self, v: Place) -> str:
        """'good' or 'bad' at the finite place v."""
        if v.is_infinite:
            raise ValueError("reduction type is only defined at finite places")
        for c in self.coeffs:
            if not c.is_zero() and valuation(c, v) < 0:
                return "bad"
        return "good" if valuation(self.leading, v) == 0 else "bad"

    def integralize(self) -> tuple["DrinfeldModule", RatK]:
        """An isomorphic module gamma^-1 phi gamma with phi_t integral away from infinity."""
        F = self.F
        primes = set()
        for c in self.coeffs[1:]:
            if not c.is_zero():
                primes.update(prime_factors(c.den))
        if not primes:
            return self, RatK.one(F)
        B = Poly.one(F)
        for P in sorted(primes):
            B = B * P
        q = self.q
        k = 1
        while True:
            gamma = B**k
            new = [self.coeffs[0]]
            ok = True
            for i, c in enumerate(self.coeffs[1:], start=1):
                ci = c * RatK(gamma ** (q**i - 1))
                if not ci.is_poly():
                    ok = False
                    break
                new.append(ci)
            if ok:
                return DrinfeldModule(F, new), RatK(gamma)
            k += 1

    # -- torsion ---------------------------------------------------------

    def torsion_annihilator(self, beta: RatK, deg_cap: int,
                            max_degree: int = DEFAULT_MAX_DEGREE) -> Poly | None:
        """The order of beta if it has degree <= deg_cap, else None.

        Uses F_q-linearity of Q -> phi_Q(beta): the first n for which
        phi_{t^n}(beta) lies in the F_q-span of the earlier orbit values gives
        the monic annihilator of least degree.
        """
        if deg_cap < 0:
            raise ValueError("deg_cap must be >= 0")
        F = self.F
        orbit = [beta]
        for n in range(deg_cap + 1):
            if n > 0:
                y = twisted_eval(self.phi_t, orbit[-1])
                _guard(y, max_degree)
                orbit.append(y)
            relation = _fq_relation(F, orbit)
            if relation is not None:
                return Poly(F, relation)
        return None


def _guard(y: RatK, max_degree: int) -> None:
    if max(y.num.deg, y.den.deg) > max_degree:
        raise ResourceLimitError(
            f"orbit value of degree {max(y.num.deg, y.den.deg)} exceeds max_degree={max_degree}")


def linear_combination(values: Sequence[RatK], coeffs: Sequence[int]) -> RatK:
    """sum c_i values_i for c_i in F_q."""
    F = values[0].F
    acc = RatK.zero(F)
    for y, c in zip(values, coeffs):
        if c:
            acc = acc + y.scale(c)
    return acc


def _fq_relation(F: GF, ys: list[RatK]) -> list[int] | None:
    """Coefficients c with c_last = 1 and sum c_i ys_i = 0, if ys_last is in the span of the rest."""
    nums, _ = common_denominator(ys)
    width = max(f.deg for f in nums) + 1
    n = len(ys)
    rows = []  # (pivot, vector, combo), vectors normalized to 1 at the pivot
    for idx, f in enumerate(nums):
        vec = list(f.c) + [0] * (width - len(f.c))
        combo = [0] * n
        combo[idx] = 1
        for piv, rvec, rcombo in rows:
            c = vec[piv]
            if c:
                nc = F.neg(c)
                for j in range(width):
                    if rvec[j]:
                        vec[j] = F.add(vec[j], F.mul(nc, rvec[j]))
                for j in range(n):
                    if rcombo[j]:
                        combo[j] = F.add(combo[j], F.mul(nc, rcombo[j]))
        piv = next((j for j in range(width) if vec[j]), None)
        if piv is None:
            if idx == n - 1:
                return combo
            # an earlier value already depends on its predecessors
            return None
        inv = F.inv(vec[piv])
        rows.append((piv, [F.mul(inv, x) for x in vec], [F.mul(inv, x) for x in combo]))
    return None
