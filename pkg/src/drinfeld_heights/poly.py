"""Dense polynomials over F_q: the ring A = F_q[t].

Coefficients are stored lowest degree first as a tuple of field ints.  Large
products go through Kronecker substitution (pack coefficients into one big
Python int, multiply, unpack), which is what keeps the doubly exponential
degrees of Drinfeld orbits affordable.
"""

from __future__ import annotations

import functools
from typing import Iterator

from .errors import ResourceLimitError
from .field import GF

_KRONECKER_MIN_LEN = 24

# trial division enumerates all monic polynomials of a degree; refuse beyond this
MAX_TRIAL_CANDIDATES = 2_000_000


def _trim(c: list[int]) -> tuple[int, ...]:
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


class Poly:
    __slots__ = ("F", "c")

    def __init__(self, F: GF, coeffs=()):
        if F.e == 1:
            c = [int(x) % F.p for x in coeffs]
        else:
            c = [int(x) for x in coeffs]
            if any(x < 0 or x >= F.q for x in c):
                raise ValueError("coefficient out of range for F_q")
        self.F = F
        self.c = _trim(c)

    @classmethod
    def _raw(cls, F: GF, c: tuple[int, ...]) -> "Poly":
        obj = object.__new__(cls)
        obj.F = F
        obj.c = c
        return obj

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, F: GF) -> "Poly":
        return cls._raw(F, ())

    @classmethod
    def one(cls, F: GF) -> "Poly":
        return cls._raw(F, (1,))

    @classmethod
    def const(cls, F: GF, a: int) -> "Poly":
        return cls._raw(F, (a,) if a else ())

    @classmethod
    def monomial(cls, F: GF, k: int, a: int = 1) -> "Poly":
        if not a:
            return cls._raw(F, ())
        return cls._raw(F, (0,) * k + (a,))

    @classmethod
    def t(cls, F: GF) -> "Poly":
        return cls._raw(F, (0, 1))

    @classmethod
    def from_int(cls, F: GF, n: int) -> "Poly":
        """Inverse of :meth:`to_int` (base-q digits are the coefficients)."""
        c = []
        q = F.q
        while n:
            n, r = divmod(n, q)
            c.append(r)
        return cls._raw(F, tuple(c))

    def to_int(self) -> int:
        n = 0
        q = self.F.q
        for x in reversed(self.c):
            n = n * q + x
        return n

    # -- basic properties ------------------------------------------------

    @property
    def deg(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.c) - 1

    @property
    def lead(self) -> int:
        return self.c[-1] if self.c else 0

    def is_zero(self) -> bool:
        return not self.c

    def is_one(self) -> bool:
        return self.c == (1,)

    def is_constant(self) -> bool:
        return len(self.c) <= 1

    def is_monic(self) -> bool:
        return bool(self.c) and self.c[-1] == 1

    def __getitem__(self, k: int) -> int:
        return self.c[k] if 0 <= k < len(self.c) else 0

    def __bool__(self) -> bool:
        return bool(self.c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.F is other.F and self.c == other.c

    def __hash__(self) -> int:
        return hash(self.c)

    def __lt__(self, other: "Poly") -> bool:
        # degree-lexicographic, the order of enumerate_polys
        return (len(self.c), self.c[::-1]) < (len(other.c), other.c[::-1])

    def sort_key(self) -> tuple:
        return (len(self.c), self.c[::-1])

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        return format_poly(self)

    # -- ring operations -------------------------------------------------

    def _check(self, other: "Poly") -> None:
        if self.F is not other.F:
            raise ValueError("polynomials over different fields")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        F = self.F
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        if not b:
            return self._raw(F, a)
        if F.e == 1:
            p = F.p
            c = [(x + y) % p for x, y in zip(a, b)]
        else:
            add = F._add
            c = [add[x][y] for x, y in zip(a, b)]
        c.extend(a[len(b):])
        return self._raw(F, _trim(c))

    def __neg__(self) -> "Poly":
        F = self.F
        if F.e == 1:
            p = F.p
            return self._raw(F, tuple((-x) % p for x in self.c))
        neg = F._neg
        return self._raw(F, tuple(neg[x] for x in self.c))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def scale(self, a: int) -> "Poly":
        """Multiply by the constant a in F_q."""
        F = self.F
        if a == 0:
            return self._raw(F, ())
        if a == 1:
            return self
        if F.e == 1:
            p = F.p
            return self._raw(F, tuple((x * a) % p for x in self.c))
        row = F._mul[a]
        return self._raw(F, tuple(row[x] for x in self.c))

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        a, b = self.c, other.c
        if not a or not b:
            return self._raw(self.F, ())
        if len(a) == 1:
            return other.scale(a[0])
        if len(b) == 1:
            return self.scale(b[0])
        if min(len(a), len(b)) >= _KRONECKER_MIN_LEN:
            return self._raw(self.F, _trim(_kronecker_mul(a, b, self.F)))
        return self._raw(self.F, _trim(_school_mul(a, b, self.F)))

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.one(self.F)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def frob(self, k: int = 1) -> "Poly":
        """f^(q^k).  Coefficients lie in F_q, so this only spreads exponents."""
        if k == 0 or len(self.c) <= 1:
            return self
        step = self.F.q**k
        c = [0] * ((len(self.c) - 1) * step + 1)
        c[::step] = self.c
        return self._raw(self.F, tuple(c))

    def derivative(self) -> "Poly":
        F = self.F
        c = [F.mul(F.from_int(i), x) for i, x in enumerate(self.c)][1:]
        return self._raw(F, _trim(c))

    def pth_root(self) -> "Poly":
        """The g with g^p = self; requires self to be a polynomial in t^p."""
        F = self.F
        p = F.p
        c = self.c
        if any(c[i] for i in range(len(c)) if i % p):
            raise ValueError("not a p-th power")
        return self._raw(F, tuple(F.pth_root(x) for x in c[::p]))

    def monic(self) -> "Poly":
        if not self.c:
            return self
        return self.scale(self.F.inv(self.c[-1]))

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        self._check(other)
        if not other.c:
            raise ZeroDivisionError("division by the zero polynomial")
        F = self.F
        g = other.c
        dg = len(g) - 1
        r = list(self.c)
        if len(r) <= dg:
            return self._raw(F, ()), self
        nq = len(r) - dg
        quo = [0] * nq
        if F.e == 1:
            p = F.p
            inv = pow(g[-1], -1, p)
            if dg == 0:
                return self._raw(F, tuple((x * inv) % p for x in r)), self._raw(F, ())
            for k in range(nq - 1, -1, -1):
                top = r[k + dg]
                if top:
                    c = (top * inv) % p
                    quo[k] = c
                    for j in range(dg):
                        r[k + j] = (r[k + j] - c * g[j]) % p
                    r[k + dg] = 0
        else:
            mul, add, neg = F._mul, F._add, F._neg
            inv = F.inv(g[-1])
            for k in range(nq - 1, -1, -1):
                top = r[k + dg]
                if top:
                    c = mul[top][inv]
                    quo[k] = c
                    nc = neg[c]
                    row = mul[nc]
                    for j in range(dg):
                        if g[j]:
                            r[k + j] = add[r[k + j]][row[g[j]]]
                    r[k + dg] = 0
        return self._raw(F, _trim(quo)), self._raw(F, _trim(r[:dg]))

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        quo, rem = divmod(self, other)
        if rem.c:
            raise ArithmeticError("inexact polynomial division")
        return quo

    def valuation_at(self, P: "Poly") -> int:
        """Multiplicity of the irreducible P in self (self must be nonzero)."""
        if not self.c:
            raise ValueError("valuation of the zero polynomial")
        if P.c == (0, 1):
            k = 0
            while self.c[k] == 0:
                k += 1
            return k
        k = 0
        f = self
        while True:
            quo, rem = divmod(f, P)
            if rem.c:
                return k
            f = quo
            k += 1


# -- multiplication kernels ----------------------------------------------


def _school_mul(a, b, F: GF) -> list[int]:
    res = [0] * (len(a) + len(b) - 1)
    if F.e == 1:
        if len(a) > len(b):
            a, b = b, a
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    res[i + j] += x * y
        p = F.p
        return [v % p for v in res]
    mul, add = F._mul, F._add
    for i, x in enumerate(a):
        if x:
            row = mul[x]
            for j, y in enumerate(b):
                if y:
                    res[i + j] = add[res[i + j]][row[y]]
    return res


@functools.lru_cache(maxsize=None)
def _slot_strings(F: GF, w: int) -> tuple[str, ...]:
    # each element as 2e-1 hex slots of width w, most significant slot first
    e = F.e
    L = 2 * e - 1
    out = []
    for a in range(F.q):
        ds = F._digits(a) + [0] * (L - e)
        out.append("".join(format(d, f"0{w}x") for d in reversed(ds)))
    return tuple(out)


def _kronecker_mul(a, b, F: GF) -> list[int]:
    p, e = F.p, F.e
    n = min(len(a), len(b))
    bound = n * e * (p - 1) ** 2
    w = max(1, (bound.bit_length() + 3) // 4)
    total = len(a) + len(b) - 1
    if e == 1:
        fmt = f"0{w}x"
        A = int("".join([format(x, fmt) for x in reversed(a)]), 16)
        B = int("".join([format(x, fmt) for x in reversed(b)]), 16)
        s = format(A * B, "x").zfill(total * w)
        out = [int(s[i:i + w], 16) % p for i in range(0, total * w, w)]
        out.reverse()
        return out
    slots = _slot_strings(F, w)
    L = 2 * e - 1
    A = int("".join([slots[x] for x in reversed(a)]), 16)
    B = int("".join([slots[x] for x in reversed(b)]), 16)
    bw = L * w
    s = format(A * B, "x").zfill(total * bw)
    out = []
    for k in range(total - 1, -1, -1):
        block = s[(total - 1 - k) * bw:(total - k) * bw]
        us = [int(block[(L - 1 - j) * w:(L - j) * w], 16) for j in range(L)]
        out.append(F.reduce_upoly(us))
    out.reverse()
    return out


# -- gcd, irreducibility, factoring ---------------------------------------


def gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd (zero only if both inputs are zero)."""
    while g.c:
        f, g = g, f % g
    return f.monic()


def is_irreducible(f: Poly) -> bool:
    """Ben-Or test: gcd(f, t^(q^i) - t) == 1 for all i <= deg f / 2."""
    n = f.deg
    if n < 1:
        raise ValueError("irreducibility is only defined for non-constant polynomials")
    F = f.F
    fm = f.monic()
    t = Poly.t(F)
    x = t
    for _ in range(n // 2):
        x = x.frob(1) % fm
        if not gcd(fm, x - t).is_one():
            return False
    return True


def enumerate_polys(F: GF, max_deg: int, monic_only: bool = False) -> Iterator[Poly]:
    """Every polynomial of degree <= max_deg exactly once, degree-lexicographic."""
    if max_deg < 0:
        raise ValueError("max_deg must be >= 0")
    q = F.q
    if not monic_only:
        for n in range(q ** (max_deg + 1)):
            yield Poly.from_int(F, n)
        return
    for k in range(max_deg + 1):
        base = q**k
        for low in range(base):
            yield Poly.from_int(F, base + low)


@functools.lru_cache(maxsize=None)
def irreducibles(F: GF, k: int) -> tuple[Poly, ...]:
    """All monic irreducible polynomials of degree exactly k, in enumeration order."""
    if F.q**k > MAX_TRIAL_CANDIDATES:
        raise ResourceLimitError(f"enumerating degree-{k} irreducibles over F_{F.q} is too large")
    base = F.q**k
    out = []
    for low in range(base):
        f = Poly.from_int(F, base + low)
        if is_irreducible(f):
            out.append(f)
    return tuple(out)


def factor_with_basis(f: Poly, basis) -> tuple[int, list[int], Poly]:
    """Write f = unit * prod(basis_i ** e_i) * cofactor with a monic cofactor.

    The cofactor is coprime to every basis element.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    unit = f.lead
    g = f.monic()
    exps = []
    for P in basis:
        e = 0
        if g.deg >= P.deg:
            while True:
                quo, rem = divmod(g, P)
                if rem.c:
                    break
                g = quo
                e += 1
        exps.append(e)
    return unit, exps, g


def squarefree_parts(f: Poly) -> list[Poly]:
    """Pairwise squarefree pieces whose union of prime factors is that of f."""
    f = f.monic()
    if f.deg < 1:
        return []
    fd = f.derivative()
    if fd.is_zero():
        return squarefree_parts(f.pth_root())
    out = []
    c = gcd(f, fd)
    w = f.exact_div(c)
    while not w.is_one():
        y = gcd(w, c)
        z = w.exact_div(y)
        if not z.is_one():
            out.append(z)
        w = y
        c = c.exact_div(y)
    if not c.is_one():
        out.extend(squarefree_parts(c.pth_root()))
    return out


def prime_factors(f: Poly) -> list[Poly]:
    """Distinct monic irreducible factors of f, by trial division of squarefree parts."""
    primes = set()
    for g in squarefree_parts(f):
        k = 1
        while g.deg >= 1:
            if 2 * k > g.deg:
                primes.add(g)
                break
            for P in irreducibles(g.F, k):
                quo, rem = divmod(g, P)
                if not rem.c:
                    primes.add(P)
                    g = quo
                    if g.deg < 1:
                        break
            k += 1
    return sorted(primes)


def factor(f: Poly) -> list[tuple[Poly, int]]:
    """[(P, multiplicity)] over the monic irreducible factors of f."""
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    return [(P, f.valuation_at(P)) for P in prime_factors(f)]


# -- text ----------------------------------------------------------------


def format_poly(f: Poly) -> str:
    if not f.c:
        return "0"
    F = f.F
    terms = []
    for k in range(len(f.c) - 1, -1, -1):
        a = f.c[k]
        if not a:
            continue
        cs = F.format_elem(a)
        if k == 0:
            terms.append(cs)
            continue
        mon = "t" if k == 1 else f"t^{k}"
        if a == 1:
            terms.append(mon)
        elif "+" in cs:
            terms.append(f"({cs})*{mon}")
        else:
            terms.append(f"{cs}*{mon}")
    return "+".join(terms)
