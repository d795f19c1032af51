"""Finite fields F_q, q = p^e.

Elements are plain ints in ``range(q)``.  For ``e == 1`` an element is its
residue mod p.  For ``e > 1`` the base-p digits of the int are the
coordinates of the element in the basis 1, u, ..., u^(e-1), where u is a
root of the configured irreducible modulus.  Arithmetic for ``e > 1`` goes
through precomputed tables, which keeps q small in practice.
"""

from __future__ import annotations

import functools


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


class GF:
    """The finite field with q = p^e elements.

    Use :func:`field` to obtain instances; fields are interned so that two
    polynomials live in the same field iff their ``F`` attributes are the
    same object.
    """

    def __init__(self, p: int, e: int = 1, modulus: tuple[int, ...] | None = None):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if e < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.e = e
        self.q = p**e
        if e == 1:
            if modulus is not None and tuple(modulus) != (0, 1):
                raise ValueError("a prime field takes no modulus")
            self.modulus = None
            return
        if modulus is None:
            raise ValueError(f"F_{p}^{e} needs an explicit irreducible modulus")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {e}")
        from .poly import Poly, is_irreducible

        if not is_irreducible(Poly(field(p), modulus)):
            raise ValueError("modulus is not irreducible over the prime field")
        self.modulus = modulus
        self._build_tables()

    # -- table construction for e > 1 ------------------------------------

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.e):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def _undigits(self, ds) -> int:
        a = 0
        for d in reversed(ds):
            a = a * self.p + d
        return a

    def _build_tables(self) -> None:
        p, e, q = self.p, self.e, self.q
        digits = [self._digits(a) for a in range(q)]
        self._add = [[self._undigits([(x + y) % p for x, y in zip(digits[a], digits[b])])
                      for b in range(q)] for a in range(q)]
        self._neg = [self._undigits([(-x) % p for x in digits[a]]) for a in range(q)]
        # u^k reduced, k < 2e - 1; used for products and by the Kronecker path
        red = []
        for k in range(2 * e - 1):
            v = [0] * e
            if k < e:
                v[k] = 1
            else:
                prev = red[k - 1]
                # u * prev, then reduce u^e = -(m_0 + ... + m_{e-1} u^{e-1})
                top = prev[e - 1]
                v = [0] + prev[: e - 1]
                for i in range(e):
                    v[i] = (v[i] - top * self.modulus[i]) % p
            red.append(v)
        self._upow = red
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            da = digits[a]
            for b in range(a, q):
                db = digits[b]
                acc = [0] * e
                for i, x in enumerate(da):
                    if x:
                        for j, y in enumerate(db):
                            if y:
                                r = red[i + j]
                                c = x * y
                                for k in range(e):
                                    acc[k] += c * r[k]
                val = self._undigits([c % p for c in acc])
                mul[a][b] = mul[b][a] = val
        self._mul = mul
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a][b] == 1:
                    inv[a] = b
                    break
        self._inv = inv

    def reduce_upoly(self, coeffs) -> int:
        """Map an integer-coefficient polynomial in u (degree < 2e-1) into F_q."""
        p, e = self.p, self.e
        acc = [0] * e
        for k, c in enumerate(coeffs):
            if c:
                r = self._upow[k]
                for i in range(e):
                    acc[i] += c * r[i]
        return self._undigits([c % p for c in acc])

    # -- arithmetic ------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        return self._add[a][b]

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_q")
        if self.e == 1:
            return pow(a, -1, self.p)
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        if self.e == 1:
            return pow(a, n, self.p)
        result = 1
        while n:
            if n & 1:
                result = self._mul[result][a]
            a = self._mul[a][a]
            n >>= 1
        return result

    def pth_root(self, a: int) -> int:
        # Frobenius x -> x^p is bijective on F_q with inverse x -> x^(q/p)
        return self.pow(a, self.q // self.p)

    def elements(self):
        return range(self.q)

    # -- text ------------------------------------------------------------

    def format_elem(self, a: int) -> str:
        if self.e == 1:
            return str(a)
        terms = []
        for k, d in reversed(list(enumerate(self._digits(a)))):
            if not d:
                continue
            if k == 0:
                terms.append(str(d))
            else:
                mon = "u" if k == 1 else f"u^{k}"
                terms.append(mon if d == 1 else f"{d}*{mon}")
        return "+".join(terms) if terms else "0"

    def from_int(self, n: int) -> int:
        """Image of an integer under Z -> F_p -> F_q."""
        return n % self.p

    def generator_u(self) -> int:
        if self.e == 1:
            raise ValueError("'u' is only defined for extension fields")
        return self.p  # digits (0, 1, 0, ...)

    def __repr__(self) -> str:
        if self.e == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.e}, modulus={self.modulus})"


@functools.lru_cache(maxsize=None)
def _field(p: int, e: int, modulus: tuple[int, ...] | None) -> GF:
    return GF(p, e, modulus)


def field(p: int, e: int = 1, modulus=None) -> GF:
    """Interned constructor for :class:`GF`."""
    if modulus is not None:
        modulus = tuple(int(c) % p for c in modulus)
        if e == 1 and modulus == (0, 1):
            modulus = None
    return _field(p, e, modulus)
