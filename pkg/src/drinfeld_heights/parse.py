"""Text forms of polynomials, rational functions and places.

Grammar (whitespace ignored)::

    expr   := ['-'] term (('+' | '-') term)*
    term   := power (('*' | '/') power)*
    power  := atom ['^' INT]
    atom   := INT | 't' | 'u' | '(' expr ')'

Integers are read mod p; ``u`` is the generator of F_q over F_p (only for
e > 1).  Printing produces the normal form ``num/den`` which parses back to
the identical value.
"""

from __future__ import annotations

import re

from .field import GF
from .poly import Poly, format_poly
from .ratfunc import RatK

_TOKEN = re.compile(r"\s*(?:(\d+)|([tu])|(.))")


class ParseError(ValueError):
    pass


def _tokenize(s: str) -> list[str]:
    tokens = []
    pos = 0
    s = s.strip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if m is None:
            break
        tok = m.group(1) or m.group(2) or m.group(3)
        if tok is None or tok.isspace():
            pos = m.end()
            continue
        if m.group(3) is not None and tok not in "+-*/^()":
            raise ParseError(f"unexpected character {tok!r} in {s!r}")
        tokens.append(tok)
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, F: GF, text: str):
        self.F = F
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None:
            raise ParseError(f"unexpected end of input in {self.text!r}")
        if expected is not None and tok != expected:
            raise ParseError(f"expected {expected!r}, got {tok!r} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self) -> RatK:
        if not self.toks:
            raise ParseError("empty expression")
        val = self.expr()
        if self.peek() is not None:
            raise ParseError(f"trailing input {self.peek()!r} in {self.text!r}")
        return val

    def expr(self) -> RatK:
        neg = False
        if self.peek() == "-":
            self.take()
            neg = True
        val = self.term()
        if neg:
            val = -val
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self) -> RatK:
        val = self.power()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.power()
            if op == "*":
                val = val * rhs
            else:
                if rhs.is_zero():
                    raise ParseError(f"division by zero in {self.text!r}")
                val = val / rhs
        return val

    def power(self) -> RatK:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            tok = self.take()
            if not tok.isdigit():
                raise ParseError(f"exponent must be a non-negative integer in {self.text!r}")
            base = base ** int(tok)
        return base

    def atom(self) -> RatK:
        tok = self.take()
        F = self.F
        if tok.isdigit():
            return RatK.const(F, F.from_int(int(tok)))
        if tok == "t":
            return RatK.t(F)
        if tok == "u":
            if F.e == 1:
                raise ParseError(f"'u' used over the prime field F_{F.p} in {self.text!r}")
            return RatK.const(F, F.generator_u())
        if tok == "(":
            val = self.expr()
            self.take(")")
            return val
        if tok == "-":
            return -self.power()
        raise ParseError(f"unexpected token {tok!r} in {self.text!r}")


def parse_ratk(F: GF, text: str) -> RatK:
    return _Parser(F, str(text)).parse()


def parse_poly(F: GF, text: str) -> Poly:
    x = parse_ratk(F, text)
    if not x.is_poly():
        raise ParseError(f"{text!r} is not a polynomial")
    return x.num


def parse_fq(F: GF, text: str) -> int:
    f = parse_poly(F, text)
    if f.deg > 0:
        raise ParseError(f"{text!r} is not a constant")
    return f.lead


def _wrap(f: Poly) -> str:
    s = format_poly(f)
    if "+" in s:
        return f"({s})"
    return s


def format_ratk(x: RatK) -> str:
    if x.den.is_one():
        return format_poly(x.num)
    return f"{_wrap(x.num)}/{_wrap(x.den)}"


def parse_modulus(p: int, text: str) -> tuple[int, ...]:
    """Read a modulus written in the variable u, e.g. ``u^2+u+1``."""
    from .field import field

    Fp = field(p)
    return parse_poly(Fp, text.replace("u", "t")).c
