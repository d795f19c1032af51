"""Weil heights and exact local/global canonical heights.

All heights are exact :class:`fractions.Fraction` values in log_q units.
Local heights come from escape thresholds: once log|y|_v exceeds the escape
threshold the top term of phi_t dominates forever and the limit has a closed
form, so no limit is ever approximated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .drinfeld import DEFAULT_MAX_DEGREE, DrinfeldModule, _guard, twisted_eval
from .errors import ResourceLimitError
from .places import INF, Place, log_abs, log_abs_frac, poles, support
from .poly import Poly, enumerate_polys
from .ratfunc import RatK, common_denominator

# local height iteration stops (with a certified bound) past this orbit degree
HEIGHT_MAX_DEGREE = 20_000

EXACT = "exact"
UPPER_BOUND = "upper_bound"


@dataclass(frozen=True)
class Thresholds:
    escape_log: Fraction
    contraction_log: Fraction | None = None


@dataclass(frozen=True)
class LocalHeightResult:
    """Exact value of h_v, or a certified bound with h_v in [0, value].

    ``escape_step`` is the degree of the polynomial Q for which phi_Q(x)
    crossed the escape threshold (None unless the route was an escape).
    """

    status: str
    value: Fraction
    iterations_used: int
    route: str
    escape_step: int | None = None

    @property
    def exact(self) -> bool:
        return self.status == EXACT


@dataclass(frozen=True)
class CanonicalHeight:
    value: Fraction
    exact: bool
    local: dict = field(default_factory=dict)

    @property
    def certainty(self) -> str:
        return EXACT if self.exact else "lower_bound_only"


class ExceptionalPoint(ValueError):
    """phi_Q(beta) equals alpha, so log|phi_Q(beta) - alpha|_v is -inf."""


def weil_height(x: RatK) -> int:
    """max(deg num, deg den): the Weil height in log_q units."""
    if x.is_zero():
        return 0
    return max(x.num.deg, x.den.deg)


def weil_height_by_places(x: RatK) -> int:
    """sum_v max(log|x|_v, 0), summed over the support of x."""
    if x.is_zero():
        return 0
    return sum(max(log_abs(x, v), 0) for v, _ in support(x))


def thresholds(M: DrinfeldModule, v: Place) -> Thresholds:
    q, d = M.q, M.rank
    logs = [log_abs(a, v) for a in M.coeffs]
    ld = logs[d]
    escape = max(Fraction(0), Fraction(-ld, q**d - 1))
    for i in range(d):
        if M.coeffs[i].is_zero():
            continue
        escape = max(escape, Fraction(logs[i] - ld, q**d - q**i))
    if v.is_infinite:
        return Thresholds(escape)
    contraction = min(Fraction(-logs[i], q**i - 1)
                      for i in range(1, d + 1) if not M.coeffs[i].is_zero())
    return Thresholds(escape, contraction)


def _upper_bound(M: DrinfeldModule, th: Thresholds, corr: Fraction, n: int) -> Fraction:
    slack = max(Fraction(0), corr) + max(Fraction(0), -corr)
    return (th.escape_log + slack) / M.q ** (M.rank * n)


def local_canonical_height(M: DrinfeldModule, x: RatK, v: Place, iter_cap: int = 8,
                           annulus_cap: int = 3,
                           max_degree: int = HEIGHT_MAX_DEGREE) -> LocalHeightResult:
    if iter_cap < 0:
        raise ValueError("iter_cap must be >= 0")
    q, d = M.q, M.rank
    if x.is_zero():
        return LocalHeightResult(EXACT, Fraction(0), 0, "zero")
    if not v.is_infinite and M.reduction_type(v) == "good":
        lx = log_abs(x, v)
        if lx > 0:
            return LocalHeightResult(EXACT, Fraction(lx), 0, "good_reduction", 0)
        return LocalHeightResult(EXACT, Fraction(0), 0, "good_reduction")
    th = thresholds(M, v)
    corr = Fraction(log_abs(M.leading, v), q**d - 1)
    orbit = []
    seen = set()
    y = x
    done = 0
    for n in range(iter_cap + 1):
        if n > 0:
            try:
                y = twisted_eval(M.phi_t, y)
                _guard(y, max_degree)
            except ResourceLimitError:
                break
        done = n
        orbit.append(y)
        if y.is_zero():
            return LocalHeightResult(EXACT, Fraction(0), n, "periodic")
        ly = log_abs(y, v)
        if ly > th.escape_log:
            return LocalHeightResult(EXACT, (ly + corr) / q ** (d * n), n, "escape", n)
        if th.contraction_log is not None and ly <= th.contraction_log:
            return LocalHeightResult(EXACT, Fraction(0), n, "contraction")
        if y in seen:
            return LocalHeightResult(EXACT, Fraction(0), n, "periodic")
        seen.add(y)
    if not v.is_infinite and annulus_cap > 0:
        res = _annulus(M, x, v, orbit, th, corr, annulus_cap, max_degree, done)
        if res is not None:
            return res
    return LocalHeightResult(UPPER_BOUND, _upper_bound(M, th, corr, done), done, "cap")


def _annulus(M, x, v, orbit, th, corr, annulus_cap, max_degree, done):
    # phi_P(x) for monic P with deg P <= annulus_cap resolves the annulus
    # between the contraction and escape radii
    q, d = M.q, M.rank
    try:
        while len(orbit) <= annulus_cap:
            y = twisted_eval(M.phi_t, orbit[-1])
            _guard(y, max_degree)
            orbit.append(y)
    except ResourceLimitError:
        annulus_cap = len(orbit) - 1
    if annulus_cap < 1:
        return None
    nums, den = common_denominator(orbit[: annulus_cap + 1])
    for P in enumerate_polys(M.F, annulus_cap, monic_only=True):
        if P.deg < 1:
            continue
        num = Poly.zero(M.F)
        for c, f in zip(P.c, nums):
            if c:
                num = num + f.scale(c)
        if num.is_zero():
            return LocalHeightResult(EXACT, Fraction(0), done, "annulus")
        ly = log_abs_frac(num, den, v)
        if ly > th.escape_log:
            value = (ly + corr) / q ** (d * P.deg)
            return LocalHeightResult(EXACT, value, done, "annulus", P.deg)
        if ly <= th.contraction_log:
            return LocalHeightResult(EXACT, Fraction(0), done, "annulus")
    return None


def height_places(M: DrinfeldModule, x: RatK) -> list[Place]:
    """Places where h_v(x) can be nonzero: infinity, bad places, poles of x."""
    out = {INF}
    out.update(M.bad_places)
    out.update(poles(x))
    return sorted(out)


def canonical_height(M: DrinfeldModule, x: RatK, iter_cap: int = 8, annulus_cap: int = 3,
                     max_degree: int = HEIGHT_MAX_DEGREE) -> CanonicalHeight:
    """Sum of local canonical heights; ``exact`` is False if any term is only bounded.

    With a bounded term the returned value is the sum of the exact terms, a
    lower bound for the true height.
    """
    local = {}
    total = Fraction(0)
    exact = True
    for v in height_places(M, x):
        r = local_canonical_height(M, x, v, iter_cap, annulus_cap, max_degree)
        local[v] = r
        if r.exact:
            total += r.value
        else:
            exact = False
    return CanonicalHeight(total, exact, local)


def naive_height_estimate(M: DrinfeldModule, x: RatK, n: int,
                          max_degree: int = DEFAULT_MAX_DEGREE) -> Fraction:
    """h(phi_{t^n}(x)) / q^(dn)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    y = M.orbit(x, n, max_degree)[-1]
    return Fraction(weil_height(y), M.q ** (M.rank * n))


def in_filled_julia(M: DrinfeldModule, x: RatK, v: Place, iter_cap: int = 8,
                    max_degree: int = HEIGHT_MAX_DEGREE) -> str:
    """'inside', 'outside' or 'undetermined' for the v-adic filled Julia set."""
    th = thresholds(M, v)
    seen = set()
    y = x
    for n in range(iter_cap + 1):
        if n > 0:
            try:
                y = twisted_eval(M.phi_t, y)
                _guard(y, max_degree)
            except ResourceLimitError:
                return "undetermined"
        if y.is_zero() or y in seen:
            return "inside"
        ly = log_abs(y, v)
        if ly > th.escape_log:
            return "outside"
        if th.contraction_log is not None and ly <= th.contraction_log:
            return "inside"
        seen.add(y)
    return "undetermined"


def log_distance_ratio(M: DrinfeldModule, beta: RatK, alpha: RatK, Q: Poly, v: Place,
                       max_degree: int = DEFAULT_MAX_DEGREE) -> Fraction:
    """log|phi_Q(beta) - alpha|_v / q^(d deg Q)."""
    if Q.is_zero():
        raise ValueError("Q must be nonzero")
    diff = M.act(Q, beta, max_degree) - alpha
    if diff.is_zero():
        raise ExceptionalPoint(f"phi_{Q}({beta}) == {alpha}")
    return Fraction(log_abs(diff, v), M.q ** (M.rank * Q.deg))


def denominator_divides(M: DrinfeldModule, r: LocalHeightResult) -> bool:
    """Whether the denominator of an exact local height divides q^(dk)(q^d - 1)."""
    if not r.exact:
        raise ValueError("only exact local heights have a denominator bound")
    if r.value == 0:
        return True
    k = r.escape_step or 0
    bound = M.q ** (M.rank * k) * (M.q**M.rank - 1)
    return bound % r.value.denominator == 0


def denominator_bound_check(M: DrinfeldModule, samples, v: Place, iter_cap: int = 8,
                            annulus_cap: int = 3) -> bool:
    good = not v.is_infinite and M.reduction_type(v) == "good"
    for x in samples:
        r = local_canonical_height(M, x, v, iter_cap, annulus_cap)
        if not r.exact:
            raise ValueError(f"local height of {x} at {v} is only an upper bound")
        if good:
            if r.value.denominator != 1 or r.value < 0:
                return False
        elif not denominator_divides(M, r):
            return False
    return True


__all__ = [
    "HEIGHT_MAX_DEGREE",
    "EXACT",
    "UPPER_BOUND",
    "Thresholds",
    "LocalHeightResult",
    "CanonicalHeight",
    "ExceptionalPoint",
    "weil_height",
    "weil_height_by_places",
    "thresholds",
    "local_canonical_height",
    "height_places",
    "canonical_height",
    "naive_height_estimate",
    "in_filled_julia",
    "log_distance_ratio",
    "denominator_divides",
    "denominator_bound_check",
]
