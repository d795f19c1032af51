"""S-integrality, enumeration of finitely generated phi-submodules, and the
finiteness experiments built on them."""

from __future__ import annotations

import itertools
import logging
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .drinfeld import DEFAULT_MAX_DEGREE, DrinfeldModule
from .errors import ResourceLimitError
from .heights import canonical_height
from .places import INF, Place, log_abs, support
from .poly import Poly, enumerate_polys, factor_with_basis, gcd
from .ratfunc import RatK, common_denominator

log = logging.getLogger(__name__)

DEFAULT_MAX_ROWS = 200_000


class PlaceSet:
    """A finite set of places kept in canonical order."""

    __slots__ = ("places",)

    def __init__(self, places: Iterable[Place] = ()):
        self.places = tuple(sorted(set(places)))

    def __iter__(self):
        return iter(self.places)

    def __len__(self) -> int:
        return len(self.places)

    def __contains__(self, v) -> bool:
        return v in self.places

    def __eq__(self, other) -> bool:
        if not isinstance(other, PlaceSet):
            return NotImplemented
        return self.places == other.places

    def __hash__(self) -> int:
        return hash(self.places)

    def __or__(self, other) -> "PlaceSet":
        return PlaceSet(self.places + tuple(other))

    def __le__(self, other: "PlaceSet") -> bool:
        return set(self.places) <= set(other.places)

    @property
    def finite_primes(self) -> list[Poly]:
        return [v.prime for v in self.places if not v.is_infinite]

    def to_strings(self) -> list[str]:
        return [str(v) for v in self.places]

    def __repr__(self) -> str:
        return "PlaceSet({" + ", ".join(self.to_strings()) + "})"


@dataclass
class SubmoduleSpec:
    """The phi-submodule generated by ``generators``."""

    module: DrinfeldModule
    generators: list[RatK]
    torsion_free_checked: bool = False

    def __post_init__(self):
        if not self.generators:
            raise ValueError("a submodule needs at least one generator")
        if any(g.is_zero() for g in self.generators):
            raise ValueError("generators must be nonzero")

    @property
    def r(self) -> int:
        return len(self.generators)

    def check_torsion_free(self, deg_cap: int = 4, max_degree: int = DEFAULT_MAX_DEGREE) -> list:
        """Warn about torsion generators; returns [(generator, order)] found."""
        found = []
        for g in self.generators:
            try:
                order = self.module.torsion_annihilator(g, deg_cap, max_degree)
            except ResourceLimitError:
                continue
            if order is not None:
                found.append((g, order))
                warnings.warn(f"generator {g} is torsion of order {order}", stacklevel=2)
        self.torsion_free_checked = True
        return found


# -- S-integrality ---------------------------------------------------------


def _strip(f: Poly, primes: Sequence[Poly]) -> Poly:
    if not primes or f.deg < 1:
        return f.monic()
    return factor_with_basis(f, primes)[2]


def _strip_common(f: Poly, g: Poly) -> Poly:
    """Remove from f every prime that divides g."""
    if g.deg < 1:
        return f
    while f.deg >= 1:
        h = gcd(f, g)
        if h.is_one():
            break
        f = f.exact_div(h)
    return f


def s_integral(beta: RatK, alpha: RatK, S: Iterable[Place]) -> bool:
    """Whether beta is S-integral with respect to alpha (both in K).

    At every place v outside S: if |alpha|_v <= 1 then |beta - alpha|_v >= 1,
    and if |alpha|_v > 1 then |beta|_v <= 1.  Decided without factoring:
    known primes are stripped and the cofactor must be constant.
    """
    S = S if isinstance(S, PlaceSet) else PlaceSet(S)
    x = beta - alpha
    if x.is_zero():
        return False
    primes = S.finite_primes
    # zeros of beta - alpha away from S must be poles of alpha
    rest = _strip_common(_strip(x.num, primes), alpha.den)
    if rest.deg >= 1:
        return False
    # common poles of alpha and beta must lie in S
    both = gcd(alpha.den, beta.den)
    if _strip(both, primes).deg >= 1:
        return False
    if INF not in S:
        if alpha.is_zero() or log_abs(alpha, INF) <= 0:
            if log_abs(x, INF) < 0:
                return False
        elif log_abs(beta, INF) > 0:
            return False
    return True


def s_integral_at(beta: RatK, alpha: RatK, v: Place) -> bool:
    """The two defining clauses at a single place v."""
    la = log_abs(alpha, v)
    if la <= 0:
        return log_abs(beta - alpha, v) >= 0
    return log_abs(beta, v) <= 0


# -- submodule enumeration --------------------------------------------------


def _tuple_key(tup: tuple[Poly, ...]) -> tuple:
    return (max(P.deg for P in tup), tuple(P.sort_key() for P in tup))


def tuple_max_degree(tup: tuple[Poly, ...]) -> int:
    return max(P.deg for P in tup)


def enumerate_tuples(F, r: int, deg_cap: int, max_rows: int = DEFAULT_MAX_ROWS):
    count = F.q ** (r * (deg_cap + 1))
    if count > max_rows:
        raise ResourceLimitError(f"{count} tuples exceed max_rows={max_rows}")
    polys = list(enumerate_polys(F, deg_cap))
    return sorted(itertools.product(polys, repeat=r), key=_tuple_key)


class _PointSpan:
    """sum_i phi_{P_i}(gamma_i) from precomputed orbits over one common denominator."""

    def __init__(self, gamma: SubmoduleSpec, deg_cap: int, max_degree: int):
        M = gamma.module
        self.F = M.F
        orbits = [M.orbit(g, deg_cap, max_degree) for g in gamma.generators]
        flat = [y for orb in orbits for y in orb]
        nums, self.den = common_denominator(flat)
        n = deg_cap + 1
        self.nums = [nums[i * n:(i + 1) * n] for i in range(len(orbits))]

    def point(self, tup: Sequence[Poly]) -> RatK:
        acc = Poly.zero(self.F)
        for P, nums in zip(tup, self.nums):
            for c, f in zip(P.c, nums):
                if c:
                    acc = acc + f.scale(c)
        if self.den.is_one():
            return RatK(acc)
        return RatK(acc, self.den)


def enumerate_submodule(gamma: SubmoduleSpec, deg_cap: int, max_rows: int = DEFAULT_MAX_ROWS,
                        max_degree: int = DEFAULT_MAX_DEGREE) -> Iterator[tuple[tuple[Poly, ...], RatK]]:
    """All (P_1..P_r) with deg P_i <= deg_cap and their points, in report order."""
    if deg_cap < 0:
        raise ValueError("deg_cap must be >= 0")
    tuples = enumerate_tuples(gamma.module.F, gamma.r, deg_cap, max_rows)
    span = _PointSpan(gamma, deg_cap, max_degree)
    for tup in tuples:
        yield tup, span.point(tup)


def default_probe_set(gamma: SubmoduleSpec, alpha: RatK, S: Iterable[Place]) -> PlaceSet:
    """S, infinity, bad places, and the supports of alpha and the generators."""
    places = set(S)
    places.add(INF)
    places.update(gamma.module.bad_places)
    for x in [alpha, *gamma.generators]:
        if not x.is_zero():
            places.update(v for v, _ in support(x))
    return PlaceSet(places)


# -- experiments -------------------------------------------------------------

EXCEPTIONAL = "exceptional"
UNDEFINED = "undefined"


@dataclass
class Row:
    tuple: tuple[Poly, ...]
    point: RatK
    s_integral: bool
    ratios: dict  # Place -> Fraction | None
    flag: str = ""

    @property
    def max_degree(self) -> int:
        return tuple_max_degree(self.tuple)


@dataclass
class ExperimentReport:
    kind: str
    places: PlaceSet
    rows: list[Row]
    summary: dict = field(default_factory=dict)


def _ratio_weight(M: DrinfeldModule, tup: Sequence[Poly]) -> int:
    qd = M.q**M.rank
    return sum(qd**P.deg for P in tup if not P.is_zero())


def _ratios(M: DrinfeldModule, tup, point: RatK, alpha: RatK, probe: PlaceSet):
    weight = _ratio_weight(M, tup)
    diff = point - alpha
    if diff.is_zero():
        return {v: None for v in probe}, EXCEPTIONAL
    if weight == 0:
        return {v: None for v in probe}, UNDEFINED
    return {v: Fraction(log_abs(diff, v), weight) for v in probe}, ""


def _evaluate(rows_in, M, alpha, S, probe, threads):
    def work(item):
        tup, point = item
        ratios, flag = _ratios(M, tup, point, alpha, probe)
        return Row(tup, point, s_integral(point, alpha, S), ratios, flag)

    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            return list(ex.map(work, rows_in))
    return [work(item) for item in rows_in]


def ratio_summary(rows: Sequence[Row], probe: PlaceSet, caps: Sequence[int]) -> dict:
    """Running min (liminf proxy) and running max (limsup proxy) per place, by cap."""
    out = {}
    for v in probe:
        running_min, running_max, layer_min, layer_max = {}, {}, {}, {}
        lo = hi = None
        for cap in sorted(caps):
            vals = [r.ratios[v] for r in rows if r.max_degree <= cap and r.ratios[v] is not None]
            layer = [r.ratios[v] for r in rows if r.max_degree == cap and r.ratios[v] is not None]
            lo = min(vals) if vals else lo
            hi = max(vals) if vals else hi
            running_min[cap], running_max[cap] = lo, hi
            layer_min[cap] = min(layer) if layer else None
            layer_max[cap] = max(layer) if layer else None
        out[v] = {"running_min": running_min, "running_max": running_max,
                  "layer_min": layer_min, "layer_max": layer_max}
    return out


def _argmax_place(summary: dict):
    best, best_val = None, None
    for v, s in summary.items():
        vals = [x for x in s["running_max"].values() if x is not None]
        if vals and (best_val is None or max(vals) > best_val):
            best, best_val = v, max(vals)
    return best, best_val


def _collisions(rows: Sequence[Row]) -> int:
    seen = {}
    n = 0
    for r in rows:
        if r.point in seen:
            n += 1
        else:
            seen[r.point] = r.tuple
    return n


def siegel_experiment(gamma: SubmoduleSpec, alpha: RatK, S: Iterable[Place],
                      deg_caps: Sequence[int], probe: PlaceSet | None = None,
                      max_rows: int = DEFAULT_MAX_ROWS, max_degree: int = DEFAULT_MAX_DEGREE,
                      threads: int = 1, torsion_cap: int = 4) -> ExperimentReport:
    """Count S-integral points of Gamma (w.r.t. alpha) for each degree cap."""
    if not deg_caps:
        raise ValueError("need at least one degree cap")
    S = S if isinstance(S, PlaceSet) else PlaceSet(S)
    M = gamma.module
    if not gamma.torsion_free_checked:
        gamma.check_torsion_free(torsion_cap, max_degree)
    probe = probe if probe is not None else default_probe_set(gamma, alpha, S)
    top = max(deg_caps)
    rows = _evaluate(list(enumerate_submodule(gamma, top, max_rows, max_degree)),
                     M, alpha, S, probe, threads)
    caps = sorted(set(deg_caps))
    counts = {D: sum(1 for r in rows if r.s_integral and r.max_degree <= D) for D in caps}
    ratios = ratio_summary(rows, probe, caps)
    argmax, argmax_val = _argmax_place(ratios)
    summary = {
        "counts": counts,
        "stabilized": len(caps) >= 2 and counts[caps[-1]] == counts[caps[-2]],
        "collisions": _collisions(rows),
        "exceptional_rows": sum(1 for r in rows if r.flag == EXCEPTIONAL),
        "ratios": ratios,
        "argmax_place": argmax,
        "argmax_value": argmax_val,
    }
    return ExperimentReport("siegel", probe, rows, summary)


def silverman_experiment(M: DrinfeldModule, beta: RatK, alpha: RatK, S: Iterable[Place],
                         deg_cap: int, probe: PlaceSet | None = None,
                         max_rows: int = DEFAULT_MAX_ROWS, max_degree: int = DEFAULT_MAX_DEGREE,
                         threads: int = 1, iter_cap: int = 8) -> ExperimentReport:
    """Which phi_Q(beta), deg Q <= deg_cap, are S-integral with respect to alpha."""
    S = S if isinstance(S, PlaceSet) else PlaceSet(S)
    h = canonical_height(M, beta, iter_cap, max_degree=max_degree)
    if h.value == 0:
        warnings.warn(f"beta = {beta} may be torsion (canonical height lower bound 0)",
                      stacklevel=2)
    gamma = SubmoduleSpec(M, [beta], torsion_free_checked=True)
    probe = probe if probe is not None else default_probe_set(gamma, alpha, S)
    rows = _evaluate(list(enumerate_submodule(gamma, deg_cap, max_rows, max_degree)),
                     M, alpha, S, probe, threads)
    per_degree = {}
    for D in range(-1, deg_cap + 1):
        per_degree[D] = sum(1 for r in rows if r.s_integral and r.max_degree == D)
    counts = {D: sum(v for k, v in per_degree.items() if k <= D) for D in range(deg_cap + 1)}
    ratios = ratio_summary(rows, probe, list(range(deg_cap + 1)))
    argmax, argmax_val = _argmax_place(ratios)
    summary = {
        "counts": counts,
        "per_degree": per_degree,
        "canonical_height": h.value,
        "canonical_height_exact": h.exact,
        "integral_Q": [str(r.tuple[0]) for r in rows if r.s_integral],
        "exceptional_rows": sum(1 for r in rows if r.flag == EXCEPTIONAL),
        "ratios": ratios,
        "argmax_place": argmax,
        "argmax_value": argmax_val,
    }
    return ExperimentReport("silverman", probe, rows, summary)


def ratio_series(gamma: SubmoduleSpec, alpha: RatK, probe: Iterable[Place],
                 tuples: Sequence[Sequence[Poly]],
                 max_degree: int = DEFAULT_MAX_DEGREE) -> dict:
    """Place -> list of log|sum phi_{P_i}(gamma_i) - alpha|_v / sum q^(d deg P_i).

    Exceptional rows (the sum equals alpha) give None.
    """
    probe = probe if isinstance(probe, PlaceSet) else PlaceSet(probe)
    tuples = [tuple(t) for t in tuples]
    if len(set(tuples)) != len(tuples):
        raise ValueError("tuples must be pairwise distinct")
    if any(len(t) != gamma.r for t in tuples):
        raise ValueError(f"each tuple needs {gamma.r} polynomials")
    cap = max(P.deg for t in tuples for P in t)
    span = _PointSpan(gamma, max(cap, 0), max_degree)
    out = {v: [] for v in probe}
    for t in tuples:
        ratios, _ = _ratios(gamma.module, t, span.point(t), alpha, probe)
        for v in probe:
            out[v].append(ratios[v])
    return out


def ratio_report(gamma: SubmoduleSpec, alpha: RatK, S: Iterable[Place], probe: Iterable[Place],
                 tuples: Sequence[Sequence[Poly]],
                 max_degree: int = DEFAULT_MAX_DEGREE) -> ExperimentReport:
    """Rows for explicit tuples, in the given order, with running min/max per place."""
    S = S if isinstance(S, PlaceSet) else PlaceSet(S)
    probe = probe if isinstance(probe, PlaceSet) else PlaceSet(probe)
    tuples = [tuple(t) for t in tuples]
    series = ratio_series(gamma, alpha, probe, tuples, max_degree)
    cap = max(P.deg for t in tuples for P in t)
    span = _PointSpan(gamma, max(cap, 0), max_degree)
    rows = []
    for k, t in enumerate(tuples):
        point = span.point(t)
        ratios = {v: series[v][k] for v in probe}
        _, flag = _ratios(gamma.module, t, point, alpha, PlaceSet())
        rows.append(Row(t, point, s_integral(point, alpha, S), ratios, flag))
    running = {}
    for v in probe:
        lo = hi = None
        mins, maxs = [], []
        for x in series[v]:
            if x is not None:
                lo = x if lo is None else min(lo, x)
                hi = x if hi is None else max(hi, x)
            mins.append(lo)
            maxs.append(hi)
        running[v] = {"running_min": mins, "running_max": maxs}
    argmax = max((v for v in probe if running[v]["running_max"][-1] is not None),
                 key=lambda v: running[v]["running_max"][-1], default=None)
    summary = {"ratios": running, "argmax_place": argmax,
               "argmax_value": running[argmax]["running_max"][-1] if argmax else None}
    return ExperimentReport("ratios", probe, rows, summary)


__all__ = [
    "DEFAULT_MAX_ROWS",
    "EXCEPTIONAL",
    "UNDEFINED",
    "PlaceSet",
    "SubmoduleSpec",
    "s_integral",
    "s_integral_at",
    "tuple_max_degree",
    "enumerate_tuples",
    "enumerate_submodule",
    "default_probe_set",
    "Row",
    "ExperimentReport",
    "ratio_summary",
    "siegel_experiment",
    "silverman_experiment",
    "ratio_series",
    "ratio_report",
]
