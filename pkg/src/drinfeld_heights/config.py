"""Experiment configuration files (JSON).

Example::

    {
      "module": {"q": 3, "phi_t": ["t", "1"]},
      "generators": ["1"], "alpha": "1", "S": ["inf"],
      "caps": {"deg_caps": [0, 1, 2, 3, 4]}
    }

For q = p^e with e > 1 add ``"field": {"p": 2, "e": 2, "modulus": "u^2+u+1"}``.
Every string is parsed on load, so a bad value fails with the path of the
offending field; :meth:`Config.to_dict` writes the normalized forms back.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

from .drinfeld import DEFAULT_MAX_DEGREE, DrinfeldModule
from .errors import ConfigError
from .field import GF, field as make_field, is_prime
from .integrality import DEFAULT_MAX_ROWS, PlaceSet
from .parse import format_ratk, parse_modulus, parse_poly, parse_ratk
from .places import Place, parse_place
from .poly import Poly
from .ratfunc import RatK


@dataclass
class Caps:
    deg_cap: int = 4
    deg_caps: list[int] | None = None
    iter_cap: int = 8
    annulus_cap: int = 3
    torsion_cap: int = 6
    max_point_degree: int = DEFAULT_MAX_DEGREE
    max_rows: int = DEFAULT_MAX_ROWS

    def caps_list(self) -> list[int]:
        return list(self.deg_caps) if self.deg_caps else list(range(self.deg_cap + 1))


@dataclass
class Config:
    p: int
    e: int
    modulus: str | None
    phi_t: list[str]
    points: list[str] = field(default_factory=list)
    places: list[str] = field(default_factory=list)
    generators: list[str] = field(default_factory=list)
    alpha: str | None = None
    beta: str | None = None
    S: list[str] = field(default_factory=list)
    probe: list[str] | None = None
    tuples: list[list[str]] = field(default_factory=list)
    integralize: bool = False
    caps: Caps = field(default_factory=Caps)

    # -- loading ---------------------------------------------------------

    @classmethod
    def load(cls, path: str | Path) -> "Config":
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: "
                              f"{exc.msg}") from exc
        return cls.from_dict(data)

    @classmethod
    def from_dict(cls, data: dict) -> "Config":
        if not isinstance(data, dict):
            raise ConfigError("config: top level must be an object")
        known = {"field", "module", "points", "places", "generators", "alpha", "beta", "S",
                 "probe", "tuples", "caps", "integralize"}
        extra = set(data) - known
        if extra:
            raise ConfigError(f"config: unknown keys {sorted(extra)}")
        module = data.get("module")
        if not isinstance(module, dict) or "phi_t" not in module:
            raise ConfigError("config.module: expected an object with 'phi_t'")
        fspec = data.get("field") or {}
        if not isinstance(fspec, dict):
            raise ConfigError("config.field: expected an object")
        q = module.get("q")
        p = fspec.get("p")
        e = fspec.get("e", 1)
        if p is None:
            if not isinstance(q, int) or not is_prime(q):
                raise ConfigError("config.module.q: a prime q is required unless config.field "
                                  "gives p, e and modulus")
            p, e = q, 1
        if not isinstance(p, int) or not isinstance(e, int):
            raise ConfigError("config.field: p and e must be integers")
        if q is not None and q != p**e:
            raise ConfigError(f"config.module.q: {q} does not equal p^e = {p**e}")
        modulus = fspec.get("modulus")
        cfg = cls(p=p, e=e, modulus=modulus, phi_t=_str_list(module["phi_t"], "config.module.phi_t"))
        cfg.points = _str_list(data.get("points", []), "config.points")
        cfg.places = _str_list(data.get("places", []), "config.places")
        cfg.generators = _str_list(data.get("generators", []), "config.generators")
        cfg.alpha = _opt_str(data.get("alpha"), "config.alpha")
        cfg.beta = _opt_str(data.get("beta"), "config.beta")
        cfg.S = _str_list(data.get("S", []), "config.S")
        probe = data.get("probe")
        cfg.probe = None if probe is None else _str_list(probe, "config.probe")
        tuples = data.get("tuples", [])
        if not isinstance(tuples, list):
            raise ConfigError("config.tuples: expected a list of lists")
        cfg.tuples = [_str_list(t if isinstance(t, list) else [t], f"config.tuples[{i}]")
                      for i, t in enumerate(tuples)]
        cfg.integralize = bool(data.get("integralize", False))
        caps = data.get("caps", {})
        if not isinstance(caps, dict):
            raise ConfigError("config.caps: expected an object")
        names = {f.name for f in fields(Caps)}
        bad = set(caps) - names
        if bad:
            raise ConfigError(f"config.caps: unknown keys {sorted(bad)}")
        for k, v in caps.items():
            if k == "deg_caps":
                if v is not None and (not isinstance(v, list)
                                      or not all(isinstance(x, int) and x >= 0 for x in v)):
                    raise ConfigError("config.caps.deg_caps: expected a list of integers >= 0")
            elif not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise ConfigError(f"config.caps.{k}: expected an integer >= 0")
        cfg.caps = Caps(**caps)
        cfg._normalize()
        return cfg

    def _normalize(self) -> None:
        """Parse every value (raising ConfigError with its path) and store normal forms."""
        try:
            modulus = None if self.modulus is None else parse_modulus(self.p, self.modulus)
            F = make_field(self.p, self.e, modulus)
        except ValueError as exc:
            raise ConfigError(f"config.field: {exc}") from exc
        self._F = F
        if modulus is not None:
            self.modulus = str(Poly(make_field(self.p), modulus)).replace("t", "u")
        coeffs = [_parse(F, s, f"config.module.phi_t[{i}]") for i, s in enumerate(self.phi_t)]
        try:
            self._module = DrinfeldModule(F, coeffs)
        except ValueError as exc:
            raise ConfigError(f"config.module.phi_t: {exc}") from exc
        self.phi_t = [format_ratk(c) for c in self._module.phi_t.coeffs]
        self.points = [format_ratk(_parse(F, s, f"config.points[{i}]"))
                       for i, s in enumerate(self.points)]
        self.generators = [format_ratk(_parse(F, s, f"config.generators[{i}]"))
                           for i, s in enumerate(self.generators)]
        if self.alpha is not None:
            self.alpha = format_ratk(_parse(F, self.alpha, "config.alpha"))
        if self.beta is not None:
            self.beta = format_ratk(_parse(F, self.beta, "config.beta"))
        self.places = [str(_place(F, s, f"config.places[{i}]")) for i, s in enumerate(self.places)]
        self.S = [str(v) for v in PlaceSet(_place(F, s, f"config.S[{i}]")
                                           for i, s in enumerate(self.S))]
        if self.probe is not None:
            self.probe = [str(v) for v in PlaceSet(_place(F, s, f"config.probe[{i}]")
                                                   for i, s in enumerate(self.probe))]
        tuples = []
        for i, t in enumerate(self.tuples):
            row = []
            for j, s in enumerate(t):
                try:
                    row.append(str(parse_poly(F, s)))
                except ValueError as exc:
                    raise ConfigError(f"config.tuples[{i}][{j}]: {exc}") from exc
            tuples.append(row)
        self.tuples = tuples

    # -- domain objects --------------------------------------------------

    @property
    def F(self) -> GF:
        return self._F

    @property
    def module(self) -> DrinfeldModule:
        return self._module

    def ratk(self, s: str) -> RatK:
        return parse_ratk(self._F, s)

    def place_set(self, names) -> PlaceSet:
        return PlaceSet(parse_place(self._F, s) for s in names)

    def poly_tuples(self) -> list[tuple[Poly, ...]]:
        return [tuple(parse_poly(self._F, s) for s in t) for t in self.tuples]

    def require(self, *names: str) -> None:
        for name in names:
            val = getattr(self, name)
            if val is None or val == []:
                raise ConfigError(f"config.{name}: required for this command")

    # -- saving ----------------------------------------------------------

    def to_dict(self) -> dict:
        out = {"module": {"q": self.p**self.e, "phi_t": list(self.phi_t)}}
        if self.e != 1:
            out["field"] = {"p": self.p, "e": self.e, "modulus": self.modulus}
        for name in ("points", "places", "generators", "S", "tuples"):
            val = getattr(self, name)
            if val:
                out[name] = val
        for name in ("alpha", "beta", "probe"):
            val = getattr(self, name)
            if val is not None:
                out[name] = val
        if self.integralize:
            out["integralize"] = True
        out["caps"] = asdict(self.caps)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Config):
            return NotImplemented
        return self.to_dict() == other.to_dict()


def _str_list(val, path: str) -> list[str]:
    if not isinstance(val, list):
        raise ConfigError(f"{path}: expected a list")
    out = []
    for i, x in enumerate(val):
        if isinstance(x, bool) or not isinstance(x, (str, int)):
            raise ConfigError(f"{path}[{i}]: expected a string")
        out.append(str(x))
    return out


def _opt_str(val, path: str) -> str | None:
    if val is None:
        return None
    if isinstance(val, bool) or not isinstance(val, (str, int)):
        raise ConfigError(f"{path}: expected a string")
    return str(val)


def _parse(F: GF, s: str, path: str) -> RatK:
    try:
        return parse_ratk(F, s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"{path}: cannot parse {s!r}: {exc}") from exc


def _place(F: GF, s: str, path: str) -> Place:
    try:
        return parse_place(F, s)
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
