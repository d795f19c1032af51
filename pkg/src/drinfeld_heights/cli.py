"""Command-line front end: ``drinfeld-heights COMMAND --config FILE``.

Exit status: 0 ok, 2 bad config, 3 resource bound hit, 4 internal invariant
violated.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import sys
from pathlib import Path

from .errors import ConfigError, InvariantViolation, ResourceLimitError
from .config import Config
from .drinfeld import twisted_eval, _guard
from .heights import canonical_height, local_canonical_height, weil_height
from .integrality import (SubmoduleSpec, default_probe_set, ratio_report,
                          siegel_experiment, silverman_experiment)
from .parse import format_ratk
from .places import INF, log_abs
from .report import report_csv, report_json

log = logging.getLogger("drinfeld_heights")

COMMANDS = ("heights", "torsion", "orbit", "siegel", "silverman", "ratios")


def _module(cfg: Config):
    M = cfg.module
    if cfg.integralize:
        M, _ = M.integralize()
    return M


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _points(cfg: Config):
    cfg.require("points")
    return [cfg.ratk(s) for s in cfg.points]


def cmd_heights(cfg: Config) -> dict[str, str]:
    M = _module(cfg)
    caps = cfg.caps
    extra = [cfg.place_set([s]).places[0] for s in cfg.places]
    rows = []
    for x in _points(cfg):
        h = canonical_height(M, x, caps.iter_cap, caps.annulus_cap, caps.max_point_degree)
        local = dict(h.local)
        for v in extra:
            if v not in local:
                local[v] = local_canonical_height(M, x, v, caps.iter_cap, caps.annulus_cap,
                                                  caps.max_point_degree)
        for v in sorted(local):
            r = local[v]
            rows.append([format_ratk(x), str(v), r.status, str(r.value), r.value.denominator,
                         r.iterations_used, r.route, "" if r.escape_step is None else r.escape_step])
        rows.append([format_ratk(x), "total", h.certainty, str(h.value), h.value.denominator,
                     "", "weil=" + str(weil_height(x)), ""])
        print(f"{format_ratk(x)}: canonical height {h.value} ({h.certainty})")
    header = ["point", "place", "status", "value", "denominator", "iterations", "route",
              "escape_step"]
    return {"heights.csv": _csv(header, rows)}


def cmd_torsion(cfg: Config) -> dict[str, str]:
    M = _module(cfg)
    caps = cfg.caps
    rows = []
    for x in _points(cfg):
        order = M.torsion_annihilator(x, caps.torsion_cap, caps.max_point_degree)
        h = canonical_height(M, x, caps.iter_cap, caps.annulus_cap, caps.max_point_degree)
        if order is not None:
            if h.exact and h.value != 0:
                raise InvariantViolation(
                    f"{format_ratk(x)} has order {order} but canonical height {h.value}")
            verdict, agree = str(order), "agree" if h.exact else "unchecked"
        elif h.exact and h.value > 0:
            verdict, agree = f"nontorsion (h = {h.value})", "agree"
        elif h.exact:
            # height 0 means torsion, but the order has degree above torsion_cap
            verdict, agree = f"torsion of degree > {caps.torsion_cap}", "agree"
        else:
            verdict, agree = f"no order of degree <= {caps.torsion_cap}", "unchecked"
        rows.append([format_ratk(x), verdict, str(h.value), h.certainty, agree])
        print(f"{format_ratk(x)}: {verdict}, h = {h.value}, {agree}")
    return {"torsion.csv": _csv(["point", "order", "canonical_height", "status", "agreement"],
                                rows)}


def cmd_orbit(cfg: Config) -> dict[str, str]:
    M = _module(cfg)
    caps = cfg.caps
    places = [INF] + [v for v in cfg.place_set(cfg.places) if not v.is_infinite]
    header = ["point", "n", "num_deg", "den_deg", "weil_height"] + [f"log@{v}" for v in places]
    rows = []
    for x in _points(cfg):
        y = x
        for n in range(caps.iter_cap + 1):
            if n > 0:
                y = twisted_eval(M.phi_t, y)
                _guard(y, caps.max_point_degree)
            zero = y.is_zero()
            rows.append([format_ratk(x), n, "-inf" if zero else y.num.deg,
                         "-inf" if zero else y.den.deg, weil_height(y)]
                        + ["-inf" if zero else log_abs(y, v) for v in places])
            if zero:
                break
    return {"orbit.csv": _csv(header, rows)}


def _gamma(cfg: Config, M) -> SubmoduleSpec:
    cfg.require("generators")
    return SubmoduleSpec(M, [cfg.ratk(s) for s in cfg.generators])


def cmd_siegel(cfg: Config, threads: int = 1) -> dict[str, str]:
    cfg.require("generators", "alpha")
    M = _module(cfg)
    caps = cfg.caps
    gamma = _gamma(cfg, M)
    probe = None if cfg.probe is None else cfg.place_set(cfg.probe)
    rep = siegel_experiment(gamma, cfg.ratk(cfg.alpha), cfg.place_set(cfg.S), caps.caps_list(),
                            probe, caps.max_rows, caps.max_point_degree, threads,
                            caps.torsion_cap)
    s = rep.summary
    counts = " ".join(f"{k}:{v}" for k, v in s["counts"].items())
    print(f"S-integral counts by cap: {counts}")
    print("stabilized on the last two caps" if s["stabilized"] else "not stabilized")
    return {"siegel.csv": report_csv(rep), "siegel.json": report_json(rep)}


def cmd_silverman(cfg: Config, threads: int = 1) -> dict[str, str]:
    cfg.require("beta", "alpha")
    M = _module(cfg)
    caps = cfg.caps
    probe = None if cfg.probe is None else cfg.place_set(cfg.probe)
    rep = silverman_experiment(M, cfg.ratk(cfg.beta), cfg.ratk(cfg.alpha), cfg.place_set(cfg.S),
                               caps.deg_cap, probe, caps.max_rows, caps.max_point_degree, threads,
                               caps.iter_cap)
    s = rep.summary
    print(f"S-integral Q: {', '.join(s['integral_Q']) or 'none'}")
    last = [s["per_degree"][D] for D in range(max(0, caps.deg_cap - 1), caps.deg_cap + 1)]
    print("no new integral points in the top degrees" if not any(last) and caps.deg_cap >= 1
          else "integral points still appearing")
    return {"silverman.csv": report_csv(rep), "silverman.json": report_json(rep)}


def cmd_ratios(cfg: Config, threads: int = 1) -> dict[str, str]:
    cfg.require("generators", "alpha", "tuples")
    M = _module(cfg)
    gamma = _gamma(cfg, M)
    alpha = cfg.ratk(cfg.alpha)
    S = cfg.place_set(cfg.S)
    probe = default_probe_set(gamma, alpha, S) if cfg.probe is None else cfg.place_set(cfg.probe)
    tuples = cfg.poly_tuples()
    if any(len(t) != gamma.r for t in tuples):
        raise ConfigError(f"config.tuples: each tuple needs {gamma.r} entries")
    rep = ratio_report(gamma, alpha, S, probe, tuples, cfg.caps.max_point_degree)
    for v, s in rep.summary["ratios"].items():
        print(f"{v}: final running min {s['running_min'][-1]}, max {s['running_max'][-1]}")
    return {"ratios.csv": report_csv(rep), "ratios.json": report_json(rep)}


def _override(cfg: Config, args) -> None:
    if args.deg_cap is not None:
        if args.deg_cap < 0:
            raise ConfigError("--deg-cap must be >= 0")
        cfg.caps.deg_cap = args.deg_cap
        cfg.caps.deg_caps = None
    if args.iter_cap is not None:
        if args.iter_cap < 0:
            raise ConfigError("--iter-cap must be >= 0")
        cfg.caps.iter_cap = args.iter_cap


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="drinfeld-heights",
                                 description="Exact heights and integral points for Drinfeld "
                                             "modules over F_q(t).")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--config", required=True, metavar="PATH")
    ap.add_argument("--out", metavar="DIR", default=".")
    ap.add_argument("--deg-cap", type=int)
    ap.add_argument("--iter-cap", type=int)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = Config.load(args.config)
        _override(cfg, args)
        handler = globals()[f"cmd_{args.command}"]
        if args.command in ("siegel", "silverman", "ratios"):
            files = handler(cfg, max(1, args.threads))
        else:
            files = handler(cfg)
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for name, text in files.items():
            (out / name).write_text(text, encoding="utf-8")
            log.info("wrote %s", out / name)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"resource bound: {exc}", file=sys.stderr)
        return 3
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 4
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
