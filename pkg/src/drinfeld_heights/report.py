"""Byte-stable CSV and JSON renderings of experiment reports."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from .integrality import ExperimentReport
from .places import Place
from .poly import Poly
from .ratfunc import RatK


def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    return str(x)


def format_tuple(tup) -> str:
    return ";".join(str(P) for P in tup)


def _deg(f: Poly) -> str:
    return "-inf" if f.is_zero() else str(f.deg)


def report_csv(report: ExperimentReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    places = list(report.places)
    w.writerow(["tuple", "point_num_deg", "point_den_deg", "s_integral"]
               + [f"ratio@{v}" for v in places])
    for r in report.rows:
        ratios = []
        for v in places:
            x = r.ratios.get(v)
            ratios.append(r.flag if x is None else str(x))
        w.writerow([format_tuple(r.tuple), _deg(r.point.num), _deg(r.point.den),
                    _cell(r.s_integral)] + ratios)
    return buf.getvalue()


def jsonable(x):
    if isinstance(x, dict):
        return {_key(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (Fraction, Place, Poly, RatK)):
        return str(x)
    return x


def _key(k) -> str:
    return str(k)


def report_json(report: ExperimentReport) -> str:
    payload = {
        "kind": report.kind,
        "places": report.places.to_strings(),
        "rows": len(report.rows),
        "summary": jsonable(report.summary),
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
