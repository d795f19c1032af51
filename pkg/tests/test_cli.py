import csv
import io
import json

import pytest

from drinfeld_heights.cli import run
from drinfeld_heights.config import Config
from drinfeld_heights.errors import ConfigError

CARLITZ3 = {"module": {"q": 3, "phi_t": ["t", "1"]}}


def write(tmp_path, data, name="cfg.json"):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return str(p)


def rows(path):
    return list(csv.DictReader(io.StringIO(path.read_text())))


def test_roundtrip():
    data = {"module": {"q": 4, "phi_t": ["t", "u*t + 1", "1"]},
            "field": {"p": 2, "e": 2, "modulus": "u^2+u+1"},
            "points": ["(t^2+1)/(t+1)", "u"], "S": ["t", "oo"], "alpha": "t*t",
            "caps": {"deg_cap": 2}}
    cfg = Config.from_dict(data)
    assert cfg.points == ["t+1", "u"]
    assert cfg.S == ["inf", "t"]
    again = Config.from_dict(json.loads(cfg.dumps()))
    assert again == cfg
    assert again.dumps() == cfg.dumps()


@pytest.mark.parametrize("data,where", [
    ({"module": {"q": 6, "phi_t": ["t", "1"]}}, "config.module.q"),
    ({"module": {"q": 3, "phi_t": ["t", "1+"]}}, "config.module.phi_t[1]"),
    ({"module": {"q": 3, "phi_t": ["t+1", "1"]}}, "config.module.phi_t"),
    ({**CARLITZ3, "points": ["1", "t^"]}, "config.points[1]"),
    ({**CARLITZ3, "S": ["t^2+1", "t^2+2"]}, "config.S[1]"),
    ({**CARLITZ3, "caps": {"deg_cap": -1}}, "config.caps.deg_cap"),
    ({**CARLITZ3, "caps": {"speed": 3}}, "config.caps"),
    ({**CARLITZ3, "colour": 1}, "config"),
    ({"module": {"q": 4, "phi_t": ["t", "1"]},
      "field": {"p": 2, "e": 2, "modulus": "u^2+1"}}, "config.field"),
])
def test_diagnostics(data, where):
    with pytest.raises(ConfigError) as exc:
        Config.from_dict(data)
    assert str(exc.value).startswith(where)


def test_bad_json_reports_line(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{\n  "module": {"q": 3,\n  "phi_t": ["t" "1"]}\n}')
    with pytest.raises(ConfigError, match="line 3"):
        Config.load(p)


def test_heights(tmp_path, capsys):
    cfg = write(tmp_path, {**CARLITZ3, "points": ["1", "t", "0"]})
    assert run(["heights", "--config", cfg, "--out", str(tmp_path)]) == 0
    totals = {r["point"]: r["value"] for r in rows(tmp_path / "heights.csv")
              if r["place"] == "total"}
    assert totals == {"1": "1/3", "t": "1", "0": "0"}


def test_heights_bad_reduction(tmp_path):
    cfg = write(tmp_path, {"module": {"q": 3, "phi_t": ["t", "t"]}, "points": ["1/t"],
                           "places": ["t"]})
    assert run(["heights", "--config", cfg, "--out", str(tmp_path)]) == 0
    (row,) = [r for r in rows(tmp_path / "heights.csv") if r["place"] == "t"]
    assert row["status"] in ("exact", "upper_bound")


def test_torsion(tmp_path):
    cfg = write(tmp_path, {"module": {"q": 2, "phi_t": ["t", "1"]}, "points": ["1", "0"]})
    assert run(["torsion", "--config", cfg, "--out", str(tmp_path)]) == 0
    out = rows(tmp_path / "torsion.csv")
    assert [(r["order"], r["canonical_height"], r["agreement"]) for r in out] == \
        [("t^2+t", "0", "agree"), ("1", "0", "agree")]
    cfg = write(tmp_path, {**CARLITZ3, "points": ["1"]})
    assert run(["torsion", "--config", cfg, "--out", str(tmp_path)]) == 0
    (r,) = rows(tmp_path / "torsion.csv")
    assert r["order"] == "nontorsion (h = 1/3)" and r["agreement"] == "agree"


def test_orbit(tmp_path):
    cfg = write(tmp_path, {**CARLITZ3, "points": ["1"], "caps": {"iter_cap": 3}})
    assert run(["orbit", "--config", cfg, "--out", str(tmp_path)]) == 0
    assert [r["num_deg"] for r in rows(tmp_path / "orbit.csv")] == ["0", "1", "3", "9"]


SIEGEL = {**CARLITZ3, "generators": ["1"], "alpha": "1", "beta": "1", "S": ["inf"],
          "caps": {"deg_caps": [0, 1, 2, 3, 4], "deg_cap": 4}}


def test_siegel_counts(tmp_path):
    cfg = write(tmp_path, SIEGEL)
    assert run(["siegel", "--config", cfg, "--out", str(tmp_path)]) == 0
    summary = json.loads((tmp_path / "siegel.json").read_text())["summary"]
    assert summary["counts"] == {str(k): 2 for k in range(5)}


def test_silverman_rows(tmp_path):
    cfg = write(tmp_path, SIEGEL)
    assert run(["silverman", "--config", cfg, "--out", str(tmp_path)]) == 0
    assert len(rows(tmp_path / "silverman.csv")) == 243


def test_ratios(tmp_path):
    cfg = write(tmp_path, {**SIEGEL, "probe": ["inf"], "tuples": [["t"], ["t^2"]]})
    assert run(["ratios", "--config", cfg, "--out", str(tmp_path)]) == 0
    assert [r["ratio@inf"] for r in rows(tmp_path / "ratios.csv")] == ["1/3", "1/3"]


@pytest.mark.parametrize("cmd", ["heights", "siegel", "silverman", "ratios"])
def test_byte_identical(tmp_path, cmd):
    cfg = write(tmp_path, {**SIEGEL, "points": ["1", "1/t"], "tuples": [["t"], ["t+1"]]})
    outs = []
    for k, threads in enumerate(["1", "3"]):
        d = tmp_path / f"run{k}"
        assert run([cmd, "--config", cfg, "--out", str(d), "--threads", threads]) == 0
        outs.append({p.name: p.read_bytes() for p in sorted(d.iterdir())})
    assert outs[0] == outs[1]


def test_exit_codes(tmp_path):
    assert run(["heights", "--config", str(tmp_path / "missing.json")]) == 2
    cfg = write(tmp_path, {**CARLITZ3, "points": ["t"], "caps": {"max_point_degree": 5}})
    assert run(["orbit", "--config", cfg, "--out", str(tmp_path)]) == 3
    cfg = write(tmp_path, {**SIEGEL, "caps": {"deg_cap": 9, "max_rows": 100}})
    assert run(["siegel", "--config", cfg, "--out", str(tmp_path)]) == 3
    cfg = write(tmp_path, CARLITZ3)
    assert run(["siegel", "--config", cfg, "--out", str(tmp_path)]) == 2


def test_invariant_violation(tmp_path, monkeypatch):
    # a fake annihilator contradicting a positive exact height must abort
    from drinfeld_heights.drinfeld import DrinfeldModule
    from drinfeld_heights.poly import Poly

    cfg = write(tmp_path, {**CARLITZ3, "points": ["1"]})
    monkeypatch.setattr(DrinfeldModule, "torsion_annihilator",
                        lambda self, x, cap, md=None: Poly.one(self.F))
    assert run(["torsion", "--config", cfg, "--out", str(tmp_path)]) == 4


def test_overrides(tmp_path):
    cfg = write(tmp_path, SIEGEL)
    assert run(["siegel", "--config", cfg, "--out", str(tmp_path), "--deg-cap", "2"]) == 0
    summary = json.loads((tmp_path / "siegel.json").read_text())["summary"]
    assert list(summary["counts"]) == ["0", "1", "2"]
