import os

from hypothesis import HealthCheck, settings, strategies as st

from drinfeld_heights.field import field
from drinfeld_heights.poly import Poly
from drinfeld_heights.ratfunc import RatK

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

F2, F3, F5 = field(2), field(3), field(5)
F4 = field(2, 2, (1, 1, 1))
F9 = field(3, 2, (1, 0, 1))
FIELDS = [F2, F3, F5, F4, F9]


def polys(F, max_deg=6, nonzero=False):
    p = st.lists(st.integers(0, F.q - 1), max_size=max_deg + 1).map(lambda c: Poly(F, c))
    return p.filter(lambda f: not f.is_zero()) if nonzero else p


def ratks(F, max_deg=4, nonzero=False):
    x = st.tuples(polys(F, max_deg), polys(F, max_deg, nonzero=True)).map(lambda nd: RatK(*nd))
    return x.filter(lambda y: not y.is_zero()) if nonzero else x


fields = st.sampled_from(FIELDS)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
