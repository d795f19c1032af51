"""Exact arithmetic for Drinfeld modules over F_q(t): canonical heights,
torsion, S-integrality and finiteness experiments on phi-submodules."""

from .errors import ConfigError, InvariantViolation, ResourceLimitError
from .field import GF, field
from .poly import Poly, factor, gcd, is_irreducible, irreducibles
from .ratfunc import RatK
from .parse import ParseError, format_ratk, parse_poly, parse_ratk
from .places import INF, Place, log_abs, parse_place, product_formula_check, support, valuation
from .drinfeld import DrinfeldModule, TwistedPoly
from .heights import (CanonicalHeight, LocalHeightResult, canonical_height, local_canonical_height,
                      log_distance_ratio, naive_height_estimate, thresholds, weil_height)
from .integrality import (PlaceSet, SubmoduleSpec, enumerate_submodule, ratio_series, s_integral,
                          siegel_experiment, silverman_experiment)

__version__ = "0.1.0"
