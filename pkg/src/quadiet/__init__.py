"""Exact interval exchange transformations over real quadratic fields."""

from .cfrac import CFExpansion, FiniteExpansion, cf_expand, induction_trace, iet_ratio, trace_run_lengths
from .complexity import (
    covering_check,
    orbit_gap_check,
    pi_reduced,
    pi_survey,
    psi_set,
    return_times,
    ring_normalize,
    u_constant,
)
from .equivalence import EquivClassKey, EquivGraph, build_graph, canonical_key, equivalent, export_dot, export_json
from .errors import (
    ClassBudgetExceeded,
    Connection,
    DiscriminantMismatch,
    InternalMismatch,
    QuadIETError,
    SpecSyntaxError,
    StepCapExceeded,
)
from .iet import (
    IET,
    ConnectionWitness,
    iet_div_points,
    iet_dmn,
    iet_families,
    iet_find_connection,
    iet_is_admissible,
)
from .ietspec import IETSpec, format_spec, parse_spec
from .induction import PHI, PSI, InducedResult, admissible_domains, apply_word, induce, rauzy_step, rauzy_update
from .intervalset import IntervalSet, SemiInterval
from .quadfield import QuadNum

__version__ = "0.1.0"
