"""Sparse broadcast graphs: construction, schedule certification, bound tables."""

from .binomial import BinomialTree, binomial_schedule, build_binomial, farthest_leaf
from .bounds import (
    BoundReport,
    bound_5a,
    bound_5b,
    bound_farley,
    bound_hl_direct,
    bound_hln_odd,
    bound_knodel_even,
    bound_report,
    table1,
    table2,
)
from .construct import CaseOneLayout, EdgeAccounting, audit_edges, build, build_case1, build_case2
from .errors import (
    BroadcastNetError,
    ParamOutOfRange,
    RootNotInformed,
    SchemePhaseOverrun,
    TooLarge,
    UnknownVertex,
)
from .graph import Graph, degree, export, is_connected
from .hypercube import Hypercube, build_hypercube, hypercube_schedule
from .labels import VertexLabel
from .params import ConstructionParams, make_params
from .schedule import Schedule
from .scheme import SchemeCase, classify, make_schedule
from .verify import (
    CertificationReport,
    CheckResult,
    Violation,
    certify_graph,
    check_schedule,
    exact_broadcast_time,
)

__version__ = "0.1.0"

__all__ = [
    "BinomialTree", "BoundReport", "BroadcastNetError", "CaseOneLayout",
    "CertificationReport", "CheckResult", "ConstructionParams", "EdgeAccounting",
    "Graph", "Hypercube", "ParamOutOfRange", "RootNotInformed", "Schedule",
    "SchemeCase", "SchemePhaseOverrun", "TooLarge", "UnknownVertex", "Violation",
    "VertexLabel", "audit_edges", "binomial_schedule", "bound_5a", "bound_5b",
    "bound_farley", "bound_hl_direct", "bound_hln_odd", "bound_knodel_even",
    "bound_report", "build", "build_binomial", "build_case1", "build_case2",
    "build_hypercube", "certify_graph", "check_schedule", "classify", "degree",
    "exact_broadcast_time", "export", "farthest_leaf", "hypercube_schedule",
    "is_connected", "make_params", "make_schedule", "table1", "table2",
]
