"""Exact ranking from incomplete paired comparisons and axiom audits."""

from .axioms import Axiom, audit_operator, audit_order, scm_premise, sc_premise
from .core import (
    AggregateMatrix,
    ComparisonArray,
    Outcome,
    WeakOrder,
    aggregate,
    copeland_in_array,
    copeland_in_order,
    enumerate_linear_orders,
    enumerate_weak_orders,
    ordered_bell,
    parse_order,
    validate,
)
from .errors import DataError, PairCompError
from .fixtures import Fixture, make_fixture
from .grs import relaxed_beta_ls, solve_grs
from .io import load_array, save_array, save_run
from .objectives import MethodSpec, OptimalSet, optimize
from .suites import run_theorem_suite

__all__ = [
    "AggregateMatrix", "Axiom", "ComparisonArray", "DataError", "Fixture", "MethodSpec",
    "OptimalSet", "Outcome", "PairCompError", "WeakOrder", "aggregate", "audit_operator",
    "audit_order", "copeland_in_array", "copeland_in_order", "enumerate_linear_orders",
    "enumerate_weak_orders", "load_array", "make_fixture", "optimize", "ordered_bell",
    "parse_order", "relaxed_beta_ls", "run_theorem_suite", "save_array", "save_run",
    "sc_premise", "scm_premise", "solve_grs", "validate",
]
