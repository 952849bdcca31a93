"""Exact computation in Leavitt path algebras of finite directed graphs."""

from .algebra import Element, MatrixUnits, Monomial, normal_form, standard_identity_eval
from .analysis import (
    GKClass,
    PIReport,
    check_pi,
    classify_gk,
    decompose,
    estimate_gk,
    growth_series,
)
from .expr import parse_expression
from .graph import Cycle, Edge, Graph, GraphError, Path, load_graph, parse_graph, simple_cycles

__all__ = [
    "Cycle",
    "Edge",
    "Element",
    "GKClass",
    "Graph",
    "GraphError",
    "MatrixUnits",
    "Monomial",
    "PIReport",
    "Path",
    "check_pi",
    "classify_gk",
    "decompose",
    "estimate_gk",
    "growth_series",
    "load_graph",
    "normal_form",
    "parse_expression",
    "parse_graph",
    "simple_cycles",
    "standard_identity_eval",
]
