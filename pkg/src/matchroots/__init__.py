"""Exact weighted matching polynomials and the sign structure at their real roots."""

from .exact import AlgebraicNumber, Interval, Polynomial
from .graph import WeightedGraph, load_graph, parse_graph
from .kernels import BACKEND
from .matchpoly import (
    PreconditionError,
    Verdict,
    alpha,
    contraction_weight,
    heilmann_lieb_bound,
    matching_polynomial,
    matching_polynomial_bruteforce,
    roots,
    roots_with_multiplicity,
)
from .classify import SignClass, ThetaDecomposition, alpha_class, decompose
from .verify import Report, run_suite

__all__ = [
    "AlgebraicNumber",
    "BACKEND",
    "Interval",
    "Polynomial",
    "PreconditionError",
    "Report",
    "SignClass",
    "ThetaDecomposition",
    "Verdict",
    "WeightedGraph",
    "alpha",
    "alpha_class",
    "contraction_weight",
    "decompose",
    "heilmann_lieb_bound",
    "load_graph",
    "matching_polynomial",
    "matching_polynomial_bruteforce",
    "parse_graph",
    "roots",
    "roots_with_multiplicity",
    "run_suite",
]

__version__ = "0.1.0"
