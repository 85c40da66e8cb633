"""Independent classification oracle: brute-force polynomials and sympy limits."""

from __future__ import annotations

import sympy

from matchroots.graph import WeightedGraph, delete_vertices
from matchroots.matchpoly import matching_polynomial_bruteforce

x = sympy.Symbol("x")


def sym_poly(g: WeightedGraph) -> sympy.Expr:
    p = matching_polynomial_bruteforce(g)
    return sum((sympy.Rational(c.numerator, c.denominator) * x**k for k, c in enumerate(p.coeffs)), sympy.Integer(0))


def multiplicity(expr: sympy.Expr, theta: sympy.Expr) -> int:
    k = 0
    while sympy.simplify(expr.subs(x, theta)) == 0:
        k += 1
        expr = sympy.diff(expr, x)
    return k


def vertex_class(g: WeightedGraph, i: int, theta: sympy.Expr) -> str:
    mu = sym_poly(g)
    mu_i = sym_poly(delete_vertices(g, [i]))
    m, mi = multiplicity(mu, theta), multiplicity(mu_i, theta)
    if mi == m - 1:
        return "zero"
    if mi == m + 1:
        return "inf"
    assert mi == m
    value = sympy.limit(sympy.cancel(mu / mu_i), x, theta)
    return "pos" if value > 0 else "neg"


def classes(g: WeightedGraph, theta: sympy.Expr) -> dict[int, str]:
    return {i: vertex_class(g, i, theta) for i in g.vertices}


def real_roots(g: WeightedGraph) -> list[sympy.Expr]:
    return sorted(set(sympy.real_roots(sympy.Poly(sym_poly(g), x))), key=lambda r: r.evalf(50))
