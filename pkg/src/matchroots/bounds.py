"""Extreme roots: simplicity, monotonicity under edge weakening, and star bounds."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .classify import decompose
from .exact import AlgebraicNumber, Polynomial, as_rational, compare, compare_algebraic, multiplicity_at, sign_at
from .graph import WeightedGraph
from .matchpoly import PreconditionError, Verdict, heilmann_lieb_b, roots, verdict


def _require_connected(g: WeightedGraph) -> None:
    if g.n == 0 or not g.is_connected():
        raise PreconditionError("graph must be connected and non-empty")


def largest_root(g: WeightedGraph) -> AlgebraicNumber:
    rs = roots(g)
    if not rs:
        raise PreconditionError("matching polynomial has no roots")
    return rs[-1]


def extreme_zero_check(g: WeightedGraph) -> Verdict:
    """At the smallest and largest root every vertex is in the zero class and the root is simple."""
    _require_connected(g)
    rs = roots(g)
    everyone = frozenset(g.vertices)
    results = []
    for name, theta in (("smallest", rs[0]), ("largest", rs[-1])):
        dec = decompose(g, theta, verify=False)
        results.append({"root": name, "theta": str(theta), "critical": dec.D == everyone, "m": dec.m})
    return verdict("extreme-roots-simple", all(r["critical"] and r["m"] == 1 for r in results), roots=results)


def edge_monotonicity_check(g: WeightedGraph, i: int, j: int, new_weight: object) -> Verdict:
    """Raising a weight toward 0 strictly lowers the largest root."""
    _require_connected(g)
    new_weight = as_rational(new_weight)
    old = g.weight(i, j)
    if not old < new_weight <= 0:
        raise PreconditionError(f"need {old} < new weight {new_weight} <= 0")
    h = g.with_edge_weight(i, j, new_weight)
    z_g, z_h = largest_root(g), largest_root(h)
    return verdict("largest-root-monotone", compare_algebraic(z_h, z_g) < 0,
                   edge=[i, j], old=str(old), new=str(new_weight), z_G=str(z_g), z_new=str(z_h))


@dataclass(frozen=True)
class ZeroBounds:
    z_G: AlgebraicNumber
    z_star: AlgebraicNumber
    B: Fraction
    r_max: Fraction
    center: int

    def to_json(self) -> dict:
        return {
            "z_G": self.z_G.to_json(),
            "z_star": self.z_star.to_json(),
            "B": str(self.B),
            "r_max": str(self.r_max),
            "center": self.center,
        }


def star_graph_at(g: WeightedGraph, i: int) -> WeightedGraph:
    """G with every edge not touching i set to zero."""
    return WeightedGraph(g.offsets, {(u, v): w for u, v, w in g.edges() if i in (u, v)})


def star_bounds_check(g: WeightedGraph, center: int | None = None) -> tuple[ZeroBounds, Verdict]:
    """r_max < z* <= z_G < r_max + 2 sqrt(B), z* solving its fixed-point equation,
    and for zero offsets the lower bound through the heaviest vertex.

    ``center`` picks the star's vertex among those of largest offset; the
    default is the lowest such id.
    """
    _require_connected(g)
    if g.n < 3:
        raise PreconditionError("need at least three vertices")
    r_max = max(g.offset(v) for v in g.vertices)
    tops = [v for v in g.vertices if g.offset(v) == r_max]
    if center is not None and center not in tops:
        raise PreconditionError(f"vertex {center} does not have the largest offset")
    i = center if center is not None else tops[0]
    star = star_graph_at(g, i)
    z_g, z_star = largest_root(g), largest_root(star)
    b = heilmann_lieb_b(g)
    x = Polynomial.x()
    checks = {
        "offset_below_star_root": compare(z_star, r_max) > 0,
        "star_root_at_most_largest": compare_algebraic(z_star, z_g) <= 0,
        # z_G > r_max is established above, so squaring keeps the order
        "largest_below_upper_bound": compare(z_g, r_max) > 0
        and sign_at((x - r_max) * (x - r_max) - 4 * b, z_g) < 0,
    }
    # clearing denominators of z - r_i = sum_j w_ij / (z - r_j)
    nbrs = g.neighbors(i)
    prod_all = Polynomial.constant(1)
    for j in nbrs:
        prod_all = prod_all * (x - g.offset(j))
    fixed = (x - g.offset(i)) * prod_all
    for j in nbrs:
        rest = Polynomial.constant(1)
        for k in nbrs:
            if k != j:
                rest = rest * (x - g.offset(k))
        fixed = fixed - rest.scale(-g.weight(i, j))
    checks["star_root_fixed_point"] = multiplicity_at(fixed, z_star) >= 1
    if all(g.offset(v) == 0 for v in g.vertices):
        heaviest = max(sum(-g.weight(j, k) for k in g.neighbors(j)) for j in g.vertices)
        checks["largest_above_lower_bound"] = sign_at(x * x - heaviest, z_g) >= 0
        star_mass = sum(-g.weight(i, j) for j in nbrs)
        checks["star_root_square"] = sign_at(x * x - star_mass, z_star) == 0
    bounds = ZeroBounds(z_g, z_star, b, r_max, i)
    return bounds, verdict("star-bounds", all(checks.values()), center=i, checks=checks,
                           z_G=str(z_g), z_star=str(z_star), B=str(b))
